#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumbing/twig.hpp"

namespace plumbing {

struct Vertex {
    std::string id;
    std::int64_t weight;
    std::string orbit;
};

// Simple undirected graph; weights are self-intersection numbers and every
// vertex carries an orbit label (vertices sharing a label form one block).
class WeightedDualGraph {
public:
    int add_vertex(const std::string& id, std::int64_t weight, std::string orbit = {});
    void add_edge(int a, int b);
    void add_edge(const std::string& a, const std::string& b);

    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    const Vertex& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const std::string& id(int v) const { return vertex(v).id; }
    std::int64_t weight(int v) const { return vertex(v).weight; }
    const std::string& orbit(int v) const { return vertex(v).orbit; }
    void set_weight(int v, std::int64_t w) { vertices_[static_cast<std::size_t>(v)].weight = w; }
    void set_orbit(int v, std::string label) { vertices_[static_cast<std::size_t>(v)].orbit = std::move(label); }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::size_t degree(int v) const { return neighbors(v).size(); }
    bool adjacent(int a, int b) const;
    std::optional<int> find(std::string_view id) const;

    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    // Subgraph on `keep`, in the given order.
    WeightedDualGraph induced(const std::vector<int>& keep) const;
    std::vector<std::vector<int>> blocks() const;
    std::vector<int> block_of(int v) const;
    // Vertex indices sorted lexicographically by id.
    std::vector<int> sorted_by_id() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<std::vector<int>> adj_;
};

WeightedDualGraph parse_graph(std::string_view text);
WeightedDualGraph parse_graph_json(std::string_view text);
WeightedDualGraph load_graph_file(const std::string& path);
void validate_orbits(const WeightedDualGraph& g);

std::string format_graph(const WeightedDualGraph& g);
std::string graph_to_json(const WeightedDualGraph& g);
std::string graph_to_dot(const WeightedDualGraph& g);

// Path whose i-th vertex has weight -t[i]; ids are prefix + index.
WeightedDualGraph path_graph(const Twig& t, const std::string& prefix = "c");

using IntersectionMatrix = std::vector<std::vector<std::int64_t>>;
IntersectionMatrix intersection_matrix(const WeightedDualGraph& g);
bool is_negative_definite(const IntersectionMatrix& m);
bool is_negative_definite(const WeightedDualGraph& g);

bool is_forest(const WeightedDualGraph& g);
std::vector<std::vector<int>> connected_components(const WeightedDualGraph& g);
std::vector<std::vector<int>> connected_components(const WeightedDualGraph& g, const std::vector<int>& subset);
// Twig read along the path, lexicographically smaller direction; none if not a path.
std::optional<Twig> as_linear_chain(const WeightedDualGraph& g);
// Vertex order along the path matching as_linear_chain.
std::optional<std::vector<int>> chain_order(const WeightedDualGraph& g);

std::vector<int> exceptional_vertices(const WeightedDualGraph& g);
std::vector<int> minus_one_vertices(const WeightedDualGraph& g);

struct OrbitAudit {
    bool uniform_weight = true;
    bool uniform_neighborhood = true;
    bool realizable = true;
    bool realizable_checked = false;
    std::vector<std::string> problems;
    bool pass() const { return uniform_weight && uniform_neighborhood && realizable; }
};
OrbitAudit orbit_audit(const WeightedDualGraph& g);

struct PicardRank {
    std::size_t over_closure;
    std::size_t over_base;
};
PicardRank picard_rank(const WeightedDualGraph& g);

} // namespace plumbing
