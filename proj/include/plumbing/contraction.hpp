#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plumbing/graph.hpp"

namespace plumbing {

enum class Exec { Serial, Parallel };

struct ContractionStep {
    std::vector<std::string> contracted;
    std::vector<std::pair<std::string, std::int64_t>> weights;
    std::vector<std::pair<std::string, std::string>> new_edges;
};

std::string format_step(const ContractionStep& s);

struct MncShape {
    enum class Kind { ProjectivePlaneLine, HirzebruchPair, GeneralChain, NonLinear };
    Kind kind = Kind::GeneralChain;
    std::int64_t m = 0;
    Twig twig;

    static MncShape plane_line() { return {Kind::ProjectivePlaneLine, 0, {}}; }
    static MncShape hirzebruch(std::int64_t m) { return {Kind::HirzebruchPair, m, {}}; }
    static MncShape chain(Twig t) { return {Kind::GeneralChain, 0, std::move(t)}; }

    bool operator==(const MncShape& o) const;
    std::string str() const;
};

// Blow down vertex v (weight -1, degree <= 2, orbit block a singleton).
WeightedDualGraph blow_down(const WeightedDualGraph& g, int v);
WeightedDualGraph blow_down(const WeightedDualGraph& g, const std::string& id);

// A vertex site is a free point on that curve; an edge site is the intersection point.
struct BlowUpSite {
    std::string a;
    std::string b;
    bool is_edge() const { return !b.empty(); }
};
WeightedDualGraph blow_up(const WeightedDualGraph& g, const BlowUpSite& site, const std::string& new_id);

bool is_mnc(const WeightedDualGraph& g);

struct MorrowReport {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};
MorrowReport morrow_audit(const WeightedDualGraph& g);

// Simultaneous blow-down of an independent block of (-1)-vertices.
WeightedDualGraph contract_orbit(const WeightedDualGraph& g, const std::vector<int>& block,
                                 ContractionStep* step = nullptr);

MncShape classify_mnc(const WeightedDualGraph& g);

struct NormalizeResult {
    WeightedDualGraph graph;
    std::vector<ContractionStep> steps;
    MncShape shape;
};
NormalizeResult normalize(const WeightedDualGraph& g);

// Chain that a target shape denotes: plane line [-1], pair (0,-m) as [0,m].
Twig shape_twig(const MncShape& s);

inline constexpr std::size_t kDefaultBudget = 1u << 20;

// Exhaustive search over single blow-downs, ignoring orbits. The target is a
// chain compared up to reversal; budget caps the number of distinct states.
bool contracts_to(const WeightedDualGraph& g, const Twig& target, std::size_t budget = kDefaultBudget,
                  Exec exec = Exec::Serial);
bool contracts_to(const WeightedDualGraph& g, const MncShape& target, std::size_t budget = kDefaultBudget,
                  Exec exec = Exec::Serial);
// First seed boundary (plane line or a pair (0,-m), m != 1) reachable by
// single blow-downs, ignoring orbits; none if no sequence reaches one.
std::optional<MncShape> contracts_to_seed(const WeightedDualGraph& g, std::size_t budget = kDefaultBudget);
// Chain-only variant working on twigs directly.
bool chain_contracts_to(const Twig& start, const Twig& target, std::size_t budget = kDefaultBudget);
// Directed variant: the first curve is never blown down and the result must
// equal target as written, not up to reversal.
bool chain_contracts_to_anchored(const Twig& start, const Twig& target, std::size_t budget = kDefaultBudget);

} // namespace plumbing
