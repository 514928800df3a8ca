#include "plumbing/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plumbing/canonical.hpp"
#include "plumbing/error.hpp"

namespace plumbing {

int WeightedDualGraph::add_vertex(const std::string& id, std::int64_t weight, std::string orbit) {
    if (id.empty()) throw Error("SyntaxError", "empty vertex id");
    if (find(id)) throw Error("DuplicateVertex", "vertex '" + id + "' declared twice");
    if (orbit.empty()) orbit = id;
    vertices_.push_back({id, weight, std::move(orbit)});
    adj_.emplace_back();
    return static_cast<int>(vertices_.size()) - 1;
}

void WeightedDualGraph::add_edge(int a, int b) {
    if (a == b) throw Error("SyntaxError", "loop at '" + id(a) + "'");
    if (adjacent(a, b)) throw Error("MultiEdge", "edge " + id(a) + " " + id(b) + " given twice");
    auto ins = [](std::vector<int>& v, int x) { v.insert(std::upper_bound(v.begin(), v.end(), x), x); };
    ins(adj_[static_cast<std::size_t>(a)], b);
    ins(adj_[static_cast<std::size_t>(b)], a);
}

void WeightedDualGraph::add_edge(const std::string& a, const std::string& b) {
    auto ia = find(a), ib = find(b);
    if (!ia) throw Error("UnknownEndpoint", "no vertex '" + a + "'");
    if (!ib) throw Error("UnknownEndpoint", "no vertex '" + b + "'");
    add_edge(*ia, *ib);
}

bool WeightedDualGraph::adjacent(int a, int b) const {
    const auto& n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

std::optional<int> WeightedDualGraph::find(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return static_cast<int>(i);
    return std::nullopt;
}

std::size_t WeightedDualGraph::edge_count() const {
    std::size_t s = 0;
    for (auto& a : adj_) s += a.size();
    return s / 2;
}

std::vector<std::pair<int, int>> WeightedDualGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < adj_.size(); ++a)
        for (int b : adj_[a])
            if (static_cast<int>(a) < b) out.emplace_back(static_cast<int>(a), b);
    return out;
}

WeightedDualGraph WeightedDualGraph::induced(const std::vector<int>& keep) const {
    WeightedDualGraph out;
    std::map<int, int> pos;
    for (int v : keep) {
        pos[v] = out.add_vertex(id(v), weight(v), orbit(v));
    }
    for (int v : keep)
        for (int w : neighbors(v))
            if (v < w && pos.count(w)) out.add_edge(pos[v], pos[w]);
    return out;
}

std::vector<std::vector<int>> WeightedDualGraph::blocks() const {
    std::map<std::string, std::vector<int>> by;
    for (int v : sorted_by_id()) by[orbit(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [k, vs] : by) out.push_back(vs);
    std::sort(out.begin(), out.end(), [&](auto& a, auto& b) { return id(a.front()) < id(b.front()); });
    return out;
}

std::vector<int> WeightedDualGraph::block_of(int v) const {
    std::vector<int> out;
    for (int w : sorted_by_id())
        if (orbit(w) == orbit(v)) out.push_back(w);
    return out;
}

std::vector<int> WeightedDualGraph::sorted_by_id() const {
    std::vector<int> idx(size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return id(a) < id(b); });
    return idx;
}

void validate_orbits(const WeightedDualGraph& g) {
    std::map<std::string, int> first;
    for (std::size_t v = 0; v < g.size(); ++v) {
        int i = static_cast<int>(v);
        auto [it, fresh] = first.emplace(g.orbit(i), i);
        if (!fresh && g.weight(it->second) != g.weight(i))
            throw Error("OrbitWeightMismatch", "orbit '" + g.orbit(i) + "' mixes weights " +
                                                   std::to_string(g.weight(it->second)) + " (" + g.id(it->second) +
                                                   ") and " + std::to_string(g.weight(i)) + " (" + g.id(i) + ")");
    }
}

namespace {

std::int64_t parse_int(const std::string& tok, const std::string& where) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error("SyntaxError", where + ": bad integer '" + tok + "'");
    }
}

} // namespace

WeightedDualGraph parse_graph(std::string_view text) {
    WeightedDualGraph g;
    struct PendingEdge {
        std::string a, b;
        int line;
    };
    std::vector<PendingEdge> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        std::string where = "line " + std::to_string(lineno);
        if (tok[0] == "vertex") {
            if (tok.size() < 3 || tok.size() > 4) throw Error("SyntaxError", where + ": expected 'vertex <id> <weight> [orbit=<label>]'");
            std::string orbit;
            if (tok.size() == 4) {
                if (tok[3].rfind("orbit=", 0) != 0 || tok[3].size() == 6)
                    throw Error("SyntaxError", where + ": unexpected token '" + tok[3] + "'");
                orbit = tok[3].substr(6);
            }
            try {
                g.add_vertex(tok[1], parse_int(tok[2], where), orbit);
            } catch (const Error& e) {
                if (e.code() == "DuplicateVertex") throw Error("DuplicateVertex", where + ": vertex '" + tok[1] + "' declared twice");
                throw;
            }
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw Error("SyntaxError", where + ": expected 'edge <id> <id>'");
            if (tok[1] == tok[2]) throw Error("SyntaxError", where + ": loop at '" + tok[1] + "'");
            edges.push_back({tok[1], tok[2], lineno});
        } else {
            throw Error("SyntaxError", where + ": unknown statement '" + tok[0] + "'");
        }
    }
    for (auto& e : edges) {
        std::string where = "line " + std::to_string(e.line);
        for (auto* end : {&e.a, &e.b})
            if (!g.find(*end)) throw Error("UnknownEndpoint", where + ": no vertex '" + *end + "'");
        try {
            g.add_edge(e.a, e.b);
        } catch (const Error& err) {
            throw Error(err.code(), where + ": " + err.message());
        }
    }
    validate_orbits(g);
    return g;
}

WeightedDualGraph parse_graph_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("SyntaxError", std::string("json: ") + e.what());
    }
    // CLI --json output nests the graph under "graph".
    if (j.is_object() && j.contains("graph") && !j.contains("vertices")) j = nlohmann::json(j["graph"]);
    WeightedDualGraph g;
    try {
        const auto& vs = j.at("vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const auto& v = vs[i];
            std::string orbit = v.contains("orbit") ? v.at("orbit").get<std::string>() : "";
            try {
                g.add_vertex(v.at("id").get<std::string>(), v.at("weight").get<std::int64_t>(), orbit);
            } catch (const Error& e) {
                throw Error(e.code(), "vertices[" + std::to_string(i) + "]: " + e.message());
            }
        }
        const auto& es = j.contains("edges") ? j.at("edges") : nlohmann::json::array();
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (!es[i].is_array() || es[i].size() != 2) throw Error("SyntaxError", "edges[" + std::to_string(i) + "]: expected a pair");
            auto a = es[i].at(0).get<std::string>(), b = es[i].at(1).get<std::string>();
            if (a == b) throw Error("SyntaxError", "edges[" + std::to_string(i) + "]: loop at '" + a + "'");
            try {
                g.add_edge(a, b);
            } catch (const Error& e) {
                throw Error(e.code(), "edges[" + std::to_string(i) + "]: " + e.message());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("SyntaxError", std::string("json: ") + e.what());
    }
    validate_orbits(g);
    return g;
}

WeightedDualGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? parse_graph_json(ss.str()) : parse_graph(ss.str());
}

std::string format_graph(const WeightedDualGraph& g) {
    std::ostringstream out;
    for (int v : g.sorted_by_id()) {
        out << "vertex " << g.id(v) << " " << g.weight(v);
        if (g.orbit(v) != g.id(v)) out << " orbit=" << g.orbit(v);
        out << "\n";
    }
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [a, b] : g.edges()) {
        auto x = g.id(a), y = g.id(b);
        if (y < x) std::swap(x, y);
        es.emplace_back(x, y);
    }
    std::sort(es.begin(), es.end());
    for (auto& [a, b] : es) out << "edge " << a << " " << b << "\n";
    return out.str();
}

std::string graph_to_json(const WeightedDualGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (int v : g.sorted_by_id())
        j["vertices"].push_back({{"id", g.id(v)}, {"weight", g.weight(v)}, {"orbit", g.orbit(v)}});
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [a, b] : g.edges()) {
        auto x = g.id(a), y = g.id(b);
        if (y < x) std::swap(x, y);
        es.emplace_back(x, y);
    }
    std::sort(es.begin(), es.end());
    j["edges"] = nlohmann::ordered_json::array();
    for (auto& [a, b] : es) j["edges"].push_back({a, b});
    return j.dump();
}

std::string graph_to_dot(const WeightedDualGraph& g) {
    std::ostringstream out;
    out << "graph boundary {\n";
    for (int v : g.sorted_by_id()) {
        out << "  \"" << g.id(v) << "\" [label=\"" << g.weight(v) << "\"";
        if (g.weight(v) == -1) out << ", style=filled, fillcolor=black, fontcolor=white";
        out << "];\n";
    }
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [a, b] : g.edges()) {
        auto x = g.id(a), y = g.id(b);
        if (y < x) std::swap(x, y);
        es.emplace_back(x, y);
    }
    std::sort(es.begin(), es.end());
    for (auto& [a, b] : es) out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

WeightedDualGraph path_graph(const Twig& t, const std::string& prefix) {
    WeightedDualGraph g;
    int width = static_cast<int>(std::to_string(t.size()).size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::string num = std::to_string(i + 1);
        g.add_vertex(prefix + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num, -t[i]);
        if (i) g.add_edge(static_cast<int>(i) - 1, static_cast<int>(i));
    }
    return g;
}

IntersectionMatrix intersection_matrix(const WeightedDualGraph& g) {
    IntersectionMatrix m(g.size(), std::vector<std::int64_t>(g.size(), 0));
    for (std::size_t v = 0; v < g.size(); ++v) {
        m[v][v] = g.weight(static_cast<int>(v));
        for (int w : g.neighbors(static_cast<int>(v))) m[v][static_cast<std::size_t>(w)] = 1;
    }
    return m;
}

bool is_negative_definite(const IntersectionMatrix& im) {
    // Fraction-free elimination: the k-th pivot equals the k-th leading minor.
    const std::size_t n = im.size();
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = im[i][j];
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const BigInt& minor = a[k][k];
        bool want_negative = (k % 2 == 0);
        if (minor == 0 || (minor < 0) != want_negative) return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return true;
}

bool is_negative_definite(const WeightedDualGraph& g) { return is_negative_definite(intersection_matrix(g)); }

bool is_forest(const WeightedDualGraph& g) { return g.edge_count() + connected_components(g).size() == g.size(); }

std::vector<std::vector<int>> connected_components(const WeightedDualGraph& g, const std::vector<int>& subset) {
    std::set<int> in(subset.begin(), subset.end());
    std::set<int> seen;
    std::vector<std::vector<int>> out;
    for (int s : subset) {
        if (seen.count(s)) continue;
        std::vector<int> comp{s};
        seen.insert(s);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int w : g.neighbors(comp[i]))
                if (in.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(comp);
    }
    return out;
}

std::vector<std::vector<int>> connected_components(const WeightedDualGraph& g) {
    std::vector<int> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    return connected_components(g, all);
}

std::optional<std::vector<int>> chain_order(const WeightedDualGraph& g) {
    if (g.empty()) return std::nullopt;
    if (g.edge_count() + 1 != g.size() || !is_forest(g)) return std::nullopt;
    std::vector<int> ends;
    for (std::size_t v = 0; v < g.size(); ++v) {
        auto d = g.degree(static_cast<int>(v));
        if (d > 2) return std::nullopt;
        if (d <= 1) ends.push_back(static_cast<int>(v));
    }
    auto walk = [&](int start) {
        std::vector<int> order{start};
        int prev = -1, cur = start;
        while (true) {
            int next = -1;
            for (int w : g.neighbors(cur))
                if (w != prev) next = w;
            if (next < 0) break;
            prev = cur;
            cur = next;
            order.push_back(cur);
        }
        return order;
    };
    auto a = walk(ends.front());
    auto b = std::vector<int>(a.rbegin(), a.rend());
    auto twig_of = [&](const std::vector<int>& o) {
        Twig t;
        for (int v : o) t.push_back(-g.weight(v));
        return t;
    };
    if (twig_of(b) < twig_of(a)) return b;
    if (twig_of(a) < twig_of(b)) return a;
    return g.id(a.front()) <= g.id(b.front()) ? a : b;
}

std::optional<Twig> as_linear_chain(const WeightedDualGraph& g) {
    auto o = chain_order(g);
    if (!o) return std::nullopt;
    Twig t;
    for (int v : *o) t.push_back(-g.weight(v));
    return t;
}

std::vector<int> exceptional_vertices(const WeightedDualGraph& g) {
    std::vector<int> out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.weight(static_cast<int>(v)) <= -2) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<int> minus_one_vertices(const WeightedDualGraph& g) {
    std::vector<int> out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.weight(static_cast<int>(v)) == -1) out.push_back(static_cast<int>(v));
    return out;
}

OrbitAudit orbit_audit(const WeightedDualGraph& g) {
    OrbitAudit r;
    for (const auto& block : g.blocks()) {
        int first = block.front();
        auto signature = [&](int v) {
            std::vector<std::string> labels;
            for (int w : g.neighbors(v)) labels.push_back(g.orbit(w));
            std::sort(labels.begin(), labels.end());
            return labels;
        };
        auto sig0 = signature(first);
        for (int v : block) {
            if (g.weight(v) != g.weight(first)) {
                r.uniform_weight = false;
                r.problems.push_back("block '" + g.orbit(v) + "' mixes weights at " + g.id(v));
            }
            if (g.degree(v) != g.degree(first) || signature(v) != sig0) {
                r.uniform_neighborhood = false;
                r.problems.push_back("block '" + g.orbit(v) + "' has non-uniform neighbourhood at " + g.id(v));
            }
        }
    }
    // Orbits of the block-preserving automorphisms must equal the blocks.
    std::vector<int> cls;
    if (is_forest(g)) {
        cls = forest_orbits(g, weight_block_colors(g));
        r.realizable_checked = true;
    } else if (g.size() <= 24) {
        cls = automorphism_orbits_bruteforce(g, weight_block_colors(g));
        r.realizable_checked = true;
    }
    if (r.realizable_checked) {
        for (const auto& block : g.blocks())
            for (int v : block)
                if (cls[static_cast<std::size_t>(v)] != cls[static_cast<std::size_t>(block.front())]) {
                    r.realizable = false;
                    r.problems.push_back("no automorphism sends " + g.id(block.front()) + " to " + g.id(v));
                }
    }
    return r;
}

PicardRank picard_rank(const WeightedDualGraph& g) { return {g.size(), g.blocks().size()}; }

} // namespace plumbing
