#include "plumbing/contraction.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "plumbing/canonical.hpp"
#include "plumbing/error.hpp"

namespace plumbing {

namespace {

// Raw blow-down without orbit bookkeeping; caller has checked legality.
WeightedDualGraph remove_minus_one(const WeightedDualGraph& g, int v) {
    std::vector<int> keep;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (static_cast<int>(i) != v) keep.push_back(static_cast<int>(i));
    WeightedDualGraph out = g.induced(keep);
    std::vector<int> nbr;
    for (int w : g.neighbors(v)) nbr.push_back(*out.find(g.id(w)));
    for (int w : nbr) out.set_weight(w, out.weight(w) + 1);
    if (nbr.size() == 2) out.add_edge(nbr[0], nbr[1]);
    return out;
}

void check_contractible(const WeightedDualGraph& g, int v) {
    if (g.weight(v) != -1)
        throw Error("NotMinusOne", "vertex '" + g.id(v) + "' has weight " + std::to_string(g.weight(v)));
    if (g.degree(v) > 2)
        throw Error("DegreeTooHigh", "vertex '" + g.id(v) + "' meets " + std::to_string(g.degree(v)) + " curves");
    if (g.degree(v) == 2 && g.adjacent(g.neighbors(v)[0], g.neighbors(v)[1]))
        throw Error("WouldCreateLoop", "neighbours of '" + g.id(v) + "' are already adjacent");
}

WeightedDualGraph strip_orbits(const WeightedDualGraph& g) {
    WeightedDualGraph out = g;
    for (std::size_t v = 0; v < out.size(); ++v) out.set_orbit(static_cast<int>(v), out.id(static_cast<int>(v)));
    return out;
}

Twig chain_key(const Twig& t) {
    Twig r(t.rbegin(), t.rend());
    return std::min(t, r);
}

struct TwigHash {
    std::size_t operator()(const Twig& t) const {
        std::size_t h = t.size();
        for (auto x : t) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
        return h;
    }
};

Twig contract_chain_at(const Twig& t, std::size_t i) {
    Twig out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k == i) continue;
        out.push_back(t[k] - ((k + 1 == i || k == i + 1) ? 1 : 0));
    }
    return out;
}

// Accepts a chain key; `min_size` is the smallest state worth expanding to.
struct Goal {
    std::function<bool(const Twig&)> accept;
    std::size_t min_size = 1;

    static Goal twig(const Twig& target) {
        Twig key = chain_key(target);
        return {[key](const Twig& k) { return k == key; }, target.size()};
    }
    static Goal seed() {
        return {[](const Twig& k) { return k == Twig{-1} || (k.size() == 2 && k[0] == 0 && k[1] >= 0 && k[1] != 1); }, 1};
    }
};

class ChainSearch {
public:
    ChainSearch(Goal goal, std::size_t budget) : goal_(std::move(goal)), budget_(budget) {}

    bool run(const Twig& t) {
        if (t.size() < goal_.min_size) return false;
        Twig key = chain_key(t);
        if (goal_.accept(key)) {
            reached = key;
            return true;
        }
        if (t.size() == goal_.min_size) return false;
        if (!seen_.insert(key).second) return false;
        if (seen_.size() > budget_) throw Error("BudgetExceeded", "more than " + std::to_string(budget_) + " states");
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] == 1 && run(contract_chain_at(t, i))) return true;
        return false;
    }

    Twig reached;

private:
    Goal goal_;
    std::size_t budget_;
    std::unordered_set<Twig, TwigHash> seen_;
};

class GraphSearch {
public:
    GraphSearch(Goal goal, std::size_t budget) : goal_(std::move(goal)), budget_(budget) {}

    bool run(const WeightedDualGraph& g) {
        if (g.size() < goal_.min_size) return false;
        if (auto t = as_linear_chain(g); t && goal_.accept(chain_key(*t))) {
            reached = chain_key(*t);
            return true;
        }
        if (g.size() == goal_.min_size) return false;
        if (!seen_.insert(forest_code(g, weight_colors(g))).second) return false;
        if (seen_.size() > budget_) throw Error("BudgetExceeded", "more than " + std::to_string(budget_) + " states");
        for (std::size_t v = 0; v < g.size(); ++v) {
            int i = static_cast<int>(v);
            if (g.weight(i) == -1 && g.degree(i) <= 2 && run(remove_minus_one(g, i))) return true;
        }
        return false;
    }

    Twig reached;

private:
    Goal goal_;
    std::size_t budget_;
    std::set<std::string> seen_;
};

// Each first move gets its own memo, so threads never share state.
template <typename State, typename Search, typename Moves, typename Apply>
bool first_move_parallel(const State& start, const Goal& goal, std::size_t budget, Moves moves, Apply apply) {
    auto first = moves(start);
    std::atomic<bool> found{false};
    std::exception_ptr failure;
    const long n = static_cast<long>(first.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        if (found.load()) continue;
        try {
            Search local(goal, budget);
            if (local.run(apply(start, first[static_cast<std::size_t>(k)]))) found.store(true);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (found.load()) return true;
    if (failure) std::rethrow_exception(failure);
    return false;
}

} // namespace

std::string format_step(const ContractionStep& s) {
    std::ostringstream out;
    out << "contract";
    for (auto& id : s.contracted) out << " " << id;
    out << " -> weights ";
    for (std::size_t i = 0; i < s.weights.size(); ++i) out << (i ? "," : "") << s.weights[i].first << "=" << s.weights[i].second;
    return out.str();
}

bool MncShape::operator==(const MncShape& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::HirzebruchPair) return m == o.m;
    if (kind == Kind::GeneralChain) return chain_key(twig) == chain_key(o.twig);
    return true;
}

std::string MncShape::str() const {
    switch (kind) {
    case Kind::ProjectivePlaneLine: return "ProjectivePlaneLine";
    case Kind::HirzebruchPair: return "HirzebruchPair(" + std::to_string(m) + ")";
    case Kind::GeneralChain: return "GeneralChain(" + format_twig(twig) + ")";
    case Kind::NonLinear: return "NonLinear";
    }
    return "?";
}

WeightedDualGraph blow_down(const WeightedDualGraph& g, int v) {
    check_contractible(g, v);
    if (g.block_of(v).size() != 1)
        throw Error("PartialOrbit", "vertex '" + g.id(v) + "' shares orbit '" + g.orbit(v) + "'; contract the whole block");
    return remove_minus_one(g, v);
}

WeightedDualGraph blow_down(const WeightedDualGraph& g, const std::string& id) {
    auto v = g.find(id);
    if (!v) throw Error("UnknownVertex", "no vertex '" + id + "'");
    return blow_down(g, *v);
}

WeightedDualGraph blow_up(const WeightedDualGraph& g, const BlowUpSite& site, const std::string& new_id) {
    auto a = g.find(site.a);
    if (!a) throw Error("UnknownSite", "no vertex '" + site.a + "'");
    if (g.find(new_id)) throw Error("DuplicateVertex", "vertex '" + new_id + "' already exists");
    if (!site.is_edge()) {
        WeightedDualGraph out = g;
        int e = out.add_vertex(new_id, -1);
        out.set_weight(*a, out.weight(*a) - 1);
        out.add_edge(*a, e);
        return out;
    }
    auto b = g.find(site.b);
    if (!b || !g.adjacent(*a, *b)) throw Error("UnknownSite", "no edge '" + site.a + " " + site.b + "'");
    WeightedDualGraph out;
    for (std::size_t v = 0; v < g.size(); ++v) {
        int i = static_cast<int>(v);
        out.add_vertex(g.id(i), g.weight(i), g.orbit(i));
    }
    for (auto [x, y] : g.edges())
        if (!((x == *a && y == *b) || (x == *b && y == *a))) out.add_edge(x, y);
    int e = out.add_vertex(new_id, -1);
    out.set_weight(*a, out.weight(*a) - 1);
    out.set_weight(*b, out.weight(*b) - 1);
    out.add_edge(*a, e);
    out.add_edge(*b, e);
    return out;
}

bool is_mnc(const WeightedDualGraph& g) {
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.weight(static_cast<int>(v)) == -1 && g.degree(static_cast<int>(v)) <= 2) return false;
    return true;
}

MorrowReport morrow_audit(const WeightedDualGraph& g) {
    MorrowReport r;
    if (!is_mnc(g)) r.violations.push_back("not an mnc: a (-1)-vertex meets at most two curves");
    auto order = chain_order(g);
    if (!order) {
        r.violations.push_back("clause 1: dual graph is not a linear chain");
        return r;
    }
    if (g.size() == 1 && g.weight(0) != 1) r.violations.push_back("clause 2: single curve must have weight +1");
    if (g.size() == 2 && g.weight(0) != 0 && g.weight(1) != 0)
        r.violations.push_back("clause 3: two-curve boundary needs a weight-0 curve");
    if (g.size() >= 3) {
        std::vector<int> nonneg;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.weight(static_cast<int>(v)) >= 0) nonneg.push_back(static_cast<int>(v));
        bool ok = nonneg.size() == 2 && g.adjacent(nonneg[0], nonneg[1]) &&
                  std::min(g.weight(nonneg[0]), g.weight(nonneg[1])) == 0 &&
                  std::max(g.weight(nonneg[0]), g.weight(nonneg[1])) > 0;
        if (!ok) r.violations.push_back("clause 4: need exactly two adjacent curves of weights 0 and >0");
    }
    return r;
}

WeightedDualGraph contract_orbit(const WeightedDualGraph& g, const std::vector<int>& block, ContractionStep* step) {
    auto fail = [&](const std::string& why) { return Error("OrbitNotContractible", why); };
    if (block.empty()) throw fail("empty block");
    std::set<int> members(block.begin(), block.end());
    for (int v : block) {
        if (g.weight(v) != -1) throw fail("vertex '" + g.id(v) + "' has weight " + std::to_string(g.weight(v)));
        if (g.degree(v) > 2) throw fail("vertex '" + g.id(v) + "' has degree " + std::to_string(g.degree(v)));
        for (int w : g.neighbors(v))
            if (members.count(w)) throw fail("vertices '" + g.id(v) + "' and '" + g.id(w) + "' are adjacent");
        for (int w : g.block_of(v))
            if (!members.count(w)) throw fail("block '" + g.orbit(v) + "' only partly selected (missing '" + g.id(w) + "')");
    }
    std::vector<std::string> ids;
    for (int v : block) ids.push_back(g.id(v));
    std::sort(ids.begin(), ids.end());
    std::set<std::string> touched;
    for (int v : block)
        for (int w : g.neighbors(v)) touched.insert(g.id(w));

    WeightedDualGraph cur = g;
    std::vector<std::pair<std::string, std::string>> new_edges;
    for (auto& id : ids) {
        int v = *cur.find(id);
        check_contractible(cur, v);
        if (cur.degree(v) == 2) {
            auto x = cur.id(cur.neighbors(v)[0]), y = cur.id(cur.neighbors(v)[1]);
            new_edges.emplace_back(std::min(x, y), std::max(x, y));
        }
        cur = remove_minus_one(cur, v);
    }
    if (step) {
        step->contracted = ids;
        step->weights.clear();
        for (auto& id : touched) step->weights.emplace_back(id, cur.weight(*cur.find(id)));
        std::sort(new_edges.begin(), new_edges.end());
        step->new_edges = new_edges;
    }
    return cur;
}

MncShape classify_mnc(const WeightedDualGraph& g) {
    auto t = as_linear_chain(g);
    if (!t) return {MncShape::Kind::NonLinear, 0, {}};
    if (t->size() == 1 && (*t)[0] == -1) return MncShape::plane_line();
    if (t->size() == 2) {
        Twig k = chain_key(*t);
        if (k[0] == 0 && k[1] >= 0 && k[1] != 1) return MncShape::hirzebruch(k[1]);
    }
    return MncShape::chain(*t);
}

NormalizeResult normalize(const WeightedDualGraph& g) {
    if (!is_forest(g)) throw Error("Stuck", "boundary graph has a cycle");
    validate_orbits(g);
    NormalizeResult res{g, {}, {}};
    WeightedDualGraph& cur = res.graph;
    auto stuck = [&](const std::string& why) { return Error("Stuck", why); };

    while (true) {
        std::set<int> cands;
        for (std::size_t v = 0; v < cur.size(); ++v)
            if (cur.weight(static_cast<int>(v)) == -1 && cur.degree(static_cast<int>(v)) <= 2) cands.insert(static_cast<int>(v));
        if (cands.empty()) break;

        // Whole blocks inside the candidate set.
        std::vector<int> chosen;
        for (const auto& block : cur.blocks())
            if (std::all_of(block.begin(), block.end(), [&](int v) { return cands.count(v) > 0; }))
                chosen.insert(chosen.end(), block.begin(), block.end());
        bool independent = !chosen.empty();
        for (int v : chosen)
            for (int w : cur.neighbors(v))
                if (std::find(chosen.begin(), chosen.end(), w) != chosen.end()) independent = false;

        if (!independent) {
            // Residual chains [1,1,m], [1,1,1,1] (and the two-curve [1,1]) finish at their ends.
            auto order = chain_order(cur);
            auto t = as_linear_chain(cur);
            bool shape = false;
            if (t) {
                Twig k = chain_key(*t);
                shape = (k.size() == 3 && k[0] == 1 && k[1] == 1 && k[2] >= 1) ||
                        (k.size() == 3 && k[1] == 1 && k[2] == 1 && k[0] >= 1) || k == Twig{1, 1, 1, 1} ||
                        k == Twig{1, 1};
            }
            if (!shape) throw stuck("(-1)-vertices do not form contractible orbit blocks and no chain shape applies");
            chosen.clear();
            int first = order->front(), last = order->back();
            if (cur.size() == 2) {
                chosen.push_back(cur.id(first) < cur.id(last) ? first : last);
            } else {
                if (cur.weight(first) == -1) chosen.push_back(first);
                if (cur.weight(last) == -1) chosen.push_back(last);
            }
            for (int v : chosen)
                for (int w : cur.block_of(v))
                    if (std::find(chosen.begin(), chosen.end(), w) == chosen.end())
                        throw stuck("chain end '" + cur.id(v) + "' shares a block with a non-end vertex");
        }
        ContractionStep step;
        cur = contract_orbit(cur, chosen, &step);
        res.steps.push_back(step);
    }
    res.shape = classify_mnc(cur);
    return res;
}

Twig shape_twig(const MncShape& s) {
    switch (s.kind) {
    case MncShape::Kind::ProjectivePlaneLine: return {-1};
    case MncShape::Kind::HirzebruchPair: return {0, s.m};
    case MncShape::Kind::GeneralChain: return s.twig;
    case MncShape::Kind::NonLinear: break;
    }
    throw Error("BadTarget", "a non-linear shape is not a contraction target");
}

bool chain_contracts_to(const Twig& start, const Twig& target, std::size_t budget) {
    ChainSearch s(Goal::twig(target), budget);
    return s.run(start);
}

bool chain_contracts_to_anchored(const Twig& start, const Twig& target, std::size_t budget) {
    std::unordered_set<Twig, TwigHash> seen;
    std::function<bool(const Twig&)> run = [&](const Twig& t) {
        if (t == target) return true;
        if (t.size() <= target.size() || !seen.insert(t).second) return false;
        if (seen.size() > budget) throw Error("BudgetExceeded", "more than " + std::to_string(budget) + " states");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (t[i] == 1 && run(contract_chain_at(t, i))) return true;
        return false;
    };
    return run(start);
}

bool contracts_to(const WeightedDualGraph& g, const Twig& target, std::size_t budget, Exec exec) {
    if (!is_forest(g)) throw Error("NotForest", "contraction oracle needs a forest");
    if (budget < g.size()) throw Error("BadBudget", "budget must be at least the vertex count");
    if (auto t = as_linear_chain(g)) {
        if (exec == Exec::Serial) return chain_contracts_to(*t, target, budget);
        auto moves = [](const Twig& s) {
            std::vector<std::size_t> m;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s[i] == 1) m.push_back(i);
            return m;
        };
        if (chain_key(*t) == chain_key(target)) return true;
        if (t->size() <= target.size()) return false;
        return first_move_parallel<Twig, ChainSearch>(*t, Goal::twig(target), budget, moves, contract_chain_at);
    }
    WeightedDualGraph plain = strip_orbits(g);
    if (exec == Exec::Serial) {
        GraphSearch s(Goal::twig(target), budget);
        return s.run(plain);
    }
    auto moves = [](const WeightedDualGraph& s) {
        std::vector<int> m;
        for (std::size_t v = 0; v < s.size(); ++v)
            if (s.weight(static_cast<int>(v)) == -1 && s.degree(static_cast<int>(v)) <= 2) m.push_back(static_cast<int>(v));
        return m;
    };
    if (plain.size() <= target.size()) {
        GraphSearch s(Goal::twig(target), budget);
        return s.run(plain);
    }
    return first_move_parallel<WeightedDualGraph, GraphSearch>(plain, Goal::twig(target), budget, moves, remove_minus_one);
}

std::optional<MncShape> contracts_to_seed(const WeightedDualGraph& g, std::size_t budget) {
    if (!is_forest(g)) throw Error("NotForest", "contraction oracle needs a forest");
    Twig reached;
    if (auto t = as_linear_chain(g)) {
        ChainSearch s(Goal::seed(), budget);
        if (!s.run(*t)) return std::nullopt;
        reached = s.reached;
    } else {
        GraphSearch s(Goal::seed(), budget);
        if (!s.run(strip_orbits(g))) return std::nullopt;
        reached = s.reached;
    }
    if (reached.size() == 1) return MncShape::plane_line();
    return MncShape::hirzebruch(reached[1]);
}

bool contracts_to(const WeightedDualGraph& g, const MncShape& target, std::size_t budget, Exec exec) {
    return contracts_to(g, shape_twig(target), budget, exec);
}

} // namespace plumbing
