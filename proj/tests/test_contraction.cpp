#include <doctest.h>

#include "oracles.hpp"
#include "plumbing/catalog.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/sweeps.hpp"

using namespace plumbing;

namespace {

Twig key(const Twig& t) { return std::min(t, Twig(t.rbegin(), t.rend())); }

int only_minus_one(const WeightedDualGraph& g) {
    auto v = minus_one_vertices(g);
    REQUIRE(v.size() == 1);
    return v[0];
}

} // namespace

TEST_CASE("blow_down on chains") {
    auto g = blow_down(path_graph({1, 1}), "c1");
    CHECK(g.size() == 1);
    CHECK(g.weight(0) == 0);
    CHECK(as_linear_chain(blow_down(path_graph({2, 1, 2}), "c2")) == Twig{1, 1});

    CHECK_ERROR_CODE(blow_down(path_graph({2, 1, 2}), "c1"), "NotMinusOne");
    WeightedDualGraph star;
    star.add_vertex("c", -1);
    for (int i = 0; i < 3; ++i) {
        star.add_vertex("l" + std::to_string(i), -2);
        star.add_edge(0, i + 1);
    }
    CHECK_ERROR_CODE(blow_down(star, "c"), "DegreeTooHigh");
    auto block = parse_graph("vertex a -1 orbit=o\nvertex b -1 orbit=o\nvertex c -3\nedge a c\nedge b c\n");
    CHECK_ERROR_CODE(blow_down(block, "a"), "PartialOrbit");
}

TEST_CASE("replaying the contraction of [m,2,4,1,2,2,4]") {
    for (std::int64_t m = 2; m <= 5; ++m) {
        const std::vector<Twig> expected{{m, 2, 4, 1, 2, 2, 4}, {m, 2, 3, 1, 2, 4}, {m, 2, 2, 1, 4}, {m, 2, 1, 3}, {m, 1, 2}};
        auto g = path_graph(expected[0]);
        for (std::size_t k = 1; k < expected.size(); ++k) {
            g = blow_down(g, only_minus_one(g));
            CHECK(as_linear_chain(g) == key(expected[k]));
        }
    }
}

TEST_CASE("blow_up") {
    WeightedDualGraph line;
    line.add_vertex("s1", 1);
    auto g = blow_up(line, {"s1", ""}, "e1");
    CHECK(g.size() == 2);
    CHECK(g.weight(*g.find("s1")) == 0);
    CHECK(g.weight(*g.find("e1")) == -1);

    auto f2 = seed_graph(MncShape::hirzebruch(2));
    auto h = blow_up(f2, {"s1", "s2"}, "e1");
    CHECK(as_linear_chain(h) == Twig{1, 1, 3});
    CHECK(format_graph(blow_down(h, "e1")) == format_graph(f2));
    CHECK(format_graph(blow_down(g, "e1")) == format_graph(line));

    CHECK_ERROR_CODE(blow_up(line, {"zz", ""}, "e1"), "UnknownSite");
    CHECK_ERROR_CODE(blow_up(f2, {"s1", "zz"}, "e1"), "UnknownSite");
    CHECK_ERROR_CODE(blow_up(f2, {"s1", ""}, "s2"), "DuplicateVertex");
}

TEST_CASE("blow_up then blow_down restores generated boundaries") {
    for (std::size_t i = 0; i < 200; ++i) {
        auto gen = generate_boundary(3, i);
        auto g = gen.graph;
        const auto n = g.size();
        auto h = blow_up(g, {g.id(0), ""}, "fresh");
        CHECK(h.size() == n + 1);
        auto back = blow_down(h, "fresh");
        CHECK(format_graph(back) == format_graph(g));
        for (int v : minus_one_vertices(g)) {
            if (g.degree(v) > 2) continue;
            auto d = blow_down(g, v);
            CHECK(d.size() == n - 1);
            CHECK(is_forest(d));
        }
    }
}

TEST_CASE("mnc recognition") {
    WeightedDualGraph line;
    line.add_vertex("a", 1);
    CHECK(is_mnc(line));
    CHECK(morrow_audit(line).pass());
    CHECK_FALSE(is_mnc(path_graph({2, 1, 2})));
    auto f0 = parse_graph("vertex a 0\nvertex b 0\nedge a b\n");
    CHECK(is_mnc(f0));
    CHECK(morrow_audit(f0).pass());
    CHECK(morrow_audit(parse_graph("vertex a 0\nvertex b -3\nedge a b\n")).pass());
    auto twozeros = path_graph({2, 0, 3, 0, 2});
    CHECK(is_mnc(twozeros));
    CHECK_FALSE(morrow_audit(twozeros).pass());
    WeightedDualGraph minus;
    minus.add_vertex("a", -2);
    CHECK_FALSE(morrow_audit(minus).pass());
}

TEST_CASE("contract_orbit") {
    const auto& cat = Catalog::builtin();
    FamilyParams p;
    p.a = Twig{2};
    auto g = cat.instantiate(8, p).graph;
    auto bullets = minus_one_vertices(g);
    ContractionStep step;
    auto h = contract_orbit(g, bullets, &step);
    CHECK(h.size() == g.size() - 2);
    CHECK(step.contracted.size() == 2);
    CHECK(step.weights.size() == 4);
    for (const auto& [id, w] : step.weights) CHECK(w == g.weight(*g.find(id)) + 1);
    CHECK(format_step(step).rfind("contract ", 0) == 0);

    auto adjacent = parse_graph("vertex a -1 orbit=o\nvertex b -1 orbit=o\nedge a b\n");
    CHECK_ERROR_CODE(contract_orbit(adjacent, {0, 1}), "OrbitNotContractible");
    auto partial = parse_graph("vertex a -1 orbit=o\nvertex b -1 orbit=o\nvertex c -3\nedge a c\nedge b c\n");
    CHECK_ERROR_CODE(contract_orbit(partial, {0}), "OrbitNotContractible");

    auto chain = path_graph({2, 1, 3});
    CHECK(format_graph(contract_orbit(chain, {1})) == format_graph(blow_down(chain, 1)));
}

TEST_CASE("normalize") {
    const auto& cat = Catalog::builtin();
    auto r26 = normalize(cat.instantiate(26, {}).graph);
    CHECK(r26.shape == MncShape::plane_line());

    auto r21 = normalize(cat.instantiate(21, {}).graph);
    CHECK(r21.shape == MncShape::hirzebruch(2));
    CHECK(r21.steps.size() == 3);
    CHECK(morrow_audit(r21.graph).pass());

    auto r11 = normalize(path_graph({1, 1}));
    CHECK(r11.graph.size() == 1);
    CHECK(r11.graph.weight(0) == 0);

    CHECK(normalize(path_graph({1, 1, 3})).shape == MncShape::hirzebruch(3));
    CHECK(normalize(path_graph({1, 1, 1, 1})).shape == MncShape::hirzebruch(0));

    auto cycle = parse_graph("vertex a -1\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n");
    CHECK_ERROR_CODE(normalize(cycle), "Stuck");
    // The block {a, b} is never contractible as a whole because b is a branch vertex.
    auto split = parse_graph("vertex a -1 orbit=o\nvertex b -1 orbit=o\nvertex c -3\nvertex d -3\nvertex e -3\n"
                             "vertex f -2\nedge a f\nedge b c\nedge b d\nedge b e\n");
    CHECK_ERROR_CODE(normalize(split), "Stuck");
}

TEST_CASE("normalization of a blown-up seed can land on a different seed") {
    // Blowing up the point where the two rulings meet gives [1,1,1], which
    // normalizes to the plane line although single blow-downs reach (0,0).
    auto g = blow_up(seed_graph(MncShape::hirzebruch(0)), {"s1", "s2"}, "e1");
    CHECK(as_linear_chain(g) == Twig{1, 1, 1});
    CHECK(normalize(g).shape == MncShape::plane_line());
    CHECK(contracts_to(g, MncShape::hirzebruch(0)));
    CHECK(contracts_to(g, MncShape::plane_line()));
}

TEST_CASE("generated boundaries reach their seed") {
    for (std::size_t i = 0; i < 300; ++i) {
        auto gen = generate_boundary(17, i);
        CHECK(contracts_to(gen.graph, gen.seed));
        try {
            auto r = normalize(gen.graph);
            CHECK(morrow_audit(r.graph).pass());
        } catch (const Error& e) {
            CHECK(e.code() == "Stuck");
        }
    }
}

TEST_CASE("exhaustive contraction search") {
    CHECK(contracts_to(path_graph({2, 4, 1, 2, 2, 3}), Twig{0}));
    CHECK_FALSE(contracts_to(path_graph({2, 4, 1, 2, 3}), Twig{0}));
    CHECK(contracts_to(path_graph({5, 2, 1}), Twig{5, 1}));
    CHECK(chain_contracts_to({5, 2, 1}, {5, 1}));
    CHECK(chain_contracts_to_anchored({5, 2, 1}, {5, 1}));
    CHECK_FALSE(chain_contracts_to_anchored({2, 2, 1, 4}, {2, 1}));
    CHECK(chain_contracts_to({2, 2, 1, 4}, {2, 1}));

    auto cycle = parse_graph("vertex a -1\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n");
    CHECK_ERROR_CODE(contracts_to(cycle, Twig{0}), "NotForest");
    CHECK_ERROR_CODE(contracts_to(path_graph({2, 1, 2}), Twig{0}, 2), "BadBudget");
    CHECK_ERROR_CODE(contracts_to(path_graph({1, 2, 1, 2, 1, 2, 1, 2, 1}), Twig{9}, 9), "BudgetExceeded");
    CHECK_ERROR_CODE(contracts_to(path_graph({1, 2, 1, 2, 1, 2, 1, 2, 1}), Twig{9}, 9, Exec::Parallel), "BudgetExceeded");
}

TEST_CASE("parallel first-move search agrees with the serial one") {
    const auto& cat = Catalog::builtin();
    Bounds b;
    b.max_t = b.max_tp = 1;
    b.max_m = 3;
    b.pool = admissible_twigs(4);
    for (int id : {1, 8, 9, 21, 24, 30}) {
        for (const auto& inst : cat.enumerate(id, b)) {
            auto target = cat.mnc_target(inst.id, inst.params);
            CHECK(contracts_to(inst.graph, target) == contracts_to(inst.graph, target, kDefaultBudget, Exec::Parallel));
            CHECK(contracts_to(inst.graph, target, kDefaultBudget, Exec::Parallel));
        }
    }
    for (std::size_t i = 0; i < 100; ++i) {
        auto g = generate_boundary(23, i).graph;
        for (const auto& t : std::vector<Twig>{{0}, {0, 2}, {-1}, {2, 1}})
            CHECK(contracts_to(g, t) == contracts_to(g, t, kDefaultBudget, Exec::Parallel));
    }
    auto pool = admissible_twigs(10);
    for (const auto& a : pool)
        for (const auto& b2 : pool) {
            auto g = path_graph(concat({a, {1}, b2}));
            CHECK(contracts_to(g, Twig{0}) == contracts_to(g, Twig{0}, kDefaultBudget, Exec::Parallel));
            CHECK(contracts_to(g, Twig{0}) == oracle::chain_reaches(concat({a, {1}, b2}), {0}, false));
        }
}

TEST_CASE("seed search") {
    auto seed = contracts_to_seed(path_graph({1, 1, 3}));
    REQUIRE(seed.has_value());
    CHECK(*seed == MncShape::hirzebruch(3));
    CHECK_FALSE(contracts_to_seed(path_graph({2, 2, 3})).has_value());
}
