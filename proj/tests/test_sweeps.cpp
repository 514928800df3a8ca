#include <doctest.h>

#include "oracles.hpp"
#include "plumbing/sweeps.hpp"

using namespace plumbing;

TEST_CASE("seed graphs") {
    auto p2 = seed_graph(MncShape::plane_line());
    REQUIRE(p2.size() == 1);
    CHECK(p2.weight(0) == 1);
    CHECK(is_mnc(p2));
    for (std::int64_t m : {0, 2, 3, 4}) {
        auto f = seed_graph(MncShape::hirzebruch(m));
        CHECK(f.size() == 2);
        CHECK(oracle::bareiss_det(oracle::graph_matrix(f)) == -1);
        CHECK(normalize(f).shape == MncShape::hirzebruch(m));
    }
}

TEST_CASE("the generator is deterministic and stays a forest") {
    for (std::size_t i = 0; i < 200; ++i) {
        auto a = generate_boundary(7, i);
        auto b = generate_boundary(7, i);
        CHECK(format_graph(a.graph) == format_graph(b.graph));
        CHECK(a.seed == b.seed);
        CHECK(is_forest(a.graph));
        CHECK(!a.sites.empty());
        CHECK(a.sites.size() <= 5);
        // Each blow-up adds one vertex.
        CHECK(a.graph.size() == seed_graph(a.seed).size() + a.sites.size());
        // Blow-ups keep the determinant of the intersection form up to sign.
        CHECK(abs(oracle::bareiss_det(oracle::graph_matrix(a.graph))) ==
              abs(oracle::bareiss_det(oracle::graph_matrix(seed_graph(a.seed)))));
    }
    CHECK(format_graph(generate_boundary(7, 0).graph) != format_graph(generate_boundary(8, 0).graph));
}

TEST_CASE("audit sweep over generated boundaries, serial and parallel") {
    auto s = lemma_sweep(5, 200);
    auto p = lemma_sweep(5, 200, Exec::Parallel);
    CHECK(s.graphs == 200);
    CHECK(s.failed == 0);
    CHECK(p.failed == 0);
    CHECK(s.normalized == p.normalized);
    REQUIRE(s.checks.size() == p.checks.size());
    for (const auto& [name, t] : s.checks) {
        const auto& q = p.checks.at(name);
        CHECK(t.pass == q.pass);
        CHECK(t.not_applicable == q.not_applicable);
        CHECK(t.fail == q.fail);
    }
}

TEST_CASE("Fujita sweeps, serial and parallel") {
    auto pool = admissible_twigs(8);
    auto s = fujita_sweep(pool);
    auto p = fujita_sweep(pool, Exec::Parallel);
    CHECK(s.pairs == pool.size() * pool.size());
    CHECK(s.pairs == p.pairs);
    CHECK(s.contractible == p.contractible);
    // Exactly one partner per twig.
    CHECK(s.contractible == pool.size());
    CHECK(s.discrepancies == 0);
    CHECK(p.discrepancies == 0);

    auto sp = fujita_prime_sweep(pool, {2, 3});
    auto pp = fujita_prime_sweep(pool, {2, 3}, Exec::Parallel);
    CHECK(sp.pairs == 2 * pool.size() * pool.size());
    CHECK(sp.contractible == pp.contractible);
    CHECK(sp.discrepancies == 0);
    CHECK(pp.discrepancies == 0);
}

TEST_CASE("inductance sweep, serial and parallel") {
    auto s = inductance_sweep(20);
    auto p = inductance_sweep(20, Exec::Parallel);
    CHECK(s.twigs == admissible_twigs(20).size());
    CHECK(s.twigs == p.twigs);
    CHECK(s.collisions == 0);
    CHECK(s.inverse_failures == 0);
    CHECK(s.range_failures == 0);
    CHECK(p.collisions == 0);
}
