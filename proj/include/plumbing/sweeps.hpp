#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plumbing/classifier.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/graph.hpp"

namespace plumbing {

// Minimal boundary of a seed: the plane line (+1) or the pair (0, -m).
WeightedDualGraph seed_graph(const MncShape& s);

struct GeneratedBoundary {
    MncShape seed;
    WeightedDualGraph graph;
    std::vector<BlowUpSite> sites;
};

// Deterministic in (seed, index): 1..max_blowups blow-ups at vertices or
// edges of the boundary, starting from P2 or a pair (0,-m), m in {0,2,3,4}.
GeneratedBoundary generate_boundary(std::uint64_t seed, std::size_t index, int max_blowups = 5);

struct CheckTally {
    std::size_t pass = 0;
    std::size_t not_applicable = 0;
    std::size_t fail = 0;
};

struct LemmaSweepResult {
    std::size_t graphs = 0;
    // Graphs with some failed audit entry or a broken generator invariant.
    std::size_t failed = 0;
    std::map<std::string, CheckTally> checks;
    std::size_t normalized = 0;
    std::vector<std::string> failures;
};

// Audits each generated boundary and confirms that it still blows down to its seed.
LemmaSweepResult lemma_sweep(std::uint64_t seed, std::size_t count, Exec exec = Exec::Serial);

struct PairSweepResult {
    std::size_t pairs = 0;
    std::size_t contractible = 0;
    std::size_t discrepancies = 0;
    std::vector<std::string> examples;
};

// [A,1,B] contracts to a 0-curve against B = adjoint(A), over pool x pool.
PairSweepResult fujita_sweep(const std::vector<Twig>& pool, Exec exec = Exec::Serial);
// [m,A,1,B] contracts to [m,1] (the m-curve kept) against B = underline(adjoint(A))
// and against the block formula, for each m.
PairSweepResult fujita_prime_sweep(const std::vector<Twig>& pool, const std::vector<std::int64_t>& ms,
                                   Exec exec = Exec::Serial);

struct InductanceSweepResult {
    std::size_t twigs = 0;
    std::size_t collisions = 0;
    std::size_t inverse_failures = 0;
    std::size_t range_failures = 0;
};
InductanceSweepResult inductance_sweep(std::int64_t max_det, Exec exec = Exec::Serial);

} // namespace plumbing
