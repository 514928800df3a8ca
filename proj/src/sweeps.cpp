#include "plumbing/sweeps.hpp"

#include <algorithm>
#include <random>

#include "plumbing/error.hpp"
#include "plumbing/rational.hpp"

namespace plumbing {

namespace {

constexpr std::size_t kKeepExamples = 10;

// Runs body(i) for i in [0, n), in order or across OpenMP threads. Exceptions
// are turned into per-index messages so every index is accounted for.
template <class Body>
std::vector<std::string> for_each_index(std::size_t n, Exec exec, Body body) {
    std::vector<std::string> errors(n);
    auto one = [&](std::size_t i) {
        try {
            body(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) one(i);
    } else {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
    }
    return errors;
}

void note(std::vector<std::string>& out, std::string s) {
    if (out.size() < kKeepExamples) out.push_back(std::move(s));
}

} // namespace

WeightedDualGraph seed_graph(const MncShape& s) {
    WeightedDualGraph g;
    if (s.kind == MncShape::Kind::ProjectivePlaneLine) {
        g.add_vertex("s1", 1);
        return g;
    }
    if (s.kind != MncShape::Kind::HirzebruchPair || s.m == 1 || s.m < 0)
        throw Error("BadTarget", s.str() + " is not a seed boundary");
    g.add_vertex("s1", 0);
    g.add_vertex("s2", -s.m);
    g.add_edge(0, 1);
    return g;
}

GeneratedBoundary generate_boundary(std::uint64_t seed, std::size_t index, int max_blowups) {
    if (max_blowups < 1) throw Error("BadParams", "max_blowups must be at least 1");
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(index) * 0x9e3779b97f4a7c15ULL));
    static const std::int64_t ms[] = {0, 2, 3, 4};
    const auto pick = rng() % 5;
    GeneratedBoundary out;
    out.seed = pick == 0 ? MncShape::plane_line() : MncShape::hirzebruch(ms[pick - 1]);
    out.graph = seed_graph(out.seed);
    const auto k = 1 + rng() % static_cast<std::uint64_t>(max_blowups);
    for (std::uint64_t j = 0; j < k; ++j) {
        auto edges = out.graph.edges();
        const auto r = rng() % (out.graph.size() + edges.size());
        BlowUpSite site;
        if (r < out.graph.size()) {
            site.a = out.graph.id(static_cast<int>(r));
        } else {
            auto [x, y] = edges[r - out.graph.size()];
            site.a = out.graph.id(x);
            site.b = out.graph.id(y);
        }
        out.graph = blow_up(out.graph, site, "e" + std::to_string(j + 1));
        out.sites.push_back(site);
    }
    return out;
}

LemmaSweepResult lemma_sweep(std::uint64_t seed, std::size_t count, Exec exec) {
    std::vector<AuditReport> audits(count);
    std::vector<std::string> problems(count);
    std::vector<char> normalized(count, 0);
    auto errors = for_each_index(count, exec, [&](std::size_t i) {
        auto gen = generate_boundary(seed, i);
        audits[i] = structural_lemma_audit(gen.graph);
        if (!contracts_to(gen.graph, gen.seed)) problems[i] = "does not blow down to " + gen.seed.str();
        try {
            auto nr = normalize(gen.graph);
            normalized[i] = 1;
            auto m = morrow_audit(nr.graph);
            if (!m.pass()) problems[i] = "normalized to a non-mnc: " + m.violations.front();
        } catch (const Error& e) {
            if (e.code() != "Stuck") throw;
        }
    });
    LemmaSweepResult r;
    r.graphs = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (!errors[i].empty() && problems[i].empty()) problems[i] = errors[i];
        for (const auto& e : audits[i].entries) {
            auto& t = r.checks[e.check];
            switch (e.status) {
            case AuditEntry::Status::Pass: ++t.pass; break;
            case AuditEntry::Status::NotApplicable: ++t.not_applicable; break;
            case AuditEntry::Status::Fail:
                ++t.fail;
                if (problems[i].empty()) problems[i] = e.check + ": " + e.detail;
                break;
            }
        }
        r.normalized += static_cast<std::size_t>(normalized[i]);
        if (!problems[i].empty()) {
            ++r.failed;
            note(r.failures, "#" + std::to_string(i) + ": " + problems[i]);
        }
    }
    return r;
}

PairSweepResult fujita_sweep(const std::vector<Twig>& pool, Exec exec) {
    const std::size_t n = pool.size();
    std::vector<char> contract(n * n, 0), predicted(n * n, 0);
    auto errors = for_each_index(n * n, exec, [&](std::size_t k) {
        const Twig& a = pool[k / n];
        const Twig& b = pool[k % n];
        contract[k] = chain_contracts_to(concat({a, Twig{1}, b}), Twig{0});
        predicted[k] = b == adjoint(a);
    });
    PairSweepResult r;
    r.pairs = n * n;
    for (std::size_t k = 0; k < n * n; ++k) {
        r.contractible += static_cast<std::size_t>(contract[k]);
        if (!errors[k].empty() || contract[k] != predicted[k]) {
            ++r.discrepancies;
            note(r.examples, "A=" + format_twig(pool[k / n]) + " B=" + format_twig(pool[k % n]) +
                                 (errors[k].empty() ? (contract[k] ? " contracts" : " does not contract") : ": " + errors[k]));
        }
    }
    return r;
}

PairSweepResult fujita_prime_sweep(const std::vector<Twig>& pool, const std::vector<std::int64_t>& ms, Exec exec) {
    const std::size_t n = pool.size();
    const std::size_t total = ms.size() * n * n;
    std::vector<Twig> by_adjoint(n), by_blocks(n);
    for (std::size_t i = 0; i < n; ++i) {
        by_adjoint[i] = underline(adjoint(pool[i]));
        by_blocks[i] = fujita_prime_by_blocks(pool[i]);
    }
    std::vector<char> contract(total, 0);
    auto errors = for_each_index(total, exec, [&](std::size_t k) {
        const std::int64_t m = ms[k / (n * n)];
        const Twig& a = pool[(k / n) % n];
        const Twig& b = pool[k % n];
        contract[k] = chain_contracts_to_anchored(concat({Twig{m}, a, Twig{1}, b}), Twig{m, 1});
    });
    PairSweepResult r;
    r.pairs = total;
    for (std::size_t k = 0; k < total; ++k) {
        const std::size_t ia = (k / n) % n, ib = k % n;
        const bool p1 = pool[ib] == by_adjoint[ia];
        const bool p2 = pool[ib] == by_blocks[ia];
        r.contractible += static_cast<std::size_t>(contract[k]);
        if (!errors[k].empty() || p1 != p2 || static_cast<bool>(contract[k]) != p1) {
            ++r.discrepancies;
            note(r.examples, "m=" + std::to_string(ms[k / (n * n)]) + " A=" + format_twig(pool[ia]) +
                                 " B=" + format_twig(pool[ib]) + (errors[k].empty() ? "" : ": " + errors[k]));
        }
    }
    return r;
}

InductanceSweepResult inductance_sweep(std::int64_t max_det, Exec exec) {
    auto twigs = admissible_twigs(max_det);
    const std::size_t n = twigs.size();
    std::vector<Rational> q(n);
    std::vector<char> inverse_ok(n, 0), range_ok(n, 0);
    auto errors = for_each_index(n, exec, [&](std::size_t i) {
        q[i] = inductance(twigs[i]);
        range_ok[i] = q[i] > Rational(0) && q[i] < Rational(1);
        inverse_ok[i] = twig_from_inductance(q[i]) == twigs[i];
    });
    InductanceSweepResult r;
    r.twigs = n;
    std::vector<Rational> sorted;
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) {
            ++r.inverse_failures;
            continue;
        }
        r.inverse_failures += inverse_ok[i] ? 0 : 1;
        r.range_failures += range_ok[i] ? 0 : 1;
        sorted.push_back(q[i]);
    }
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) ++r.collisions;
    return r;
}

} // namespace plumbing
