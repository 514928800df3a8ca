#include <doctest.h>

#include <map>
#include <numeric>

#include "oracles.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/twig.hpp"

using namespace plumbing;

namespace {

// All twigs with entries in [lo, hi] and length <= len.
std::vector<Twig> all_twigs(std::int64_t lo, std::int64_t hi, std::size_t len) {
    std::vector<Twig> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == len) continue;
        for (std::int64_t v = lo; v <= hi; ++v) {
            Twig t = out[i];
            t.push_back(v);
            out.push_back(t);
        }
    }
    return out;
}

// Admissible twigs with det <= bound; det grows when an entry is appended.
std::vector<Twig> small_admissible(std::int64_t bound) {
    std::vector<Twig> out, frontier{{}};
    while (!frontier.empty()) {
        std::vector<Twig> next;
        for (const auto& t : frontier)
            for (std::int64_t v = 2; v <= bound; ++v) {
                Twig u = t;
                u.push_back(v);
                if (oracle::abs_twig_det(u) <= bound) {
                    out.push_back(u);
                    next.push_back(u);
                }
            }
        frontier = next;
    }
    return out;
}

Rational oracle_inductance(const Twig& t) {
    Twig rest(t.begin() + 1, t.end());
    return Rational(BigInt(oracle::abs_twig_det(rest)), BigInt(oracle::abs_twig_det(t)));
}

} // namespace

TEST_CASE("determinant of small twigs") {
    CHECK(det({}) == 1);
    CHECK(det({2, 4}) == 7);
    CHECK(det({2, 2, 3}) == 7);
    for (std::int64_t m = 2; m <= 10; ++m) CHECK(det({m}) == m);
    for (std::int64_t t = 1; t <= 10; ++t) CHECK(det(repeat2(t)) == t + 1);
}

TEST_CASE("determinant agrees with dense elimination, including entries 0 and 1") {
    for (const auto& t : all_twigs(0, 4, 5)) CHECK_MESSAGE(det(t) == oracle::abs_twig_det(t), format_twig(t));
}

TEST_CASE("inductance of worked twigs") {
    CHECK(inductance({4, 2}) == Rational(2, 7));
    CHECK(inductance({2, 2, 3}) == Rational(5, 7));
    CHECK(inductance({2, 4}) == Rational(4, 7));
    CHECK_ERROR_CODE(inductance({2, 1}), "NotAdmissible");
    CHECK_ERROR_CODE(inductance({}), "EmptyTwig");
}

TEST_CASE("twig_from_inductance inverts an exhaustive table") {
    CHECK(twig_from_inductance(Rational(5, 7)) == Twig{2, 2, 3});
    CHECK(twig_from_inductance(Rational(1, 2)) == Twig{2});
    CHECK(twig_from_inductance(Rational(2, 7)) == Twig{4, 2});
    CHECK_ERROR_CODE(twig_from_inductance(Rational(0)), "OutOfRange");
    CHECK_ERROR_CODE(twig_from_inductance(Rational(1)), "OutOfRange");
    CHECK_ERROR_CODE(twig_from_inductance(Rational(3, 2)), "OutOfRange");

    const std::int64_t bound = 14;
    std::map<Rational, Twig> table;
    for (const auto& t : small_admissible(bound)) {
        auto q = oracle_inductance(t);
        CHECK_MESSAGE(table.emplace(q, t).second, "collision at " << format_twig(t));
    }
    // Every reduced p/d with d <= bound appears exactly once.
    std::size_t fractions = 0;
    for (std::int64_t d = 2; d <= bound; ++d)
        for (std::int64_t p = 1; p < d; ++p)
            if (std::gcd(p, d) == 1) ++fractions;
    CHECK(table.size() == fractions);
    for (const auto& [q, t] : table) {
        CHECK(twig_from_inductance(q) == t);
        CHECK(inductance(t) == q);
    }
}

TEST_CASE("admissible_twigs lists the same set as the independent enumeration") {
    auto lib = admissible_twigs(14);
    auto ref = small_admissible(14);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    CHECK(lib == ref);
}

TEST_CASE("adjoint") {
    CHECK(adjoint({2, 4}) == Twig{2, 2, 3});
    CHECK(adjoint({2}) == Twig{2});
    CHECK(adjoint({3}) == Twig{2, 2});
    CHECK(oracle::chain_reaches({3, 1, 2, 2}, {0}, false));
    CHECK(oracle::chain_reaches({2, 1, 2}, {0}, false));
    for (const auto& t : admissible_twigs(40)) {
        CHECK(inductance(adjoint(t)) == Rational(1) - inductance(transpose(t)));
        CHECK(adjoint(adjoint(t)) == t);
    }
}

TEST_CASE("sequence helpers") {
    CHECK(transpose({2, 4}) == Twig{4, 2});
    CHECK(L(4, 2) == Twig{2, 2, 4});
    CHECK(R(4, 2) == Twig{4, 2, 2});
    CHECK(underline({2, 2, 3}) == Twig{2, 2});
    CHECK(overline({2, 2, 3}) == Twig{2, 3});
    CHECK(overline({5}).empty());
    CHECK(underline({5}).empty());
    CHECK(repeat2(0).empty());
    CHECK(concat({{2}, {}, {1, 3}}) == Twig{2, 1, 3});
}

TEST_CASE("twig text syntax") {
    CHECK(parse_twig("[2,4]") == Twig{2, 4});
    CHECK(parse_twig(" [ 2 , 4 ] ") == Twig{2, 4});
    CHECK(parse_twig("[]").empty());
    CHECK(format_twig({2, 2, 3}) == "[2,2,3]");
    CHECK_ERROR_CODE(parse_twig("[2,x]"), "SyntaxError");
    CHECK_ERROR_CODE(parse_twig("2,4"), "SyntaxError");
    try {
        parse_twig("[2,x]");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'x'") != std::string::npos);
    }
}

TEST_CASE("L-block decomposition") {
    CHECK(l_block_decompose({2, 4}) == std::vector<LBlock>{{4, 1}});
    CHECK(l_block_decompose({3, 2}) == std::vector<LBlock>{{3, 0}, {2, 0}});
    CHECK(l_block_decompose({2, 2}) == std::vector<LBlock>{{2, 1}});
    CHECK_ERROR_CODE(l_block_decompose({2, 1}), "NotAdmissible");
    for (const auto& t : admissible_twigs(40)) {
        auto blocks = l_block_decompose(t);
        CHECK(assemble(blocks) == t);
        CHECK(blocks.back().m >= 2);
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i) CHECK(blocks[i].m >= 3);
    }
}

TEST_CASE("m_A") {
    CHECK(m_A({2, 4}) == 4);
    CHECK(m_A({2}) == 3);
    CHECK(m_A({2, 2}) == 4);
    for (std::int64_t k = 1; k <= 8; ++k) CHECK(m_A(repeat2(k)) == k + 2);
    // A leading run of s twos followed by an entry >= 3 gives s + 3.
    for (const auto& t : admissible_twigs(30)) {
        std::size_t s = 0;
        while (s < t.size() && t[s] == 2) ++s;
        if (s < t.size()) CHECK(m_A(t) == static_cast<std::int64_t>(s) + 3);
    }
}

TEST_CASE("contracting [m,A,1,B] to [m,1]") {
    CHECK(fujita_prime_expected({2, 4}) == Twig{2, 2});
    CHECK(fujita_prime_expected({2}).empty());
    Twig b = fujita_prime_expected({3, 3});
    CHECK(b == underline(adjoint({3, 3})));
    CHECK(oracle::chain_reaches(concat({{5}, {3, 3}, {1}, b}), {5, 1}, true));
    for (const auto& a : admissible_twigs(20)) {
        CHECK(fujita_prime_expected(a) == underline(adjoint(a)));
        CHECK(fujita_prime_by_blocks(a) == underline(adjoint(a)));
    }
}

TEST_CASE("Fujita equivalence against a memo-free search") {
    auto pool = small_admissible(8);
    for (const auto& a : pool)
        for (const auto& b : pool) {
            bool reaches = oracle::chain_reaches(concat({a, {1}, b}), {0}, false);
            CHECK_MESSAGE(reaches == (b == adjoint(a)), format_twig(a) << " " << format_twig(b));
        }
    for (std::int64_t m : {2, 3, 4})
        for (const auto& a : pool)
            for (const auto& b : pool) {
                bool reaches = oracle::chain_reaches(concat({{m}, a, {1}, b}), {m, 1}, true);
                CHECK_MESSAGE(reaches == (b == fujita_prime_expected(a)), m << " " << format_twig(a) << " " << format_twig(b));
            }
}

TEST_CASE("[m,A,1,underline(A*),m_A] contracts to [m,1,2]") {
    for (std::int64_t m : {2, 3, 4})
        for (const auto& a : admissible_twigs(12)) {
            Twig start = concat({{m}, a, {1}, underline(adjoint(a)), {m_A(a)}});
            CHECK_MESSAGE(oracle::chain_reaches(start, {m, 1, 2}, true), format_twig(start));
        }
}

TEST_CASE("boundary twig decomposition") {
    auto d1 = decompose_boundary({2, 4, 1, 2, 2, 3, 5});
    CHECK(d1.kind == BoundaryTwigDecomposition::Kind::Case1);
    CHECK(d1.a == Twig{2, 4});
    CHECK(d1.m == 5);
    CHECK(expand(d1) == Twig{2, 4, 1, 2, 2, 3, 5});

    auto d3 = decompose_boundary({2, 1, 3, 1, 2});
    CHECK((d3.kind == BoundaryTwigDecomposition::Kind::Case3a || d3.kind == BoundaryTwigDecomposition::Kind::Case3b));
    CHECK(expand(d3) == Twig{2, 1, 3, 1, 2});

    auto d7 = decompose_boundary({2, 2, 1, 5, 1, 2, 2});
    CHECK(d7.kind == BoundaryTwigDecomposition::Kind::Case3a);
    CHECK(d7.r_prime == 4);
    CHECK(expand(d7) == Twig{2, 2, 1, 5, 1, 2, 2});

    auto rev = decompose_boundary({5, 3, 2, 2, 1, 4, 2});
    CHECK(expand(rev) == Twig{5, 3, 2, 2, 1, 4, 2});

    CHECK_ERROR_CODE(decompose_boundary({2, 2}), "NoDecomposition");
    CHECK(expand(decompose_boundary({2, 1, 2, 2})) == Twig{2, 1, 2, 2});
    CHECK_ERROR_CODE(decompose_boundary({3, 1, 2, 2}), "NoDecomposition");
}

TEST_CASE("decomposition round trip on chains that blow down to a pair (0,-m)") {
    std::size_t decomposed = 0;
    for (const auto& t : all_twigs(1, 6, 7)) {
        if (t.size() < 3 || std::count(t.begin(), t.end(), 1) == 0) continue;
        try {
            auto d = decompose_boundary(t);
            CHECK_MESSAGE(expand(d) == t, format_twig(t));
            ++decomposed;
        } catch (const Error& e) {
            CHECK(e.code() == "NoDecomposition");
        }
    }
    CHECK(decomposed > 0);
}
