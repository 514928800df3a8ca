#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plumbing/rational.hpp"

namespace plumbing {

// Entry m_i stands for a curve of self-intersection -m_i.
using Twig = std::vector<std::int64_t>;

std::string format_twig(const Twig& t);
Twig parse_twig(std::string_view text);

bool admissible(const Twig& t);

BigInt det(const Twig& t);
Rational inductance(const Twig& t);
Twig twig_from_inductance(const Rational& q);
Twig adjoint(const Twig& t);

Twig transpose(const Twig& t);
Twig overline(const Twig& t);
Twig underline(const Twig& t);
Twig repeat2(std::int64_t t);
Twig L(std::int64_t m, std::int64_t t);
Twig R(std::int64_t m, std::int64_t t);
Twig concat(std::initializer_list<Twig> parts);

struct LBlock {
    std::int64_t m;
    std::int64_t t;
    bool operator==(const LBlock&) const = default;
};

// Blocks are listed left to right, i.e. L(m_r;t_r) first.
std::vector<LBlock> l_block_decompose(const Twig& t);
Twig assemble(const std::vector<LBlock>& blocks);
std::int64_t m_A(const Twig& t);

Twig fujita_prime_by_blocks(const Twig& a);
Twig fujita_prime_expected(const Twig& a);

struct BoundaryTwigDecomposition {
    enum class Kind { Case1, Case2, Case3a, Case3b };
    Kind kind;
    Twig a;
    std::int64_t m = 0;
    std::int64_t t = 0;
    std::int64_t r_prime = 0;
    // Case1 only: the input is the reversal of [A,1,A*,m].
    bool reversed = false;
};

std::string kind_name(BoundaryTwigDecomposition::Kind k);
BoundaryTwigDecomposition decompose_boundary(const Twig& t);
Twig expand(const BoundaryTwigDecomposition& d);

// All admissible twigs with 2 <= det <= max_det, ordered by det then entries.
std::vector<Twig> admissible_twigs(std::int64_t max_det);

} // namespace plumbing
