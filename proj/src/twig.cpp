#include "plumbing/twig.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "plumbing/error.hpp"

namespace plumbing {

namespace {

void require_admissible(const Twig& t) {
    if (t.empty()) throw Error("EmptyTwig", "twig must be nonempty");
    if (!admissible(t)) throw Error("NotAdmissible", "entries must be >= 2 in " + format_twig(t));
}

bool is_palindrome(const Twig& t) { return std::equal(t.begin(), t.begin() + t.size() / 2, t.rbegin()); }

std::vector<std::size_t> ones_of(const Twig& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == 1) out.push_back(i);
    return out;
}

Twig slice(const Twig& t, std::size_t from, std::size_t to) {
    return Twig(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(to));
}

} // namespace

std::string format_twig(const Twig& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + "]";
}

Twig parse_twig(std::string_view text) {
    auto bad = [&](const std::string& why) {
        return Error("SyntaxError", "twig '" + std::string(text) + "': " + why);
    };
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw bad("expected [m1,...,mr]");
    Twig out;
    std::string_view body(s.data() + 1, s.size() - 2);
    if (body.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        auto comma = body.find(',', pos);
        std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
            throw bad("bad entry '" + std::string(tok) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

bool admissible(const Twig& t) {
    return std::all_of(t.begin(), t.end(), [](std::int64_t m) { return m >= 2; });
}

BigInt det(const Twig& t) {
    // d_k = m_k d_{k+1} - d_{k+2}, run from the right end.
    BigInt next = 1, after = 0;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        BigInt cur = BigInt(*it) * next - after;
        after = next;
        next = cur;
    }
    return next < 0 ? BigInt(-next) : next;
}

Rational inductance(const Twig& t) {
    require_admissible(t);
    return Rational(det(overline(t)), det(t));
}

Twig twig_from_inductance(const Rational& q) {
    if (q <= Rational(0) || q >= Rational(1))
        throw Error("OutOfRange", "inductance " + q.str() + " not in (0,1)");
    BigInt d = q.den(), p = q.num();
    Twig out;
    while (p != 0) {
        BigInt m = (d + p - 1) / p;
        out.push_back(static_cast<std::int64_t>(m));
        BigInt np = m * p - d;
        d = p;
        p = np;
    }
    return out;
}

Twig adjoint(const Twig& t) {
    require_admissible(t);
    return twig_from_inductance(Rational(1) - inductance(transpose(t)));
}

Twig transpose(const Twig& t) { return Twig(t.rbegin(), t.rend()); }

Twig overline(const Twig& t) { return t.size() <= 1 ? Twig{} : slice(t, 1, t.size()); }

Twig underline(const Twig& t) { return t.size() <= 1 ? Twig{} : slice(t, 0, t.size() - 1); }

Twig repeat2(std::int64_t t) {
    if (t < 0) throw Error("BadParams", "repeat count must be >= 0");
    return Twig(static_cast<std::size_t>(t), 2);
}

Twig L(std::int64_t m, std::int64_t t) {
    Twig out = repeat2(t);
    out.push_back(m);
    return out;
}

Twig R(std::int64_t m, std::int64_t t) { return transpose(L(m, t)); }

Twig concat(std::initializer_list<Twig> parts) {
    Twig out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<LBlock> l_block_decompose(const Twig& t) {
    require_admissible(t);
    std::vector<LBlock> blocks;
    std::int64_t run = 0;
    for (auto m : t) {
        if (m == 2) {
            ++run;
        } else {
            blocks.push_back({m, run});
            run = 0;
        }
    }
    // A trailing run of 2s is the last block L(2; run-1).
    if (run > 0) blocks.push_back({2, run - 1});
    return blocks;
}

Twig assemble(const std::vector<LBlock>& blocks) {
    Twig out;
    for (const auto& b : blocks) {
        Twig part = L(b.m, b.t);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::int64_t m_A(const Twig& t) { return l_block_decompose(t).front().t + 3; }

Twig fujita_prime_by_blocks(const Twig& a) {
    auto blocks = l_block_decompose(a);
    // blocks[0] is L(m_r;t_r); index 1 in the formula is the rightmost block.
    std::vector<LBlock> rtl(blocks.rbegin(), blocks.rend());
    Twig out = repeat2(rtl[0].m - 2);
    for (std::size_t i = 1; i < rtl.size(); ++i) {
        Twig part = R(rtl[i - 1].t + 3, rtl[i].m - 3);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Twig fujita_prime_expected(const Twig& a) {
    Twig via_adjoint = underline(adjoint(a));
    Twig via_blocks = fujita_prime_by_blocks(a);
    if (via_adjoint != via_blocks)
        throw Error("InternalError", "block formula " + format_twig(via_blocks) + " disagrees with adjoint " +
                                         format_twig(via_adjoint) + " for " + format_twig(a));
    return via_adjoint;
}

std::string kind_name(BoundaryTwigDecomposition::Kind k) {
    switch (k) {
    case BoundaryTwigDecomposition::Kind::Case1: return "Case1";
    case BoundaryTwigDecomposition::Kind::Case2: return "Case2";
    case BoundaryTwigDecomposition::Kind::Case3a: return "Case3a";
    case BoundaryTwigDecomposition::Kind::Case3b: return "Case3b";
    }
    return "?";
}

BoundaryTwigDecomposition decompose_boundary(const Twig& t) {
    using Kind = BoundaryTwigDecomposition::Kind;
    auto none = [&](const std::string& why) { return Error("NoDecomposition", format_twig(t) + ": " + why); };
    if (t.empty() || std::any_of(t.begin(), t.end(), [](std::int64_t m) { return m < 1; }))
        throw none("entries must be >= 1");
    auto ones = ones_of(t);

    if (ones.size() == 1) {
        for (bool rev : {false, true}) {
            Twig s = rev ? transpose(t) : t;
            std::size_t e = ones_of(s).front();
            Twig a = slice(s, 0, e);
            Twig rest = slice(s, e + 1, s.size());
            if (a.empty() || rest.empty() || !admissible(a)) continue;
            BoundaryTwigDecomposition d{Kind::Case1, a, rest.back()};
            d.reversed = rev;
            if (expand(d) == t) return d;
        }
        throw none("single 1 but not of the form [A,1,A*,m]");
    }
    if (ones.size() != 2 || !is_palindrome(t) || ones[0] + ones[1] + 1 != t.size())
        throw none("no matching shape");

    const std::size_t r = t.size();
    if (r % 2 == 0) {
        Twig right = slice(t, r / 2, r);
        std::size_t k = ones_of(right).front();
        Twig a = slice(right, 0, k);
        if (a.empty() || !admissible(a)) throw none("no admissible A in the even symmetric shape");
        BoundaryTwigDecomposition d{Kind::Case2, a};
        if (expand(d) == t) return d;
        throw none("even symmetric but not [tA*,1,tA,A,1,A*]");
    }

    const auto rp = static_cast<std::int64_t>((r + 1) / 2);
    if (rp >= 2) {
        BoundaryTwigDecomposition d{Kind::Case3a, {}, 0, 0, rp};
        if (expand(d) == t) return d;
    }
    const std::size_t mid = r / 2;
    if (t[mid] >= 3 && t[mid] % 2 == 1) {
        Twig right = slice(t, mid + 1, r);
        std::size_t k = ones_of(right).front();
        Twig a = slice(right, 0, k);
        if (!a.empty() && admissible(a)) {
            BoundaryTwigDecomposition d{Kind::Case3b, a, 0, (t[mid] - 3) / 2};
            if (expand(d) == t) return d;
        }
    }
    throw none("odd symmetric but neither odd-case form");
}

Twig expand(const BoundaryTwigDecomposition& d) {
    using Kind = BoundaryTwigDecomposition::Kind;
    switch (d.kind) {
    case Kind::Case1: {
        Twig s = concat({d.a, {1}, adjoint(d.a), {d.m}});
        return d.reversed ? transpose(s) : s;
    }
    case Kind::Case2: {
        Twig s = adjoint(d.a);
        return concat({transpose(s), {1}, transpose(d.a), d.a, {1}, s});
    }
    case Kind::Case3a: {
        std::int64_t r = 2 * d.r_prime - 1;
        return concat({L(1, d.r_prime - 2), {r - 2}, R(1, d.r_prime - 2)});
    }
    case Kind::Case3b: {
        Twig u = underline(adjoint(d.a));
        std::int64_t ma = m_A(d.a);
        return concat({L(ma, d.t), transpose(u), {1}, transpose(d.a), {2 * d.t + 3}, d.a, {1}, u, R(ma, d.t)});
    }
    }
    return {};
}

std::vector<Twig> admissible_twigs(std::int64_t max_det) {
    std::vector<Twig> out;
    for (std::int64_t d = 2; d <= max_det; ++d)
        for (std::int64_t p = 1; p < d; ++p)
            if (std::gcd(p, d) == 1) out.push_back(twig_from_inductance(Rational(p, d)));
    std::stable_sort(out.begin(), out.end(), [](const Twig& a, const Twig& b) {
        BigInt da = det(a), db = det(b);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

} // namespace plumbing
