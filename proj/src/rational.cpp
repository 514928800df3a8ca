#include "plumbing/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include "plumbing/error.hpp"

namespace plumbing {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error("DivisionByZero", "zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
Rational Rational::operator-(const Rational& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
Rational Rational::operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }
Rational Rational::operator/(const Rational& o) const { return {num_ * o.den_, den_ * o.num_}; }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    auto to_int = [&](std::string_view s) {
        if (s.empty()) throw Error("SyntaxError", "bad rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw Error("SyntaxError", "bad rational '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw Error("SyntaxError", "bad rational '" + std::string(text) + "'");
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    if (slash == std::string_view::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

} // namespace plumbing
