#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace plumbing {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den = 1);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    std::string str() const;
    static Rational parse(std::string_view text);

private:
    BigInt num_;
    BigInt den_;
};

} // namespace plumbing
