#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jetlaw {

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(int value) : value_(static_cast<long>(value)) {}
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational abs() const { return Rational(::abs(value_)); }
    Rational inverse() const;
    Rational pow(int exponent) const;

    double to_double() const { return value_.get_d(); }
    std::string str() const { return value_.get_str(); }
    const mpq_class& raw() const { return value_; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

}  // namespace jetlaw
