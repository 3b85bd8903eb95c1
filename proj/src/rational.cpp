#include "jetlaw/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace jetlaw {

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto digits_ok = [](std::string_view part) {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rational r;
    r.value_ = mpq_class(n, d);
    r.value_.canonicalize();
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(n, d));
}

}  // namespace jetlaw
