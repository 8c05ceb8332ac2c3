#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sullivan {

/// Exact arbitrary-precision rational; all coefficient arithmetic in the
/// library goes through this type.  Values are always stored in lowest terms.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline Rational rational_pow(Rational base, long e) {
    if (e < 0) {
        if (is_zero(base)) throw std::domain_error("zero to a negative power");
        base = Rational(denominator(base), numerator(base));
        e = -e;
    }
    Rational r(1);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

/// Canonical "num/den" form used by the JSON report format.
inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Short human form: integers print without the "/1".
inline std::string to_coeff_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace sullivan
