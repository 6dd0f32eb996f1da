#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace thetashell {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Floor square root; input must be nonnegative.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline int64_t isqrt64(int64_t n) {
    if (n < 0) throw std::domain_error("isqrt64: negative argument");
    if (n == 0) return 0;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    Integer r = isqrt(n);
    return r * r == n;
}

// Floor division and the matching nonnegative remainder.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    return -floor_div(-a, b);
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += boost::multiprecision::abs(m);
    return r;
}

inline Integer int_pow(Integer base, unsigned exp) {
    Integer result = 1;
    while (exp > 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (!is_integer(r)) os << '/' << denominator(r);
    return os.str();
}

inline std::string integer_str(const Integer& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

}  // namespace thetashell
