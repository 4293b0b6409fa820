#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torusdiv {

using Integer = boost::multiprecision::cpp_int;

// Exact rational number, always stored in lowest terms with positive
// denominator.  cpp_rational maintains both invariants internally.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical serialized form, always "num/den" (e.g. "3/4", "-1/2", "0/1").
inline std::string rat_str(const Rational& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "num/den" or a bare integer "num".
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("rational: malformed string '" + s + "'");
    }
}

inline bool is_dyadic(const Rational& r) {
    const Integer den = rat_den(r);
    return den == (Integer(1) << boost::multiprecision::lsb(den));
}

// Exact decimal expansion of a dyadic rational, e.g. 3/4 -> "0.75",
// -5/2 -> "-2.5", 7/1 -> "7".  Throws for non-dyadic input.
inline std::string rat_dyadic_decimal(const Rational& r) {
    if (!is_dyadic(r)) throw std::domain_error("rational: not dyadic: " + rat_str(r));
    Integer num = rat_num(r);
    const unsigned m = boost::multiprecision::lsb(rat_den(r));
    if (m == 0) return num.str();
    bool neg = num < 0;
    if (neg) num = -num;
    Integer scaled = num;  // num / 2^m == num * 5^m / 10^m
    for (unsigned i = 0; i < m; ++i) scaled *= 5;
    std::string digits = scaled.str();
    if (digits.size() <= m) digits.insert(0, m + 1 - digits.size(), '0');
    digits.insert(digits.size() - m, ".");
    return (neg ? "-" : "") + digits;
}

inline Integer factorial(int k) {
    Integer f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace torusdiv
