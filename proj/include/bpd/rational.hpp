#pragma once

// Exact rational arithmetic used throughout the library, plus the handful of
// integer-exponent helpers that let us compare values of the form m * B^(p/q)
// without ever touching floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bpd {

using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline big_int int_pow(big_int base, unsigned long e) {
    big_int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Exact x^e for integer e (negative e flips num/den; requires x != 0 then).
inline rational rat_pow(const rational& x, long e) {
    if (e == 0) return rational(1);
    big_int n = numerator(x), d = denominator(x);
    if (e < 0) {
        if (n == 0) throw std::domain_error("rat_pow: zero to negative power");
        std::swap(n, d);
        e = -e;
        if (n < 0) { n = -n; d = -d; }
    }
    return rational(int_pow(n, static_cast<unsigned long>(e)),
                    int_pow(d, static_cast<unsigned long>(e)));
}

// ceil(log_base x) for integers x >= 1, base >= 2: least t >= 0 with base^t >= x.
inline long ceil_log(const big_int& base, const big_int& x) {
    if (x < 1 || base < 2) throw std::domain_error("ceil_log: x >= 1, base >= 2 required");
    long t = 0;
    big_int p = 1;
    while (p < x) { p *= base; ++t; }
    return t;
}

// ceil(log_base (den/num)) for a rational p in (0,1]: least t with base^t * p >= 1.
inline long ceil_log_inv(const big_int& base, const rational& p) {
    if (p <= 0 || p > 1) throw std::domain_error("ceil_log_inv: p in (0,1] required");
    long t = 0;
    big_int lhs = numerator(p);
    const big_int& den = denominator(p);
    while (lhs < den) { lhs *= base; ++t; }
    return t;
}

// log2 of a positive big integer, accurate to ~1 ulp of double.
inline double log2_big(const big_int& n) {
    if (n <= 0) throw std::domain_error("log2_big: positive argument required");
    unsigned long bits = msb(n);  // floor(log2 n)
    if (bits < 63) return std::log2(n.convert_to<double>());
    big_int top = n >> (bits - 62);
    return static_cast<double>(bits - 62) + std::log2(top.convert_to<double>());
}

inline double log2_rational(const rational& x) {
    if (x <= 0) throw std::domain_error("log2_rational: positive argument required");
    return log2_big(numerator(x)) - log2_big(denominator(x));
}

// -1 / 0 / +1 comparison of m^q against base^p, all exact. q > 0, m > 0.
inline int cmp_pow(const rational& m, long q, const big_int& base, long p) {
    if (m <= 0 || q <= 0) throw std::domain_error("cmp_pow: m > 0, q > 0 required");
    rational lhs = rat_pow(m, q);
    rational rhs = p >= 0 ? rational(int_pow(base, static_cast<unsigned long>(p)))
                          : rational(1, int_pow(base, static_cast<unsigned long>(-p)));
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

inline rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("bad rational: '" + s + "'"); };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return rational(big_int(s));
        big_int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den <= 0) bad();
        return rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return rational();  // unreachable
}

inline std::string format_rational(const rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace bpd
