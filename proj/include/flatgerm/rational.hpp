#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace flatgerm {

using BigInt = boost::multiprecision::cpp_int;
using BigNat = boost::multiprecision::cpp_int;  // nonnegative by contract where used
using Rational = boost::multiprecision::cpp_rational;

// ln|x| for an arbitrarily large integer. Splits off the top 64 bits so the
// mantissa stays exactly representable in a double.
inline double log_abs(const BigInt& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    BigInt a = abs(x);
    const std::size_t bits = msb(a) + 1;
    if (bits <= 53) return std::log(static_cast<double>(a));
    const std::size_t shift = bits - 53;
    const double mant = static_cast<double>(a >> shift);
    return std::log(mant) + static_cast<double>(shift) * 0.6931471805599453094;
}

inline double log_abs(const Rational& q) {
    return log_abs(numerator(q)) - log_abs(denominator(q));
}

inline int sign_of(const Rational& q) {
    return q.sign();
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// Parses "p", "-p/q" or "p/q"; denominator must be positive after
// canonicalization (cpp_rational normalizes automatically).
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Exact conversion; every finite double is a binary rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value");
    return Rational(x);
}

}  // namespace flatgerm
