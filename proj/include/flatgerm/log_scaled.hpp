#pragma once

#include "flatgerm/rational.hpp"

#include <cmath>
#include <limits>

namespace flatgerm {

// Signed number stored as (sign, ln|value|). Suited to quantities like
// e^{-e^{1/t^2}} whose magnitudes leave the double range while their
// logarithms do not. Sums of opposite-sign terms that cancel below 1e-15
// relative keep a `flagged` mark instead of being rounded to an exact zero;
// exact zeros arise only from zero operands.
struct LogScaled {
    int sign = 0;
    double logmag = -std::numeric_limits<double>::infinity();
    bool flagged = false;

    LogScaled() = default;
    LogScaled(int s, double lm, bool fl = false) : sign(s), logmag(lm), flagged(fl) {
        if (sign == 0) logmag = -std::numeric_limits<double>::infinity();
    }

    static LogScaled zero() { return LogScaled(); }
    static LogScaled one() { return LogScaled(1, 0.0); }

    static LogScaled from_double(double x) {
        if (x == 0.0) return zero();
        if (!std::isfinite(x)) throw std::domain_error("non-finite input to LogScaled");
        return LogScaled(x > 0 ? 1 : -1, std::log(std::fabs(x)));
    }

    static LogScaled from_log(int sign, double lnmag, bool fl = false) {
        if (sign == 0) return LogScaled(0, 0.0, fl);
        return LogScaled(sign, lnmag, fl);
    }

    static LogScaled from_rational(const Rational& q) {
        if (q == 0) return zero();
        return LogScaled(sign_of(q), log_abs(q));
    }

    bool is_zero() const { return sign == 0; }

    // Underflows to 0 and overflows to +/-inf by design; callers that need the
    // exact magnitude work in log space.
    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(logmag);
    }

    LogScaled operator-() const { return LogScaled(-sign, logmag, flagged); }

    LogScaled abs() const { return LogScaled(sign == 0 ? 0 : 1, logmag, flagged); }

    friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0 || b.sign == 0) return LogScaled(0, 0.0, a.flagged || b.flagged);
        return LogScaled(a.sign * b.sign, a.logmag + b.logmag, a.flagged || b.flagged);
    }

    friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
        if (b.sign == 0) throw std::domain_error("LogScaled division by zero");
        if (a.sign == 0) return LogScaled(0, 0.0, a.flagged || b.flagged);
        return LogScaled(a.sign * b.sign, a.logmag - b.logmag, a.flagged || b.flagged);
    }

    // Max-shifted log-sum-exp with sign bookkeeping.
    friend LogScaled operator+(const LogScaled& a, const LogScaled& b) {
        const bool fl = a.flagged || b.flagged;
        if (a.sign == 0) { LogScaled r = b; r.flagged = fl; return r; }
        if (b.sign == 0) { LogScaled r = a; r.flagged = fl; return r; }
        const LogScaled& hi = (a.logmag >= b.logmag) ? a : b;
        const LogScaled& lo = (a.logmag >= b.logmag) ? b : a;
        const double d = std::exp(lo.logmag - hi.logmag);  // in [0,1]
        if (a.sign == b.sign) {
            return LogScaled(a.sign, hi.logmag + std::log1p(d), fl);
        }
        if (d == 1.0) {
            // numeric annihilation, not a symbolic zero
            return LogScaled(0, 0.0, true);
        }
        const double rel = 1.0 - d;
        return LogScaled(hi.sign, hi.logmag + std::log1p(-d), fl || rel < 1e-15);
    }

    friend LogScaled operator-(const LogScaled& a, const LogScaled& b) { return a + (-b); }

    LogScaled pow(double e) const {
        if (sign == 0) {
            if (e <= 0) throw std::domain_error("0 to nonpositive power");
            return zero();
        }
        if (sign < 0) throw std::domain_error("real power of negative LogScaled");
        return LogScaled(1, logmag * e, flagged);
    }

    LogScaled pow_int(long e) const {
        if (sign == 0) {
            if (e < 0) throw std::domain_error("0 to negative power");
            return e == 0 ? one() : zero();
        }
        const int s = (e % 2 == 0) ? 1 : sign;
        return LogScaled(s, logmag * static_cast<double>(e), flagged);
    }

    // e^x for a LogScaled exponent x; the result's logmag is the value of x.
    static LogScaled exp(const LogScaled& x) {
        if (x.sign == 0) return one();
        const double v = x.to_double();  // may be +/-inf for extreme magnitudes
        return LogScaled(1, v, x.flagged);
    }

    // |a| < |b|
    static bool mag_less(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0) return b.sign != 0;
        if (b.sign == 0) return false;
        return a.logmag < b.logmag;
    }
};

inline LogScaled log_scaled_from_factorial(unsigned n) {
    return LogScaled(1, std::lgamma(static_cast<double>(n) + 1.0));
}

}  // namespace flatgerm
