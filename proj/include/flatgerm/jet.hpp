#pragma once

#include "flatgerm/log_scaled.hpp"

#include <vector>

namespace flatgerm {

// Truncated Taylor expansion at a base point, coefficients in log-scaled
// arithmetic so flat germs like f_3 = e^{-e^{e^{1/t^2}}} stay representable.
// coeff(i) is the i-th Taylor coefficient; derivative(i) = i! coeff(i).
class Jet {
public:
    Jet() = default;
    Jet(int order, LogScaled c0);
    explicit Jet(std::vector<LogScaled> coeffs) : c_(std::move(coeffs)) {}

    static Jet variable(int order, double base);      // jet of t at base
    static Jet constant(int order, const LogScaled& v);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const LogScaled& coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }
    LogScaled derivative(int i) const;  // i! * coeff(i)

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);  // truncated Cauchy product
    Jet operator-() const;
    Jet scaled(const LogScaled& v) const;

    // exp(f): g0 = e^{f0}, n g_n = sum_{k=1..n} k f_k g_{n-k}
    Jet exp() const;
    // 1/f: requires c0 != 0, throws std::domain_error otherwise
    Jet recip() const;

private:
    std::vector<LogScaled> c_;
};

}  // namespace flatgerm
