#pragma once

#include "flatgerm/log_scaled.hpp"
#include "flatgerm/rational.hpp"

#include <vector>

namespace flatgerm {

// Polynomial R_k(s) in s = 1/t with exact rational coefficients, representing
// the k-th derivative of the flat germ: phi^(k)(t) = R_k(1/t) e^{-1/t^2}.
// Recurrence: R_{k+1}(s) = -s^2 R_k'(s) + 2 s^3 R_k(s), R_0 = 1, so
// deg R_k = 3k and the leading coefficient is 2^k.
class RPoly {
public:
    RPoly() : coeffs_{Rational(1)} {}
    explicit RPoly(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int p) const { return coeffs_.at(static_cast<std::size_t>(p)); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    RPoly derivative() const;
    RPoly next() const;  // one application of the recurrence

    Rational eval(const Rational& s) const;  // exact Horner evaluation

private:
    std::vector<Rational> coeffs_;  // coeffs_[p] multiplies s^p
};

// Cached R_k; thread-safe for concurrent reads after the first call that
// reaches order k (callers in tests pre-warm; the CLI is single-threaded at
// the points of first use).
const RPoly& phi_derivative_poly(int k);

// phi^(k)(t) as a log-scaled value; throws std::domain_error for t <= 0.
// The polynomial part is evaluated exactly over the rationals (t converts
// exactly, every double is a binary rational), so no cancellation is lost
// before the final log conversion.
LogScaled phi_eval(int k, double t);

}  // namespace flatgerm
