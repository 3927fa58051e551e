#pragma once

#include "flatgerm/rational.hpp"

#include <array>
#include <map>
#include <string>

namespace flatgerm {

// Truncated Taylor data of the nonlinearity Q(u, u', u'') at the origin:
// coefficient q_{i0 i1 i2} = Q^{(i0,i1,i2)}(0,0,0) / (i0! i1! i2!).
// Constant and linear parts must vanish (Q(0)=0, grad Q(0)=0); violating
// entries are rejected at construction.
class QTaylor {
public:
    using Index = std::array<int, 3>;

    explicit QTaylor(int cutoff) : cutoff_(cutoff) {}

    void set(int i0, int i1, int i2, const Rational& q);
    const std::map<Index, Rational>& coeffs() const { return coeffs_; }
    int cutoff() const { return cutoff_; }
    bool empty() const { return coeffs_.empty(); }

    QTaylor scaled(const Rational& lambda) const;
    void merge(const QTaylor& other);  // adds entries; same validation

    // minimal C with |q_{abc}| <= C^{a+b+c} over stored entries
    double min_analyticity_constant() const;

    // text lines "i0 i1 i2 p/q"; '#' comments and blank lines skipped
    static QTaylor from_text(const std::string& text, int cutoff);
    std::string to_text() const;

    static QTaylor u_squared();  // q_200 = 1

private:
    int cutoff_;
    std::map<Index, Rational> coeffs_;
};

// t-exponent profile (theta0..theta3) of the perturbed equation
//   du/dt + u'' = s t^{theta0} Q(t^{theta1} u, t^{theta2} u', t^{theta3} u'').
struct ExponentProfile {
    Rational theta0 = 0, theta1 = 0, theta2 = 0, theta3 = 0;

    Rational slot_power(int i0, int i1, int i2) const {
        return theta0 + theta1 * i0 + theta2 * i1 + theta3 * i2;
    }
};

}  // namespace flatgerm
