#pragma once

#include "flatgerm/log_scaled.hpp"
#include "flatgerm/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flatgerm {

// One term c * t^p * prod_k phi^(m_k)(t). phi_orders is a sorted multiset;
// each entry m contributes one factor phi^(m)(t).
struct PhiMonomial {
    Rational coeff;
    Rational tpow;
    std::vector<int> phi_orders;
};

// Exact linear combination of PhiMonomials, canonical under the key
// (tpow, phi_orders): like terms merged, zero coefficients dropped, terms
// ordered lexicographically. The empty expression is 0.
class PhiExpr {
public:
    using Key = std::pair<Rational, std::vector<int>>;

    PhiExpr() = default;
    static PhiExpr zero() { return PhiExpr(); }
    static PhiExpr constant(const Rational& c);
    // c * t^p * phi^(m1) ... phi^(mk)
    static PhiExpr monomial(const Rational& c, const Rational& tpow, std::vector<int> phi_orders);
    static PhiExpr phi(int order = 0) { return monomial(1, 0, {order}); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, Rational>& terms() const { return terms_; }

    PhiExpr& operator+=(const PhiExpr& other);
    PhiExpr& operator-=(const PhiExpr& other);
    friend PhiExpr operator+(PhiExpr a, const PhiExpr& b) { return a += b; }
    friend PhiExpr operator-(PhiExpr a, const PhiExpr& b) { return a -= b; }
    friend PhiExpr operator*(const PhiExpr& a, const PhiExpr& b);
    PhiExpr operator-() const;

    PhiExpr scaled(const Rational& c) const;
    PhiExpr times_tpow(const Rational& p) const;  // multiply by t^p

    // Exact d/dt: t^p -> p t^{p-1}, phi^(m) -> phi^(m+1) by the product rule.
    PhiExpr ddt() const;
    PhiExpr ddt(int times) const;

    bool operator==(const PhiExpr& other) const { return terms_ == other.terms_; }

    // Evaluates at t > 0 in log-scaled arithmetic. Each monomial's rational
    // part coeff * prod R_m(1/t) is computed exactly before taking logs; only
    // the cross-term sum is inexact.
    LogScaled eval(double t) const;

    // Stable text form, one term per line: "p/q t^{a/b} phi[m1,m2,...]".
    std::string to_text() const;
    static PhiExpr from_text(const std::string& text);

private:
    void add_term(const Rational& c, const Rational& tpow, std::vector<int> orders);
    std::map<Key, Rational> terms_;
};

}  // namespace flatgerm
