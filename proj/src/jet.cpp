#include "flatgerm/jet.hpp"

#include <stdexcept>

namespace flatgerm {

Jet::Jet(int order, LogScaled c0) : c_(static_cast<std::size_t>(order) + 1) { c_[0] = c0; }

Jet Jet::variable(int order, double base) {
    if (order < 0) throw std::domain_error("jet order must be nonnegative");
    Jet j(order, LogScaled::from_double(base));
    if (order >= 1) j.c_[1] = LogScaled::one();
    return j;
}

Jet Jet::constant(int order, const LogScaled& v) { return Jet(order, v); }

LogScaled Jet::derivative(int i) const {
    return coeff(i) * log_scaled_from_factorial(static_cast<unsigned>(i));
}

Jet operator+(const Jet& a, const Jet& b) {
    if (a.order() != b.order()) throw std::invalid_argument("jet order mismatch");
    Jet out = a;
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
    return out;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet Jet::operator-() const {
    Jet out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

Jet Jet::scaled(const LogScaled& v) const {
    Jet out = *this;
    for (auto& c : out.c_) c = c * v;
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (a.order() != b.order()) throw std::invalid_argument("jet order mismatch");
    const int n = a.order();
    Jet out(n, LogScaled::zero());
    for (int i = 0; i <= n; ++i) {
        LogScaled acc = LogScaled::zero();
        for (int k = 0; k <= i; ++k) acc = acc + a.coeff(k) * b.coeff(i - k);
        out.c_[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

Jet Jet::exp() const {
    const int n = order();
    Jet out(n, LogScaled::exp(c_[0]));
    for (int i = 1; i <= n; ++i) {
        LogScaled acc = LogScaled::zero();
        for (int k = 1; k <= i; ++k) {
            acc = acc + LogScaled::from_double(static_cast<double>(k)) * coeff(k) *
                            out.coeff(i - k);
        }
        out.c_[static_cast<std::size_t>(i)] = acc / LogScaled::from_double(static_cast<double>(i));
    }
    return out;
}

Jet Jet::recip() const {
    if (c_[0].is_zero()) throw std::domain_error("jet reciprocal at a zero constant term");
    const int n = order();
    Jet out(n, LogScaled::one() / c_[0]);
    for (int i = 1; i <= n; ++i) {
        LogScaled acc = LogScaled::zero();
        for (int k = 1; k <= i; ++k) acc = acc + coeff(k) * out.coeff(i - k);
        out.c_[static_cast<std::size_t>(i)] = -(acc / c_[0]);
    }
    return out;
}

}  // namespace flatgerm
