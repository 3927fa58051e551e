#include "flatgerm/rpoly.hpp"

#include <mutex>
#include <stdexcept>

namespace flatgerm {

RPoly::RPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

RPoly RPoly::derivative() const {
    if (coeffs_.size() <= 1) return RPoly(std::vector<Rational>{Rational(0)});
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t p = 1; p < coeffs_.size(); ++p) d[p - 1] = coeffs_[p] * static_cast<int>(p);
    return RPoly(std::move(d));
}

RPoly RPoly::next() const {
    // -s^2 R' + 2 s^3 R
    std::vector<Rational> out(coeffs_.size() + 3, Rational(0));
    for (std::size_t p = 1; p < coeffs_.size(); ++p) out[p + 1] -= coeffs_[p] * static_cast<int>(p);
    for (std::size_t p = 0; p < coeffs_.size(); ++p) out[p + 3] += coeffs_[p] * 2;
    return RPoly(std::move(out));
}

Rational RPoly::eval(const Rational& s) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

const RPoly& phi_derivative_poly(int k) {
    if (k < 0) throw std::domain_error("derivative order must be nonnegative");
    static std::vector<RPoly> cache{RPoly()};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back().next());
    return cache[static_cast<std::size_t>(k)];
}

LogScaled phi_eval(int k, double t) {
    if (t <= 0.0) throw std::domain_error("phi_eval requires t > 0");
    const Rational s = Rational(1) / rational_from_double(t);
    const Rational poly = phi_derivative_poly(k).eval(s);
    if (poly == 0) return LogScaled::zero();
    const double inv_t2 = static_cast<double>(s * s);
    return LogScaled::from_log(sign_of(poly), log_abs(poly) - inv_t2);
}

}  // namespace flatgerm
