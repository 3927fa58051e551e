#include "flatgerm/phi_expr.hpp"

#include "flatgerm/rpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flatgerm {

PhiExpr PhiExpr::constant(const Rational& c) { return monomial(c, 0, {}); }

PhiExpr PhiExpr::monomial(const Rational& c, const Rational& tpow, std::vector<int> phi_orders) {
    PhiExpr e;
    if (c != 0) {
        std::sort(phi_orders.begin(), phi_orders.end());
        e.terms_.emplace(Key{tpow, std::move(phi_orders)}, c);
    }
    return e;
}

void PhiExpr::add_term(const Rational& c, const Rational& tpow, std::vector<int> orders) {
    if (c == 0) return;
    std::sort(orders.begin(), orders.end());
    Key key{tpow, std::move(orders)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

PhiExpr& PhiExpr::operator+=(const PhiExpr& other) {
    for (const auto& [key, c] : other.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

PhiExpr& PhiExpr::operator-=(const PhiExpr& other) {
    for (const auto& [key, c] : other.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

PhiExpr operator*(const PhiExpr& a, const PhiExpr& b) {
    PhiExpr out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            std::vector<int> orders;
            orders.reserve(ka.second.size() + kb.second.size());
            std::merge(ka.second.begin(), ka.second.end(), kb.second.begin(), kb.second.end(),
                       std::back_inserter(orders));
            out.add_term(ca * cb, ka.first + kb.first, std::move(orders));
        }
    }
    return out;
}

PhiExpr PhiExpr::operator-() const {
    PhiExpr out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
    return out;
}

PhiExpr PhiExpr::scaled(const Rational& c) const {
    PhiExpr out;
    if (c == 0) return out;
    for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * c);
    return out;
}

PhiExpr PhiExpr::times_tpow(const Rational& p) const {
    PhiExpr out;
    for (const auto& [key, v] : terms_) out.terms_.emplace(Key{key.first + p, key.second}, v);
    return out;
}

PhiExpr PhiExpr::ddt() const {
    PhiExpr out;
    for (const auto& [key, c] : terms_) {
        const auto& [tpow, orders] = key;
        if (tpow != 0) out.add_term(c * tpow, tpow - 1, orders);
        for (std::size_t k = 0; k < orders.size(); ++k) {
            std::vector<int> bumped = orders;
            bumped[k] += 1;
            out.add_term(c, tpow, std::move(bumped));
        }
    }
    return out;
}

PhiExpr PhiExpr::ddt(int times) const {
    PhiExpr out = *this;
    for (int i = 0; i < times; ++i) out = out.ddt();
    return out;
}

LogScaled PhiExpr::eval(double t) const {
    if (t <= 0.0) throw std::domain_error("PhiExpr::eval requires t > 0");
    const Rational tr = rational_from_double(t);
    const Rational s = Rational(1) / tr;
    const double inv_t2 = static_cast<double>(s * s);
    const double ln_t = std::log(t);
    LogScaled total = LogScaled::zero();
    for (const auto& [key, c] : terms_) {
        const auto& [tpow, orders] = key;
        Rational ratpart = c;
        for (int m : orders) ratpart *= phi_derivative_poly(m).eval(s);
        if (ratpart == 0) continue;
        const double lm = log_abs(ratpart) + static_cast<double>(tpow) * ln_t -
                          static_cast<double>(orders.size()) * inv_t2;
        total = total + LogScaled::from_log(sign_of(ratpart), lm);
    }
    return total;
}

std::string PhiExpr::to_text() const {
    std::ostringstream out;
    if (terms_.empty()) {
        out << "0\n";
        return out.str();
    }
    for (const auto& [key, c] : terms_) {
        out << to_string(c) << " t^{" << to_string(key.first) << "} phi[";
        for (std::size_t i = 0; i < key.second.size(); ++i) {
            if (i) out << ",";
            out << key.second[i];
        }
        out << "]\n";
    }
    return out.str();
}

PhiExpr PhiExpr::from_text(const std::string& text) {
    PhiExpr out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "0") return PhiExpr::zero();
        std::istringstream ls(line);
        std::string coef_tok, tpow_tok, phi_tok;
        ls >> coef_tok >> tpow_tok >> phi_tok;
        if (tpow_tok.substr(0, 3) != "t^{" || tpow_tok.back() != '}' ||
            phi_tok.substr(0, 4) != "phi[" || phi_tok.back() != ']') {
            throw std::invalid_argument("malformed PhiExpr line: '" + line + "'");
        }
        const Rational c = parse_rational(coef_tok);
        const Rational tpow = parse_rational(tpow_tok.substr(3, tpow_tok.size() - 4));
        std::vector<int> orders;
        std::string body = phi_tok.substr(4, phi_tok.size() - 5);
        std::istringstream bs(body);
        std::string item;
        while (std::getline(bs, item, ',')) {
            if (!item.empty()) orders.push_back(std::stoi(item));
        }
        out.add_term(c, tpow, std::move(orders));
    }
    return out;
}

}  // namespace flatgerm
