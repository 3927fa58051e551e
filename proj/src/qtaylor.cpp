#include "flatgerm/qtaylor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flatgerm {

void QTaylor::set(int i0, int i1, int i2, const Rational& q) {
    if (i0 < 0 || i1 < 0 || i2 < 0) throw std::invalid_argument("QTaylor: negative index");
    const int deg = i0 + i1 + i2;
    if (deg <= 1 && q != 0)
        throw std::invalid_argument("QTaylor: constant/linear part must vanish");
    if (deg > cutoff_) throw std::invalid_argument("QTaylor: index beyond cutoff");
    if (q == 0) {
        coeffs_.erase({i0, i1, i2});
    } else {
        coeffs_[{i0, i1, i2}] = q;
    }
}

QTaylor QTaylor::scaled(const Rational& lambda) const {
    QTaylor out(cutoff_);
    for (const auto& [idx, q] : coeffs_) out.coeffs_[idx] = q * lambda;
    return out;
}

void QTaylor::merge(const QTaylor& other) {
    for (const auto& [idx, q] : other.coeffs_) {
        auto it = coeffs_.find(idx);
        const Rational merged = (it == coeffs_.end() ? Rational(0) : it->second) + q;
        set(idx[0], idx[1], idx[2], merged);
    }
}

double QTaylor::min_analyticity_constant() const {
    double c = 0.0;
    for (const auto& [idx, q] : coeffs_) {
        const int deg = idx[0] + idx[1] + idx[2];
        c = std::max(c, std::exp(log_abs(q) / deg));
    }
    return c;
}

QTaylor QTaylor::from_text(const std::string& text, int cutoff) {
    QTaylor out(cutoff);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int i0, i1, i2;
        std::string q;
        if (!(ls >> i0)) continue;  // blank line
        if (!(ls >> i1 >> i2 >> q)) throw std::invalid_argument("QTaylor: malformed line: " + line);
        out.set(i0, i1, i2, parse_rational(q));
    }
    return out;
}

std::string QTaylor::to_text() const {
    std::ostringstream out;
    for (const auto& [idx, q] : coeffs_)
        out << idx[0] << " " << idx[1] << " " << idx[2] << " " << to_string(q) << "\n";
    return out.str();
}

QTaylor QTaylor::u_squared() {
    QTaylor q(2);
    q.set(2, 0, 0, 1);
    return q;
}

}  // namespace flatgerm
