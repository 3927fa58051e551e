#include "flatgerm/rmcf.hpp"

#include <cmath>
#include <stdexcept>

namespace flatgerm {
namespace rmcf {

QTaylor q_taylor_plane(int cutoff) {
    if (cutoff < 3) throw std::invalid_argument("q_taylor_plane: cutoff must be >= 3");
    QTaylor q(cutoff);
    for (int m = 0; 2 * m + 3 <= cutoff; ++m) q.set(0, 2 * m + 2, 1, Rational(m % 2 ? 1 : -1));
    return q;
}

QTaylor q_taylor_cylinder_quadratic(const Rational& Cq, int cutoff,
                                    const std::optional<std::string>& q_tilde_text) {
    if (!(Cq > 0)) throw std::invalid_argument("q_taylor_cylinder_quadratic: Cq must be positive");
    QTaylor q(cutoff);
    q.set(2, 0, 0, -Cq);
    if (q_tilde_text) {
        const QTaylor tail = QTaylor::from_text(*q_tilde_text, cutoff);  // validates structure
        q.merge(tail);
    }
    return q;
}

ExponentProfile exponent_profile_rmcf() {
    ExponentProfile p;
    p.theta0 = Rational(-1, 2);
    p.theta1 = Rational(-1, 2);
    p.theta2 = 0;
    p.theta3 = Rational(1, 2);
    return p;
}

std::vector<SamplePoint> rescale(const std::vector<SamplePoint>& samples, RescaleDirection dir) {
    std::vector<SamplePoint> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        SamplePoint r;
        if (dir == RescaleDirection::mcf_to_rmcf) {
            if (s.time >= 0) throw std::domain_error("rescale: MCF side requires t < 0");
            const double root = std::sqrt(-s.time);
            r.coord = s.coord / root;
            r.time = -std::log(-s.time);
            r.value = s.value / root;
        } else {
            const double mt = std::exp(-s.time);  // -t
            r.coord = s.coord * std::sqrt(mt);
            r.time = -mt;
            r.value = s.value * std::sqrt(mt);
        }
        out.push_back(r);
    }
    return out;
}

NestedExp NestedExp::inv_flat_germ(int N, double t) {
    if (t <= 0) throw std::domain_error("inv_flat_germ: t > 0 required");
    // 1/f_0 = 1/t^2 and 1/f_{k+1} = e^{1/f_k}, so the representation is
    // literally (N, 1/t^2).
    return NestedExp{N, 1.0 / (t * t)};
}

bool nested_less(NestedExp a, NestedExp b) {
    // raise the shallower side: e^{od}(x) = e^{od+1}(ln x) for x > 0
    while (a.depth < b.depth) {
        if (a.top <= 0) return true;  // nonpositive top < any iterated exponential
        a.top = std::log(a.top);
        ++a.depth;
    }
    while (b.depth < a.depth) {
        if (b.top <= 0) return false;
        b.top = std::log(b.top);
        ++b.depth;
    }
    return a.top < b.top;
}

LogScaled iterated_exp_eval(int N, double x, int N_max) {
    if (N < 0) throw std::invalid_argument("iterated_exp_eval: N >= 0");
    if (N > N_max) throw std::domain_error("iterated_exp_eval: refused, max N = " + std::to_string(N_max));
    if (N == 0) return LogScaled::from_double(x);
    double lm = x;  // ln of e^{oN}(x) is e^{o(N-1)}(x)
    for (int k = 1; k < N; ++k) {
        lm = std::exp(lm);
        if (!std::isfinite(lm))
            throw std::domain_error("iterated_exp_eval: nested representation overflow, max N = " +
                                    std::to_string(k));
    }
    return LogScaled::from_log(1, lm);
}

bool domain_member(int N, double x, double t) {
    if (t <= 0) return false;
    const NestedExp lhs{0, std::fabs(x)};
    const NestedExp rhs = NestedExp::inv_flat_germ(N, t);
    return !nested_less(rhs, lhs);  // |x| <= e^{oN}(1/t^2)
}

DecayCertificate decay_certificate(const std::function<LogScaled(double)>& u_abs, int N,
                                   const std::vector<double>& tau_grid, double log_threshold) {
    if (tau_grid.empty()) throw std::invalid_argument("decay_certificate: empty grid");
    DecayCertificate cert;
    for (double tau : tau_grid) {
        const LogScaled u = u_abs(tau);
        const LogScaled scale = iterated_exp_eval(N, tau);
        const double lp = u.is_zero() ? -std::numeric_limits<double>::infinity()
                                      : u.logmag + scale.logmag;
        if (!cert.log_products.empty() && lp > cert.log_products.back()) cert.decreasing = false;
        cert.log_products.push_back(lp);
    }
    cert.below_threshold = cert.log_products.back() <= log_threshold;
    cert.pass = cert.decreasing && cert.below_threshold;
    return cert;
}

}  // namespace rmcf
}  // namespace flatgerm
