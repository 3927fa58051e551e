#include "flatgerm/tikhonov.hpp"

#include "flatgerm/rpoly.hpp"

#include <cmath>
#include <stdexcept>

namespace flatgerm {

LogScaled u0_eval(const TruncatedU0& u, double x, double t) {
    if (t <= 0.0) return LogScaled::zero();
    LogScaled total = LogScaled::zero();
    LogScaled xpow = LogScaled::one();
    const LogScaled x2 = LogScaled::from_double(x) * LogScaled::from_double(x);
    for (int k = 0; k <= u.K; ++k) {
        LogScaled term = phi_eval(k, t) * xpow / log_scaled_from_factorial(2 * static_cast<unsigned>(k));
        if (u.sigma < 0 && (k % 2)) term = -term;
        total = total + term;
        xpow = xpow * x2;
    }
    return total;
}

U0Residual u0_residual(const TruncatedU0& u, double x, double t, double h) {
    if (t <= 0.0) throw std::domain_error("u0_residual requires t > 0");
    U0Residual out;
    LogScaled tail = phi_eval(u.K + 1, t) /
                     log_scaled_from_factorial(2 * static_cast<unsigned>(u.K));
    if (x == 0.0) {
        if (u.K > 0) tail = LogScaled::zero();  // x^{2K} annihilates the tail
    } else {
        tail = tail * LogScaled::from_double(x).pow_int(2L * u.K);
    }
    if (u.sigma < 0 && (u.K % 2)) tail = -tail;
    out.exact_tail = tail;

    const auto f = [&](double xx, double tt) { return u0_eval(u, xx, tt).to_double(); };
    const double ut = (f(x, t + h) - f(x, t - h)) / (2 * h);
    const double uxx = (f(x + h, t) - 2 * f(x, t) + f(x - h, t)) / (h * h);
    out.fd_residual = ut - u.sigma * uxx;
    return out;
}

std::vector<PhiExpr> u0_residual_symbolic(const TruncatedU0& u) {
    // u0 as coefficients of x^{2k}; apply d_t - sigma d_xx exactly.
    const int K = u.K;
    std::vector<PhiExpr> coeff(static_cast<std::size_t>(2 * K + 1));
    for (int k = 0; k <= K; ++k) {
        Rational c = Rational(u.sigma < 0 && (k % 2) ? -1 : 1) /
                     Rational(factorial(2 * static_cast<unsigned>(k)));
        coeff[static_cast<std::size_t>(2 * k)] = PhiExpr::monomial(c, 0, {k});
    }
    std::vector<PhiExpr> res(static_cast<std::size_t>(2 * K + 1));
    for (int p = 0; p <= 2 * K; ++p) {
        PhiExpr r = coeff[static_cast<std::size_t>(p)].ddt();
        if (p + 2 <= 2 * K) {
            r -= coeff[static_cast<std::size_t>(p + 2)]
                     .scaled(Rational((p + 2) * (p + 1)) * u.sigma);
        }
        res[static_cast<std::size_t>(p)] = std::move(r);
    }
    return res;
}

BoundReport phi_bound_check(int k_max, const Rational& eps, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("phi_bound_check: empty grid");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("phi_bound_check: eps must be in (0,1)");
    const double eps_d = static_cast<double>(eps);
    BoundReport rep;
    for (int k = 0; k <= k_max; ++k) {
        const double lfact = std::lgamma(static_cast<double>(k) + 1.0);
        for (double t : t_grid) {
            const LogScaled val = phi_eval(k, t);
            const double log_bound = lfact - k * std::log(eps_d * t) - eps_d / (t * t);
            BoundRow row;
            row.param1 = k;
            row.param2 = t;
            row.value_logmag = val.is_zero() ? -std::numeric_limits<double>::infinity() : val.logmag;
            row.log_bound = log_bound;
            row.log_ratio = row.value_logmag - log_bound;
            rep.rows.push_back(row);
        }
    }
    rep.finalize(std::numeric_limits<double>::infinity());
    // pass means a finite C_eps exists; the max ratio *is* the minimal C_eps
    rep.pass = std::isfinite(rep.max_log_ratio);
    return rep;
}

namespace {

bool decay_grid_ok(double R, int K, int sigma, int nx, int nt, double T) {
    TruncatedU0 u{K, sigma};
    for (int j = 1; j <= nt; ++j) {
        const double t = T * j / nt;
        const double log_bound = -1.0 / (2.0 * t * t);
        for (int i = 0; i < nx; ++i) {
            const double x = -R + 2.0 * R * i / (nx - 1);
            const LogScaled v = u0_eval(u, x, t);
            if (!v.is_zero() && v.logmag >= log_bound) return false;
        }
    }
    return true;
}

}  // namespace

DecayCheckResult u0_decay_check(double R, int K, int sigma, int nx, int nt, double T_hi) {
    if (R < 0) throw std::invalid_argument("u0_decay_check: R must be >= 0");
    DecayCheckResult out;
    double lo = 0.0, hi = T_hi;
    if (decay_grid_ok(R, K, sigma, nx, nt, T_hi)) {
        out.T = T_hi;
        out.pass = true;
        return out;
    }
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (decay_grid_ok(R, K, sigma, nx, nt, mid))
            lo = mid;
        else
            hi = mid;
    }
    out.T = lo;
    out.pass = lo > 0.0;
    return out;
}

Jet jet_of_f0(double base, int order) {
    const Jet t = Jet::variable(order, base);
    return t * t;
}

Jet jet_exp(const Jet& f) { return f.exp(); }
Jet jet_recip(const Jet& f) { return f.recip(); }
Jet jet_neg(const Jet& f) { return -f; }

Jet jet_of_flat_germ(int N, double base, int order) {
    Jet j = jet_of_f0(base, order);
    for (int k = 0; k < N; ++k) j = jet_exp(jet_neg(jet_recip(j)));
    return j;
}

std::vector<double> flat_germ_logs(int N, double t) {
    std::vector<double> logs(static_cast<std::size_t>(N) + 1);
    logs[0] = 2.0 * std::log(t);
    for (int j = 1; j <= N; ++j) logs[static_cast<std::size_t>(j)] = -std::exp(-logs[static_cast<std::size_t>(j - 1)]);
    return logs;
}

double flat_germ_envelope_log(const FlatGermFamily& fam, double t, EnvelopeConvention conv) {
    const double eps = static_cast<double>(fam.epsilon);
    double lg = std::log(2.0 / t);
    if (fam.N >= 1) {
        const int exponent = conv == EnvelopeConvention::stated ? fam.N - 1 : fam.N;
        lg += exponent * std::log(8.0 / eps);
        const auto logs = flat_germ_logs(fam.N - 1, t);
        for (int j = 0; j <= fam.N - 1; ++j) lg -= eps * logs[static_cast<std::size_t>(j)];
    }
    return lg;
}

BoundReport flat_germ_bound_check(const FlatGermFamily& fam, int i_max,
                                  const std::vector<double>& t_grid, EnvelopeConvention conv) {
    const double eps = static_cast<double>(fam.epsilon);
    BoundReport rep;
    for (double t : t_grid) {
        const Jet jet = jet_of_flat_germ(fam.N, t, i_max);
        const double log_fN = flat_germ_logs(fam.N, t).back();
        const double log_g = flat_germ_envelope_log(fam, t, conv);
        for (int i = 1; i <= i_max; ++i) {
            const LogScaled deriv = jet.derivative(i);
            const double lfact = std::lgamma(static_cast<double>(i) + 1.0);
            const double log_bound = lfact + (1.0 - eps) * log_fN + i * log_g;
            BoundRow row;
            row.param1 = i;
            row.param2 = t;
            row.value_logmag =
                deriv.is_zero() ? -std::numeric_limits<double>::infinity() : deriv.logmag;
            row.log_bound = log_bound;
            row.log_ratio = row.value_logmag - log_bound;
            rep.rows.push_back(row);
        }
    }
    rep.finalize();
    return rep;
}

FuncLemmaResult lemma_func_checks(const Jet& f, const Rational& eps, int i_max,
                                  double g_supplied) {
    if (i_max > f.order()) throw std::invalid_argument("lemma_func_checks: jet order too low");
    const double eps_d = static_cast<double>(eps);
    FuncLemmaResult out;

    const LogScaled f0 = f.coeff(0);
    if (f0.is_zero()) {
        out.exp_bound.hypothesis_ok = false;
        out.recip_bound.hypothesis_ok = false;
        out.exp_bound.note = "f vanishes at the base point";
        out.recip_bound.note = out.exp_bound.note;
        return out;
    }
    const double log_absf = f0.logmag;

    // minimal g with |f^(i)| <= i! g^i |f|^{1-eps} for 1 <= i <= i_max
    double g = 0.0;
    for (int i = 1; i <= i_max; ++i) {
        const LogScaled d = f.derivative(i);
        if (d.is_zero()) continue;
        const double lg =
            (d.logmag - std::lgamma(static_cast<double>(i) + 1.0) - (1.0 - eps_d) * log_absf) / i;
        g = std::max(g, std::exp(lg));
    }
    out.measured_g = g;
    if (g_supplied >= 0.0) {
        if (g > g_supplied * (1 + 1e-12)) {
            out.exp_bound.hypothesis_ok = false;
            out.recip_bound.hypothesis_ok = false;
            out.exp_bound.note = "supplied g does not dominate the derivatives";
            out.recip_bound.note = out.exp_bound.note;
            return out;
        }
        g = g_supplied;
    }
    const double log_g = std::log(g);

    // |(e^f)^(i)| <= i! e^{(1-eps) f} (2g/eps)^i, hypothesis side needs f < 0.
    if (f0.sign < 0) {
        const Jet ef = f.exp();
        const double fval = f0.to_double();
        for (int i = 1; i <= i_max; ++i) {
            const LogScaled d = ef.derivative(i);
            BoundRow row;
            row.param1 = i;
            row.param2 = fval;
            row.value_logmag = d.is_zero() ? -std::numeric_limits<double>::infinity() : d.logmag;
            row.log_bound = std::lgamma(static_cast<double>(i) + 1.0) + (1.0 - eps_d) * fval +
                            i * (std::log(2.0 / eps_d) + log_g);
            row.log_ratio = row.value_logmag - row.log_bound;
            out.exp_bound.rows.push_back(row);
        }
        out.exp_bound.finalize();
    } else {
        out.exp_bound.hypothesis_ok = false;
        out.exp_bound.note = "exponential lemma requires f < 0";
    }

    // |(1/f)^(i)| <= i! (4g)^i (1/|f|)^{1+i eps}
    const Jet rf = f.recip();
    for (int i = 1; i <= i_max; ++i) {
        const LogScaled d = rf.derivative(i);
        BoundRow row;
        row.param1 = i;
        row.param2 = f0.to_double();
        row.value_logmag = d.is_zero() ? -std::numeric_limits<double>::infinity() : d.logmag;
        row.log_bound = std::lgamma(static_cast<double>(i) + 1.0) +
                        i * (std::log(4.0) + log_g) - (1.0 + i * eps_d) * log_absf;
        row.log_ratio = row.value_logmag - row.log_bound;
        out.recip_bound.rows.push_back(row);
    }
    out.recip_bound.finalize();
    return out;
}

}  // namespace flatgerm
