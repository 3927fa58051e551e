#include "flatgerm/expansion.hpp"

#include "flatgerm/combinat.hpp"
#include "flatgerm/rpoly.hpp"
#include "flatgerm/tikhonov.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flatgerm {

namespace {

// Truncated double series in (x, s) with PhiExpr coefficients.
struct Series {
    int I, S;
    std::vector<std::vector<PhiExpr>> c;  // c[i][j]
    Series(int I_, int S_) : I(I_), S(S_), c(static_cast<std::size_t>(I_) + 1) {
        for (auto& row : c) row.assign(static_cast<std::size_t>(S_) + 1, PhiExpr::zero());
    }
};

Series series_mul(const Series& a, const Series& b) {
    Series out(a.I, a.S);
    for (int i1 = 0; i1 <= a.I; ++i1)
        for (int j1 = 0; j1 <= a.S; ++j1) {
            const PhiExpr& pa = a.c[i1][j1];
            if (pa.is_zero()) continue;
            for (int i2 = 0; i1 + i2 <= a.I; ++i2)
                for (int j2 = 0; j1 + j2 <= a.S; ++j2) {
                    const PhiExpr& pb = b.c[i2][j2];
                    if (pb.is_zero()) continue;
                    out.c[i1 + i2][j1 + j2] += pa * pb;
                }
        }
    return out;
}

Series series_one(int I, int S) {
    Series s(I, S);
    s.c[0][0] = PhiExpr::constant(1);
    return s;
}

// Composition F = t^{theta0} Q(t^{theta1} u, t^{theta2} u_x, t^{theta3} u_xx)
// truncated at x^I, s^scap, from table rows j <= row_cap.
Series compose_q(const QTaylor& q, const ExponentProfile& theta,
                 const std::vector<std::vector<PhiExpr>>& v, int I, int scap, int row_cap) {
    Series u(I, scap), ux(I, scap), uxx(I, scap);
    const int table_I = static_cast<int>(v.size()) - 1;
    for (int i = 0; i <= I; ++i)
        for (int j = 0; j <= std::min(scap, row_cap); ++j) {
            if (i <= table_I) u.c[i][j] = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i + 1 <= table_I)
                ux.c[i][j] =
                    v[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)].scaled(i + 1);
            if (i + 2 <= table_I)
                uxx.c[i][j] = v[static_cast<std::size_t>(i) + 2][static_cast<std::size_t>(j)].scaled(
                    Rational((i + 2) * (i + 1)));
        }

    // cached powers of each slot
    std::vector<Series> upow{series_one(I, scap)}, uxpow{series_one(I, scap)},
        uxxpow{series_one(I, scap)};
    const auto power = [&](std::vector<Series>& cache, const Series& base, int e) -> const Series& {
        while (static_cast<int>(cache.size()) <= e) cache.push_back(series_mul(cache.back(), base));
        return cache[static_cast<std::size_t>(e)];
    };

    Series out(I, scap);
    for (const auto& [idx, coef] : q.coeffs()) {
        const auto [a, b, c0] = idx;
        Series term = series_mul(series_mul(power(upow, u, a), power(uxpow, ux, b)),
                                 power(uxxpow, uxx, c0));
        const Rational tp = theta.slot_power(a, b, c0);
        for (int i = 0; i <= I; ++i)
            for (int j = 0; j <= scap; ++j) {
                if (term.c[i][j].is_zero()) continue;
                out.c[i][j] += term.c[i][j].scaled(coef).times_tpow(tp);
            }
    }
    return out;
}

}  // namespace

CoeffTable::CoeffTable(QTaylor q, ExponentProfile theta, int I, int J, int sigma)
    : q_(std::move(q)), theta_(std::move(theta)), I_(I), J_(J), sigma_(sigma) {
    if (I < 0 || J < 0) throw std::invalid_argument("CoeffTable: negative truncation order");
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("CoeffTable: sigma must be +-1");
    v_.assign(static_cast<std::size_t>(I) + 1,
              std::vector<PhiExpr>(static_cast<std::size_t>(J) + 1, PhiExpr::zero()));
    build();
}

void CoeffTable::build() {
    for (int i = 0; 2 * i <= I_; ++i) {
        Rational c = Rational(1, factorial(2 * static_cast<unsigned>(i)));
        if (sigma_ < 0 && (i % 2)) c = -c;
        v_[static_cast<std::size_t>(2 * i)][0] = PhiExpr::monomial(c, 0, {i});
        build_order_.emplace_back(2 * i, 0);
    }
    for (int j = 1; j <= J_; ++j) {
        const Series f = compose_q(q_, theta_, v_, I_, j - 1, j - 1);
        build_order_.emplace_back(0, j);
        if (I_ >= 1) build_order_.emplace_back(1, j);
        for (int i = 0; i + 2 <= I_; ++i) {
            // d_t V^{i,j} - sigma (i+1)(i+2) V^{i+2,j} = RHS^{i,j}
            PhiExpr rhs = f.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
            PhiExpr next = (v_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].ddt() - rhs)
                               .scaled(Rational(sigma_, (i + 1) * (i + 2)));
            v_[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(j)] = std::move(next);
            build_order_.emplace_back(i + 2, j);
        }
    }
}

const PhiExpr& CoeffTable::entry(int i, int j) const {
    if (i < 0 || i > I_ || j < 0 || j > J_) throw std::out_of_range("CoeffTable::entry");
    return v_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

std::string CoeffTable::export_text() const {
    std::ostringstream out;
    for (int i = 0; i <= I_; ++i)
        for (int j = 0; j <= J_; ++j) {
            out << "V[" << i << "," << j << "]:\n";
            out << entry(i, j).to_text();
        }
    return out.str();
}

EvalResult eval_us(const CoeffTable& tab, double x, double t, double s,
                   const std::optional<EvalDomain>& domain) {
    EvalResult out;
    if (domain) out.certified = domain->contains(x, t);
    if (t <= 0.0) {
        out.value = LogScaled::zero();
        return out;
    }
    const LogScaled xl = LogScaled::from_double(x);
    const LogScaled sl = LogScaled::from_double(s);
    LogScaled total = LogScaled::zero();
    for (int j = 0; j <= tab.J(); ++j) {
        if (sl.is_zero() && j > 0) break;
        for (int i = 0; i <= tab.I(); ++i) {
            const PhiExpr& e = tab.entry(i, j);
            if (e.is_zero()) continue;
            if (xl.is_zero() && i > 0) continue;
            total = total + e.eval(t) * xl.pow_int(i) * sl.pow_int(j);
        }
    }
    out.value = total;
    return out;
}

std::vector<ResidualEntry> pde_residual_exact(const CoeffTable& tab) {
    const int I = tab.I(), J = tab.J();
    std::vector<std::vector<PhiExpr>> v(static_cast<std::size_t>(I) + 1);
    for (int i = 0; i <= I; ++i) {
        v[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(J) + 1);
        for (int j = 0; j <= J; ++j) v[static_cast<std::size_t>(i)].push_back(tab.entry(i, j));
    }
    const Series f = J >= 1 ? compose_q(tab.q(), tab.theta(), v, I, J - 1, J)
                            : Series(I, 0);
    std::vector<ResidualEntry> nonzero;
    for (int i = 0; i <= I; ++i)
        for (int j = 0; j <= J; ++j) {
            PhiExpr r = tab.entry(i, j).ddt();
            if (i + 2 <= I)
                r -= tab.entry(i + 2, j).scaled(Rational(tab.sigma() * (i + 1) * (i + 2)));
            if (j >= 1)
                r -= f.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
            if (!r.is_zero()) nonzero.push_back({i, j, std::move(r)});
        }
    return nonzero;
}

NumericResidual pde_residual_numeric(const CoeffTable& tab, double x, double t, double s, double h,
                                     const std::optional<EvalDomain>& domain) {
    NumericResidual out;
    if (domain) out.certified = domain->contains(x, t);
    if (h < 1e-8) out.step_warning = true;  // float cancellation territory for these magnitudes
    const auto f = [&](double xx, double tt) { return eval_us(tab, xx, tt, s).value.to_double(); };
    const double u = f(x, t);
    const double ut = (f(x, t + h) - f(x, t - h)) / (2 * h);
    const double ux = (f(x + h, t) - f(x - h, t)) / (2 * h);
    const double uxx = (f(x + h, t) - 2 * u + f(x - h, t)) / (h * h);

    double qval = 0.0;
    for (const auto& [idx, coef] : tab.q().coeffs()) {
        const auto [a, b, c0] = idx;
        const double tp = static_cast<double>(tab.theta().slot_power(a, b, c0));
        qval += static_cast<double>(coef) * std::pow(t, tp) * std::pow(u, a) * std::pow(ux, b) *
                std::pow(uxx, c0);
    }
    out.value = ut - tab.sigma() * uxx - s * qval;
    return out;
}

bool vanishing_structure_check(const CoeffTable& tab, VanishingScope scope) {
    for (int j = 1; j <= tab.J(); ++j) {
        if (!tab.entry(0, j).is_zero()) return false;
        if (tab.I() >= 1 && !tab.entry(1, j).is_zero()) return false;
    }
    if (scope == VanishingScope::base_rows_only) return true;
    for (int i = 0; i <= tab.I(); ++i)
        for (int j = 0; j <= tab.J(); ++j) {
            if (i % 2 == 1 && !tab.entry(i, j).is_zero()) return false;
            if (i < 2 * j && !tab.entry(i, j).is_zero()) return false;
        }
    return true;
}

namespace {

void require_u_squared(const CoeffTable& tab) {
    const auto& coeffs = tab.q().coeffs();
    if (coeffs.size() != 1 || coeffs.begin()->first != QTaylor::Index{2, 0, 0})
        throw std::invalid_argument("quadratic-case certificate needs Q = u^2");
}

// |phi^(a)(t)| / (2a)! summed over compositions, with multiplicity a+1 per part
LogScaled quad_majorant(int j, int budget, double t) {
    // sum over compositions (a_0..a_j) of `budget` into j+1 nonnegative parts
    // of prod (a_k + 1) |phi^(a_k)(t)| / (2 a_k)!
    std::vector<LogScaled> part(static_cast<std::size_t>(budget) + 1);
    for (int a = 0; a <= budget; ++a)
        part[static_cast<std::size_t>(a)] =
            LogScaled::from_double(a + 1) * phi_eval(a, t).abs() /
            log_scaled_from_factorial(2 * static_cast<unsigned>(a));
    std::vector<LogScaled> conv(static_cast<std::size_t>(budget) + 1, LogScaled::zero());
    conv[0] = LogScaled::one();
    for (int factor = 0; factor <= j; ++factor) {
        std::vector<LogScaled> next(static_cast<std::size_t>(budget) + 1, LogScaled::zero());
        for (int b = 0; b <= budget; ++b) {
            if (conv[static_cast<std::size_t>(b)].is_zero()) continue;
            for (int a = 0; a + b <= budget; ++a)
                next[static_cast<std::size_t>(a + b)] =
                    next[static_cast<std::size_t>(a + b)] +
                    conv[static_cast<std::size_t>(b)] * part[static_cast<std::size_t>(a)];
        }
        conv = std::move(next);
    }
    return conv[static_cast<std::size_t>(budget)];
}

double lfact_clamped(int n) {
    // ln n! with negative arguments clamped to 0! = 1
    return n <= 0 ? 0.0 : std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

BoundCertificate catalan_bound_check_quadratic(const CoeffTable& tab, int i_half, int j, int m,
                                               const std::vector<double>& t_grid) {
    require_u_squared(tab);
    if (i_half + m > 10 || j > 3) {
        std::ostringstream msg;
        msg << "catalan_bound_check_quadratic: enumeration of ~"
            << binomial(static_cast<unsigned>(i_half + m), static_cast<unsigned>(j)).str()
            << " compositions refused (i+m <= 10, j <= 3)";
        throw std::invalid_argument(msg.str());
    }
    if (2 * i_half > tab.I() || j > tab.J())
        throw std::out_of_range("catalan_bound_check_quadratic: entry outside table");
    BoundCertificate cert;
    cert.i = 2 * i_half;
    cert.j = j;
    cert.m = m;
    cert.convention = "quadratic";
    const PhiExpr deriv = tab.entry(2 * i_half, j).ddt(m);
    const double lnorm = std::lgamma(2.0 * i_half + 1.0) - std::lgamma(2.0 * (i_half + m) + 1.0);
    const int budget = i_half + m - j;
    const LogScaled cat = LogScaled::from_rational(Rational(combinat::catalan(j)));
    for (double t : t_grid) {
        BoundRow row;
        row.param1 = j;
        row.param2 = t;
        const LogScaled lhs = deriv.eval(t);
        row.value_logmag =
            lhs.is_zero() ? -std::numeric_limits<double>::infinity() : lhs.logmag + lnorm;
        if (budget < 0) {
            // vanishing entry (i < 2j region): majorant is the empty sum
            row.log_bound = -std::numeric_limits<double>::infinity();
            row.log_ratio = row.value_logmag == row.log_bound
                                ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
        } else {
            const LogScaled rhs = cat * quad_majorant(j, budget, t);
            row.log_bound = rhs.logmag;
            row.log_ratio = row.value_logmag - row.log_bound;
        }
        cert.report.rows.push_back(row);
    }
    cert.report.finalize();
    return cert;
}

BoundCertificate catalan_bound_check_general(const CoeffTable& tab, int i, int j, int n,
                                             const std::vector<double>& t_grid, double C,
                                             int L_extra) {
    if (i + n > 10 || j > 3)
        throw std::invalid_argument("catalan_bound_check_general: desk-scale window is i+n <= 10, j <= 3");
    if (i > tab.I() || j > tab.J() || j < 1)
        throw std::out_of_range("catalan_bound_check_general: entry outside table");
    // the paper's majorant assumes Theta = -(theta0 + theta1 i0 + ...) > 0
    Rational theta_bound = 0;
    for (const auto& [idx, coef] : tab.q().coeffs()) {
        const Rational Theta = -tab.theta().slot_power(idx[0], idx[1], idx[2]);
        if (!(Theta > 0))
            throw std::invalid_argument(
                "catalan_bound_check_general: requires Theta > 0 for every Q index");
        const Rational per_degree = Theta / (idx[0] + idx[1] + idx[2]);
        if (per_degree > theta_bound) theta_bound = per_degree;
    }
    const double theta_d = static_cast<double>(theta_bound);

    BoundCertificate cert;
    cert.i = i;
    cert.j = j;
    cert.m = n;
    cert.convention = "general";
    const PhiExpr deriv = tab.entry(i, j).ddt(n);
    const double lnorm = std::lgamma(static_cast<double>(i) + 1.0) - lfact_clamped(i + 2 * n - 2);
    const double logC = std::log(C);

    for (double t : t_grid) {
        const double logt = std::log(t);
        // per-budget weight of one s_n slot: s! C^s / ((2s)! t^s) at budget 2s
        const int S_max = i + 2 * n;  // generous cap; actual budgets are smaller
        std::vector<LogScaled> slot_s(static_cast<std::size_t>(S_max) + 1, LogScaled::zero());
        for (int s = 0; 2 * s <= S_max; ++s) {
            const double lm = std::lgamma(s + 1.0) + s * (logC - logt) - std::lgamma(2.0 * s + 1.0);
            slot_s[static_cast<std::size_t>(2 * s)] = LogScaled::from_log(1, lm);
        }
        // per-budget weight of one type-m base block: sum_{i'+2s'=b} W^{i'+m,0}_{s'}
        std::vector<std::vector<LogScaled>> slot_w(3);
        for (int m2 = 0; m2 <= 2; ++m2) {
            slot_w[static_cast<std::size_t>(m2)].assign(static_cast<std::size_t>(S_max) + 1,
                                                        LogScaled::zero());
            for (int b = 0; b <= S_max; ++b) {
                LogScaled acc = LogScaled::zero();
                for (int ip = 0; ip <= b; ++ip) {
                    if ((b - ip) % 2) continue;
                    const int sp = (b - ip) / 2;
                    const int p = ip + m2;  // base-row index of the W factor
                    if (p % 2) continue;    // odd base entries vanish
                    const int a = p / 2;    // phi-derivative order offset
                    // W^{p,0}_{s'} = |phi^(a+s')(t)| / (p + 2s' - 2)!  (clamped)
                    const LogScaled w =
                        phi_eval(a + sp, t).abs() /
                        LogScaled::from_log(1, lfact_clamped(p + 2 * sp - 2));
                    acc = acc + w;
                }
                slot_w[static_cast<std::size_t>(m2)][static_cast<std::size_t>(b)] = acc;
            }
        }
        const auto convolve = [&](std::vector<LogScaled> acc, const std::vector<LogScaled>& slot,
                                  int times) {
            for (int rep = 0; rep < times; ++rep) {
                std::vector<LogScaled> next(acc.size(), LogScaled::zero());
                for (std::size_t b = 0; b < acc.size(); ++b) {
                    if (acc[b].is_zero()) continue;
                    for (std::size_t a = 0; a + b < next.size(); ++a)
                        next[a + b] = next[a + b] + acc[b] * slot[a];
                }
                acc = std::move(next);
            }
            return acc;
        };

        LogScaled rhs = LogScaled::zero();
        for (int L = 2 * j; L <= 2 * j + L_extra; ++L) {
            const LogScaled lfac = LogScaled::from_log(1, theta_d * L * (logC - logt));
            for (int L0 = 0; L0 <= L; ++L0)
                for (int L1 = 0; L0 + L1 <= L; ++L1) {
                    const int L2 = L - L0 - L1;
                    for (int J0 = 0; J0 <= j - 1; ++J0)
                        for (int J1 = 0; J0 + J1 <= j - 1; ++J1) {
                            const int J2 = j - 1 - J0 - J1;
                            if (L0 < J0 || L1 < J1 || L2 < J2) continue;
                            const int budget = i + 2 * n - 2 - 2 * J0 - J1;
                            if (budget < 0) continue;
                            // T = Cat(L+1) Cat(J) L!/(L0!L1!L2!) (J-1)!/(J0!J1!J2!)
                            Rational T = Rational(combinat::catalan(L + 1)) *
                                         Rational(combinat::catalan(j));
                            T *= Rational(factorial(static_cast<unsigned>(L)),
                                          factorial(static_cast<unsigned>(L0)) *
                                              factorial(static_cast<unsigned>(L1)) *
                                              factorial(static_cast<unsigned>(L2)));
                            T *= Rational(factorial(static_cast<unsigned>(j - 1)),
                                          factorial(static_cast<unsigned>(J0)) *
                                              factorial(static_cast<unsigned>(J1)) *
                                              factorial(static_cast<unsigned>(J2)));
                            std::vector<LogScaled> acc(static_cast<std::size_t>(budget) + 1,
                                                       LogScaled::zero());
                            acc[0] = LogScaled::one();
                            acc = convolve(std::move(acc), slot_s, j);
                            acc = convolve(std::move(acc), slot_w[0], L0 - J0);
                            acc = convolve(std::move(acc), slot_w[1], L1 - J1);
                            acc = convolve(std::move(acc), slot_w[2], L2 - J2);
                            rhs = rhs + LogScaled::from_rational(T) * lfac *
                                            acc[static_cast<std::size_t>(budget)];
                        }
                }
        }
        BoundRow row;
        row.param1 = j;
        row.param2 = t;
        const LogScaled lhs = deriv.eval(t);
        row.value_logmag =
            lhs.is_zero() ? -std::numeric_limits<double>::infinity() : lhs.logmag + lnorm;
        row.log_bound = rhs.is_zero() ? -std::numeric_limits<double>::infinity() : rhs.logmag;
        row.log_ratio = row.value_logmag - row.log_bound;
        if (lhs.is_zero()) row.log_ratio = -std::numeric_limits<double>::infinity();
        cert.report.rows.push_back(row);
    }
    cert.report.finalize();
    return cert;
}

std::vector<BoundCertificate> catalan_bound_sweep(const CoeffTable& tab,
                                                  const std::vector<double>& t_grid, int m_max) {
    std::vector<BoundCertificate> out;
    for (int j = 1; j <= std::min(tab.J(), 3); ++j)
        for (int i_half = j; 2 * i_half <= tab.I(); ++i_half)
            for (int m = 0; m <= m_max; ++m) {
                if (i_half + m > 10) continue;
                out.push_back(catalan_bound_check_quadratic(tab, i_half, j, m, t_grid));
            }
    return out;
}

DomainCertificate domain_certificate(const QTaylor& q, const ExponentProfile& theta,
                                     const Rational& eps, double t_max) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("domain_certificate: eps in (0,1)");
    DomainCertificate out;
    const double eps_d = static_cast<double>(eps);

    std::vector<double> t_grid;
    for (int k = 5; k <= 100; ++k) t_grid.push_back(k * 0.01);
    out.C_eps = phi_bound_check(20, eps, t_grid).max_ratio;

    double c_prod = 0.0;
    for (int k = 1; k <= 6; ++k)
        for (int i = k; i <= 20; ++i)
            for (int v2 = 0; v2 <= 2; ++v2)
                c_prod = std::max(c_prod, combinat::prod_estimate_min_constant(i, k, v2));
    const double C = std::max({q.min_analyticity_constant(), c_prod, 1.0});
    out.C_growth = C;

    const bool quadratic = (q.coeffs().size() == 1 &&
                            q.coeffs().begin()->first == QTaylor::Index{2, 0, 0} &&
                            theta.theta0 == 0 && theta.theta1 == 0 && theta.theta2 == 0 &&
                            theta.theta3 == 0);
    bool all_theta_positive = !q.coeffs().empty();
    Rational theta_bound = 0;
    for (const auto& [idx, coef] : q.coeffs()) {
        const Rational Theta = -theta.slot_power(idx[0], idx[1], idx[2]);
        if (!(Theta > 0)) all_theta_positive = false;
        else {
            const Rational pd = Theta / (idx[0] + idx[1] + idx[2]);
            if (pd > theta_bound) theta_bound = pd;
        }
    }
    const double theta_d = all_theta_positive ? static_cast<double>(theta_bound) : 0.0;

    const auto log_ratio = [&](double x2, double t) {
        const double expo = -eps_d / (t * t) + C * x2 / (eps_d * t);
        if (quadratic) return 2 * std::log(out.C_eps) + std::log(x2) + expo;
        const double x2t = std::max(x2, 1.0);
        double lr = std::log(std::max({C, out.C_eps * out.C_eps, 1.0})) +
                    (-eps_d / (t * t) + C * x2t / (eps_d * t));
        if (theta_d > 0) lr += theta_d * (std::log(C) - std::log(t));
        return lr;
    };
    const auto feasible = [&](double c) {
        for (int k = 1; k <= 60; ++k) {
            const double t = t_max * k / 60.0;
            if (log_ratio(c / t, t) >= std::log(0.5)) return false;
        }
        return true;
    };

    double lo = 0.0, hi = 16.0;
    if (!feasible(1e-9)) {
        out.found = false;
        out.note = "no admissible c at this t_max; shrink t_max";
        return out;
    }
    if (feasible(hi)) {
        lo = hi;
    } else {
        while (hi - lo > 1e-6 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
    }
    out.found = lo > 0.0;
    out.domain = EvalDomain{lo, t_max};
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 60; ++k) {
        const double t = t_max * k / 60.0;
        worst = std::max(worst, log_ratio(lo / t, t));
    }
    out.ratio_at_boundary = std::exp(worst);
    return out;
}

ConvergenceReport partial_sum_convergence(const QTaylor& q, const ExponentProfile& theta, int I_max,
                                          int J, const EvalDomain& dom,
                                          const std::vector<std::pair<double, double>>& xt_grid) {
    CoeffTable tab(q, theta, I_max, J);
    ConvergenceReport rep;
    // partial sums S_I at s = 1 for I = 0,2,..,I_max on each grid point
    std::vector<std::vector<double>> sums(xt_grid.size());
    for (std::size_t g = 0; g < xt_grid.size(); ++g) {
        const auto [x, t] = xt_grid[g];
        if (!dom.contains(x, t)) throw std::invalid_argument("partial_sum_convergence: point outside domain");
        LogScaled acc = LogScaled::zero();
        const LogScaled xl = LogScaled::from_double(x);
        for (int i = 0; i <= I_max; ++i) {
            for (int j = 0; j <= J; ++j) {
                const PhiExpr& e = tab.entry(i, j);
                if (e.is_zero()) continue;
                if (xl.is_zero() && i > 0) continue;
                acc = acc + e.eval(t) * xl.pow_int(i);
            }
            if (i % 2 == 0) sums[g].push_back(acc.to_double());
        }
    }
    const int n_incr = I_max / 2;  // increments S_{I+2} vs S_I for I = 0,2,...
    rep.ratios.assign(static_cast<std::size_t>(n_incr), 0.0);
    for (std::size_t g = 0; g < xt_grid.size(); ++g)
        for (int k = 0; k + 1 < static_cast<int>(sums[g].size()); ++k) {
            const double den = std::fabs(sums[g][static_cast<std::size_t>(k)]);
            const double num = std::fabs(sums[g][static_cast<std::size_t>(k) + 1] -
                                         sums[g][static_cast<std::size_t>(k)]);
            if (den > 0)
                rep.ratios[static_cast<std::size_t>(k)] =
                    std::max(rep.ratios[static_cast<std::size_t>(k)], num / den);
        }
    for (int start = 0; start < n_incr; ++start) {
        bool ok = true;
        for (int k = start; k < n_incr; ++k) {
            const double allowed = std::pow(2.0, -(2.0 * (k - start)));
            if (rep.ratios[static_cast<std::size_t>(k)] > allowed) {
                ok = false;
                break;
            }
        }
        if (ok) {
            rep.I0 = 2 * start;
            rep.pass = true;
            break;
        }
    }
    return rep;
}

}  // namespace flatgerm
