#include "flatgerm/spectral.hpp"

#include "flatgerm/report.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flatgerm {
namespace spectral {

Rational eigenvalue_general(int i, int j, int n, int k) {
    if (i < 0 || j < 0) throw std::invalid_argument("eigenvalue: indices must be nonnegative");
    if (n - k < 1) throw std::invalid_argument("eigenvalue: need n - k >= 1");
    return Rational(1) - Rational(j, 2) -
           Rational(static_cast<long>(i) * (i - 1 + n - k), 2 * static_cast<long>(n - k));
}

Rational eigenvalue(int m, int l) { return eigenvalue_general(l, m, 2, 1); }

std::map<Rational, int> enumerate_spectrum(const Rational& cutoff) {
    std::map<Rational, int> out;
    // lambda = 1 - m/2 - l^2/2 >= cutoff bounds both indices
    for (int l = 0;; ++l) {
        const Rational top = eigenvalue(0, l);
        if (top < cutoff) break;
        for (int m = 0;; ++m) {
            const Rational lam = eigenvalue(m, l);
            if (lam < cutoff) break;
            out[lam] += (l == 0) ? 1 : 2;  // cos/sin pair for l >= 1
        }
    }
    return out;
}

Rational spectral_gap(const Rational& lambda, const Rational& cutoff) {
    const auto spec = enumerate_spectrum(cutoff - 1);
    if (spec.find(lambda) == spec.end())
        throw std::invalid_argument("spectral_gap: lambda is not a model eigenvalue");
    Rational best = 0;
    bool have = false;
    for (const auto& [lam, mult] : spec) {
        if (lam == lambda) continue;
        const Rational d = lam > lambda ? lam - lambda : lambda - lam;
        if (!have || d < best) {
            best = d;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("spectral_gap: no other eigenvalue above cutoff");
    return best;
}

HermitePoly::HermitePoly(int m) : m_(m) {
    if (m < 0) throw std::invalid_argument("HermitePoly: order must be nonnegative");
    std::vector<Rational> prev{Rational(1)};  // h_0
    if (m == 0) {
        c_ = prev;
        return;
    }
    std::vector<Rational> cur{Rational(0), Rational(1)};  // h_1 = y
    for (int k = 1; k < m; ++k) {
        std::vector<Rational> next(cur.size() + 1, Rational(0));
        for (std::size_t p = 0; p < cur.size(); ++p) next[p + 1] += cur[p];  // y * h_k
        for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= Rational(2 * k) * prev[p];
        prev = std::move(cur);
        cur = std::move(next);
    }
    c_ = cur;
}

double HermitePoly::eval(double y) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + static_cast<double>(*it);
    return acc;
}

bool HermitePoly::operator_identity_ok() const {
    // A h = h'' - (y/2) h'; check A h + (m/2) h == 0 coefficientwise
    std::vector<Rational> res(c_.size() + 1, Rational(0));
    for (std::size_t p = 2; p < c_.size(); ++p)
        res[p - 2] += c_[p] * Rational(static_cast<long>(p) * static_cast<long>(p - 1));
    for (std::size_t p = 1; p < c_.size(); ++p) res[p] -= c_[p] * Rational(static_cast<long>(p), 2);
    for (std::size_t p = 0; p < c_.size(); ++p) res[p] += c_[p] * Rational(m_, 2);
    for (const auto& r : res)
        if (r != 0) return false;
    return true;
}

double HermitePoly::ExactNorm::to_double() const {
    return static_cast<double>(q) * std::pow(M_PI, static_cast<double>(pi_pow)) *
           std::pow(2.0, static_cast<double>(two_pow));
}

HermitePoly::ExactNorm HermitePoly::norm_squared() const {
    // m! 2^m * 2 sqrt(pi)
    ExactNorm n;
    n.q = Rational(factorial(static_cast<unsigned>(m_)));
    n.pi_pow = Rational(1, 2);
    n.two_pow = Rational(m_ + 1);
    return n;
}

WeightedGrid::WeightedGrid(int n_axis, int n_theta) {
    if (n_axis < 1 || n_theta < 1) throw std::invalid_argument("WeightedGrid: empty grid");
    // Golub-Welsch: monic recurrence h_{k+1} = y h_k - 2k h_{k-1}, so the
    // Jacobi matrix has zero diagonal and off-diagonal sqrt(2k).
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_axis, n_axis);
    for (int k = 1; k < n_axis; ++k) {
        const double off = std::sqrt(2.0 * k);
        jac(k, k - 1) = off;
        jac(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 = 2.0 * std::sqrt(M_PI);  // integral of e^{-y^2/4}
    ynodes_.resize(static_cast<std::size_t>(n_axis));
    yweights_.resize(static_cast<std::size_t>(n_axis));
    for (int i = 0; i < n_axis; ++i) {
        ynodes_[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        yweights_[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    thetas_.resize(static_cast<std::size_t>(n_theta));
    for (int i = 0; i < n_theta; ++i)
        thetas_[static_cast<std::size_t>(i)] = 2.0 * M_PI * i / n_theta;
    theta_weight_ = std::sqrt(2.0) * 2.0 * M_PI / n_theta;  // arc element of S^1_{sqrt 2}
}

double WeightedGrid::basis(const EigenMode& mode, double y, double theta) const {
    const HermitePoly h(mode.m);
    const double axis = h.eval(y) / std::sqrt(h.norm_squared().to_double());
    double circ;
    if (mode.l == 0) {
        circ = 1.0 / std::sqrt(2.0 * M_PI * std::sqrt(2.0));
    } else {
        const double fn = mode.parity == Parity::cos ? std::cos(mode.l * theta)
                                                     : std::sin(mode.l * theta);
        circ = fn / std::sqrt(M_PI * std::sqrt(2.0));
    }
    return axis * circ;
}

std::vector<double> WeightedGrid::sample(const EigenMode& mode) const {
    std::vector<double> out(size());
    const HermitePoly h(mode.m);
    const double axis_norm = std::sqrt(h.norm_squared().to_double());
    const double circ_norm = mode.l == 0 ? std::sqrt(2.0 * M_PI * std::sqrt(2.0))
                                         : std::sqrt(M_PI * std::sqrt(2.0));
    for (std::size_t iy = 0; iy < ynodes_.size(); ++iy) {
        const double hy = h.eval(ynodes_[iy]) / axis_norm;
        for (std::size_t it = 0; it < thetas_.size(); ++it) {
            double circ = 1.0;
            if (mode.l != 0)
                circ = mode.parity == Parity::cos ? std::cos(mode.l * thetas_[it])
                                                  : std::sin(mode.l * thetas_[it]);
            out[iy * thetas_.size() + it] = hy * circ / circ_norm;
        }
    }
    return out;
}

double WeightedGrid::inner(const std::vector<double>& f, const std::vector<double>& g) const {
    if (f.size() != size() || g.size() != size())
        throw std::invalid_argument("WeightedGrid::inner: sample size mismatch");
    double acc = 0;
    for (std::size_t iy = 0; iy < ynodes_.size(); ++iy) {
        double row = 0;
        for (std::size_t it = 0; it < thetas_.size(); ++it) {
            const std::size_t idx = iy * thetas_.size() + it;
            row += f[idx] * g[idx];
        }
        acc += yweights_[iy] * row * theta_weight_;
    }
    return acc;
}

double ModeCoefficients::at(const EigenMode& mode) const {
    const auto it = c.find(mode);
    if (it == c.end()) return 0.0;
    return it->second * std::exp(static_cast<double>(eigenvalue(mode.m, mode.l)) * elapsed);
}

ModeCoefficients project(const std::vector<double>& f, const WeightedGrid& grid, int m_cut,
                         int l_cut) {
    if (2 * std::max(m_cut, 0) > grid.exactness_degree())
        throw std::invalid_argument("project: cutoff exceeds quadrature exactness");
    ModeCoefficients out;
    for (int m = 0; m <= m_cut; ++m)
        for (int l = 0; l <= l_cut; ++l) {
            for (int par = 0; par < (l == 0 ? 1 : 2); ++par) {
                EigenMode mode{m, l, static_cast<Parity>(par)};
                const double coef = grid.inner(f, grid.sample(mode));
                if (coef != 0.0) out.c[mode] = coef;
            }
        }
    return out;
}

ModeCoefficients evolve_linear(const ModeCoefficients& c, double t) {
    ModeCoefficients out = c;
    out.elapsed = c.elapsed + t;
    return out;
}

LowerBoundDemo local_lower_bound_demo(const ModeCoefficients& c, const WeightedGrid& grid,
                                      const Window& window, const std::vector<double>& t_grid,
                                      double slope_tol, double gram_tol) {
    if (c.c.empty()) throw std::invalid_argument("local_lower_bound_demo: empty coefficients");
    // window mask with positive quadrature mass
    std::vector<std::size_t> sel;
    for (std::size_t iy = 0; iy < grid.ynodes().size(); ++iy) {
        if (grid.ynodes()[iy] < window.y_lo || grid.ynodes()[iy] > window.y_hi) continue;
        for (std::size_t it = 0; it < grid.thetas().size(); ++it) {
            if (grid.thetas()[it] < window.theta_lo || grid.thetas()[it] > window.theta_hi) continue;
            sel.push_back(iy * grid.thetas().size() + it);
        }
    }
    if (sel.empty()) throw std::invalid_argument("local_lower_bound_demo: window has no quadrature mass");

    const auto window_inner = [&](const std::vector<double>& f, const std::vector<double>& g) {
        double acc = 0;
        for (std::size_t idx : sel) {
            const std::size_t iy = idx / grid.thetas().size();
            acc += grid.yweights()[iy] * grid.theta_weight() * f[idx] * g[idx];
        }
        return acc;
    };

    Rational lam_star;
    bool have = false;
    for (const auto& [mode, coef] : c.c) {
        if (coef == 0.0) continue;
        const Rational lam = eigenvalue(mode.m, mode.l);
        if (!have || lam > lam_star) {
            lam_star = lam;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("local_lower_bound_demo: all coefficients zero");

    std::vector<std::pair<EigenMode, std::vector<double>>> samples;
    for (const auto& [mode, coef] : c.c) samples.emplace_back(mode, grid.sample(mode));

    LowerBoundDemo out;
    out.expected_slope = 2.0 * static_cast<double>(lam_star);

    std::vector<double> lognorm(t_grid.size());
    std::vector<double> u(grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        std::fill(u.begin(), u.end(), 0.0);
        for (const auto& [mode, sample] : samples) {
            const double amp = c.c.at(mode) *
                               std::exp(static_cast<double>(eigenvalue(mode.m, mode.l)) *
                                        (c.elapsed + t));
            for (std::size_t idx = 0; idx < u.size(); ++idx) u[idx] += amp * sample[idx];
        }
        lognorm[k] = std::log(window_inner(u, u));
    }
    // least-squares slope
    double tbar = 0, ybar = 0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        tbar += t_grid[k];
        ybar += lognorm[k];
    }
    tbar /= static_cast<double>(t_grid.size());
    ybar /= static_cast<double>(t_grid.size());
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        sxx += (t_grid[k] - tbar) * (t_grid[k] - tbar);
        sxy += (t_grid[k] - tbar) * (lognorm[k] - ybar);
    }
    out.fitted_slope = sxy / sxx;
    out.slope_error = std::fabs(out.fitted_slope - out.expected_slope);

    // Gram of the lambda*-eigenspace content restricted to the window
    std::vector<const std::vector<double>*> top;
    for (const auto& [mode, sample] : samples)
        if (eigenvalue(mode.m, mode.l) == lam_star) top.push_back(&sample);
    Eigen::MatrixXd gram(top.size(), top.size());
    for (std::size_t a = 0; a < top.size(); ++a)
        for (std::size_t b = 0; b < top.size(); ++b)
            gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                window_inner(*top[a], *top[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    out.gram_min_eigenvalue = es.eigenvalues().minCoeff();

    out.pass = out.slope_error <= slope_tol && out.gram_min_eigenvalue > gram_tol;
    return out;
}

ModeTrajectory mode_ode_check(const std::vector<EigenMode>& modes, const std::vector<double>& c0,
                              const ModeCoupling& coupling, const Rational& lambda, double T,
                              double dt, double eps_gate) {
    if (modes.size() != c0.size())
        throw std::invalid_argument("mode_ode_check: coefficient count mismatch");
    const std::size_t n = modes.size();
    std::vector<double> lam(n);
    double lam_max = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lam[i] = static_cast<double>(eigenvalue(modes[i].m, modes[i].l));
        lam_max = std::max(lam_max, std::fabs(lam[i]));
    }
    if (dt * lam_max > 0.1)
        throw std::invalid_argument("mode_ode_check: dt violates the stability budget dt*|lambda| <= 0.1");

    const auto rhs = [&](const std::vector<double>& u, std::vector<double>& du) {
        for (std::size_t i = 0; i < n; ++i) du[i] = lam[i] * u[i];
        for (const auto& [idx, q] : coupling.q) {
            du[static_cast<std::size_t>(idx[0])] +=
                q * u[static_cast<std::size_t>(idx[1])] * u[static_cast<std::size_t>(idx[2])];
        }
    };

    const double lam0 = static_cast<double>(lambda);
    ModeTrajectory traj;
    const auto record = [&](double t, const std::vector<double>& u) {
        double p = 0, z = 0, mns = 0;
        const double detrend = std::exp(-lam0 * t);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u[i] * detrend;
            if (lam[i] > lam0)
                p += v * v;
            else if (lam[i] < lam0)
                mns += v * v;
            else
                z += v * v;
        }
        traj.t.push_back(t);
        traj.x_plus.push_back(std::sqrt(p));
        traj.x_zero.push_back(std::sqrt(z));
        traj.x_minus.push_back(std::sqrt(mns));
    };

    std::vector<double> u = c0, k1(n), k2(n), k3(n), k4(n), tmp(n), qv(n);
    const int steps = static_cast<int>(std::llround(T / dt));
    record(0.0, u);
    double worst_coupling = 0.0;
    for (int s = 0; s < steps; ++s) {
        // coupling smallness along the trajectory: |Q(u)| <= eps_gate |u|
        double unorm = 0, qnorm = 0;
        std::fill(qv.begin(), qv.end(), 0.0);
        for (const auto& [idx, q] : coupling.q)
            qv[static_cast<std::size_t>(idx[0])] +=
                q * u[static_cast<std::size_t>(idx[1])] * u[static_cast<std::size_t>(idx[2])];
        for (std::size_t i = 0; i < n; ++i) {
            unorm += u[i] * u[i];
            qnorm += qv[i] * qv[i];
        }
        if (unorm > 0) worst_coupling = std::max(worst_coupling, std::sqrt(qnorm / unorm));

        rhs(u, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            u[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        record((s + 1) * dt, u);
    }
    if (worst_coupling > eps_gate) {
        traj.hypothesis_ok = false;
        std::ostringstream msg;
        msg << "coupling magnitude " << worst_coupling << " exceeds gate " << eps_gate;
        traj.note = msg.str();
    }
    return traj;
}

std::string spectrum_csv(const Rational& cutoff) {
    std::ostringstream out;
    out << "m,l,lambda,multiplicity\n";
    for (int l = 0;; ++l) {
        if (eigenvalue(0, l) < cutoff) break;
        for (int m = 0;; ++m) {
            const Rational lam = eigenvalue(m, l);
            if (lam < cutoff) break;
            out << m << "," << l << "," << to_string(lam) << "," << (l == 0 ? 1 : 2) << "\n";
        }
    }
    return out.str();
}

}  // namespace spectral
}  // namespace flatgerm
