#include "flatgerm/merle_zaag.hpp"

#include "flatgerm/report.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flatgerm {
namespace mz {

void MZParams::validate() const {
    if (!(b > 0) || b1 < b || b2 < b || eps < 0)
        throw std::invalid_argument("MZParams: need b1 >= b > 0, b2 >= b > 0, eps >= 0");
}

std::string Trajectory::to_csv() const {
    std::ostringstream out;
    out << "t,x_plus,x_zero,x_minus\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << format_double(t[i]) << "," << format_double(x_plus[i]) << ","
            << format_double(x_zero[i]) << "," << format_double(x_minus[i]) << "\n";
    }
    return out.str();
}

std::string MZVerdict::to_json() const {
    std::ostringstream out;
    out << "{\"hyp_ok\":" << (hyp_ok ? "true" : "false")
        << ",\"plus_bound_ok\":" << (plus_bound_ok ? "true" : "false") << ",\"branch\":\""
        << (branch == Branch::a_zero_dominates ? "A"
            : branch == Branch::b_minus_dominates ? "B"
                                                  : "none")
        << "\"";
    if (branch == Branch::a_zero_dominates) out << ",\"s0\":" << format_double(s0);
    if (branch == Branch::b_minus_dominates) out << ",\"decay_ok\":" << (decay_ok ? "true" : "false");
    out << ",\"inconclusive\":" << (inconclusive ? "true" : "false") << ",\"tol\":"
        << format_double(tol);
    if (!detail.empty()) out << ",\"detail\":\"" << detail << "\"";
    out << "}";
    return out.str();
}

bool verify_hypotheses(const Trajectory& traj, const MZParams& p, double tol,
                       std::string* first_failure) {
    p.validate();
    const double dt = traj.dt();
    const double max_rate = std::max({p.b1, p.b2, 1.0});
    if (dt * max_rate > 0.1) {
        std::ostringstream msg;
        msg << "verify_hypotheses: grid too coarse, need dt <= " << 0.1 / max_rate;
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 1; i + 1 < traj.t.size(); ++i) {
        const double xp = traj.x_plus[i], x0 = traj.x_zero[i], xm = traj.x_minus[i];
        const double sum = xp + x0 + xm;
        if (!(sum > 0)) {
            if (first_failure) *first_failure = "x_+ + x_0 + x_- vanished at node " + std::to_string(i);
            return false;
        }
        const double slack = tol * sum;
        const double d0 = (traj.x_zero[i + 1] - traj.x_zero[i - 1]) / (2 * dt);
        const double dp = (traj.x_plus[i + 1] - traj.x_plus[i - 1]) / (2 * dt);
        const double dm = (traj.x_minus[i + 1] - traj.x_minus[i - 1]) / (2 * dt);
        if (std::fabs(d0) > p.eps * sum + slack) {
            if (first_failure) *first_failure = "|x_0'| inequality failed at node " + std::to_string(i);
            return false;
        }
        if (dp < p.b1 * xp - p.eps * (x0 + xm) - slack) {
            if (first_failure) *first_failure = "x_+' inequality failed at node " + std::to_string(i);
            return false;
        }
        if (dm > -p.b2 * xm + p.eps * (x0 + xp) + slack) {
            if (first_failure) *first_failure = "x_-' inequality failed at node " + std::to_string(i);
            return false;
        }
    }
    return true;
}

MZVerdict verify_conclusions(const Trajectory& traj, const MZParams& p, double tol) {
    p.validate();
    MZVerdict v;
    v.tol = tol;
    v.hyp_ok = true;  // caller gates on verify_hypotheses; re-checked cheaply here
    const double r2 = 2 * p.eps / p.b, r8 = 8 * p.eps / p.b, r20 = 20 * p.eps / p.b;
    const std::size_t n = traj.t.size();

    v.plus_bound_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = traj.x_plus[i] + traj.x_zero[i] + traj.x_minus[i];
        if (traj.x_plus[i] > r2 * (traj.x_zero[i] + traj.x_minus[i]) + tol * scale) {
            v.plus_bound_ok = false;
            v.detail = "plus bound failed at t=" + format_double(traj.t[i]);
            break;
        }
    }

    // branch A: x_- <= 8 eps/b x_0 from some s0 <= 0.8 T onward
    const double T = traj.t.back();
    std::size_t last_violation = n;  // n means "none"
    for (std::size_t i = n; i-- > 0;) {
        const double scale = traj.x_plus[i] + traj.x_zero[i] + traj.x_minus[i];
        if (traj.x_minus[i] > r8 * traj.x_zero[i] + tol * scale) {
            last_violation = i;
            break;
        }
    }
    if (last_violation == n) {
        v.branch = Branch::a_zero_dominates;
        v.s0 = 0.0;
        return v;
    }
    if (last_violation + 1 < n && traj.t[last_violation + 1] <= 0.8 * T) {
        v.branch = Branch::a_zero_dominates;
        v.s0 = traj.t[last_violation + 1];
        return v;
    }

    // branch B: x_0 <= 20 eps/b x_- globally, with decreasing detrended tail
    bool b_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = traj.x_plus[i] + traj.x_zero[i] + traj.x_minus[i];
        if (traj.x_zero[i] > r20 * traj.x_minus[i] + tol * scale) {
            b_ok = false;
            v.detail = "neither branch: x_0 > 20 eps/b x_- at t=" + format_double(traj.t[i]);
            break;
        }
    }
    if (b_ok) {
        v.branch = Branch::b_minus_dominates;
        v.decay_ok = true;
        const std::size_t tail_start = n - std::max<std::size_t>(2, n / 5);
        double prev = -1;
        for (std::size_t i = tail_start; i < n; ++i) {
            const double w = std::exp((p.b2 - p.eps) * traj.t[i]) *
                             (traj.x_plus[i] + traj.x_zero[i] + traj.x_minus[i]);
            if (prev >= 0 && w > prev * (1 + tol)) {
                v.decay_ok = false;
                v.detail = "branch B tail not decreasing at t=" + format_double(traj.t[i]);
                break;
            }
            prev = w;
        }
        if (v.decay_ok) return v;
    }
    v.branch = Branch::none;
    v.inconclusive = true;
    return v;
}

namespace {

struct GeneratorCoeffs {
    double d0, dm;    // x_+' = b1 x_+ - eps (d0 x_0 + dm x_-)
    double a_p, a_0, a_m;  // x_0' = eps (a_p x_+ + a_0 x_0 + a_m x_-), a_0 in [-1,1]
    double c_p, c_0;  // x_-' = -b2 x_- + eps (c_p x_+ + c_0 x_0)
    double x0_init, xm_init;
};

GeneratorCoeffs draw_coeffs(std::mt19937_64& rng, GeneratorMode mode) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    GeneratorCoeffs g;
    g.d0 = u01(rng);
    g.dm = u01(rng);
    g.a_p = u01(rng);
    g.a_0 = u11(rng);
    g.a_m = u01(rng);
    g.c_p = u01(rng);
    g.c_0 = u01(rng);
    switch (mode) {
        case GeneratorMode::mixed:
            g.x0_init = 0.2 + 1.8 * u01(rng);
            g.xm_init = 0.2 + 1.8 * u01(rng);
            break;
        case GeneratorMode::neutral_dominant:
            g.x0_init = 1.0 + u01(rng);
            g.xm_init = 0.5 * u01(rng);
            break;
        case GeneratorMode::stable_dominant:
            // x_0 stays identically zero so the stable branch is exercised
            g.x0_init = 0.0;
            g.a_p = 0.0;
            g.a_m = 0.0;
            g.xm_init = 1.0 + u01(rng);
            break;
    }
    return g;
}

}  // namespace

// The x_+ direction grows like e^{b1 T}, so a superposition shot loses all
// precision over long horizons. Instead the stable-manifold trajectory is the
// fixed point of alternating sweeps: forward RK4 for (x_0, x_-) against a
// frozen x_+ profile, then an exact exponential integrator backward in time
// for x_+ from the terminal target (the backward direction is contracting).
// The coupling is O(eps), so a handful of sweeps converges far below the
// verification tolerance.
Trajectory generate_random_system(std::uint64_t seed, const MZParams& p, double T, double dt,
                                  GeneratorMode mode) {
    p.validate();
    if (p.eps / p.b > 0.1)
        throw std::invalid_argument("generate_random_system: requires eps/b <= 0.1");
    std::mt19937_64 rng(seed);
    const GeneratorCoeffs g = draw_coeffs(rng, mode);

    const int steps = static_cast<int>(std::llround(T / dt));
    const std::size_t n2 = 2 * static_cast<std::size_t>(steps) + 1;  // dt/2 resolution
    const double dt2 = 0.5 * dt;
    std::vector<double> xp(n2, 0.0), x0(n2, 0.0), xm(n2, 0.0);

    const auto xp_at = [&](double t) {
        const double pos = t / dt2;
        const std::size_t i = std::min(n2 - 2, static_cast<std::size_t>(std::max(0.0, pos)));
        const double u = std::min(1.0, std::max(0.0, pos - static_cast<double>(i)));
        return (1 - u) * xp[i] + u * xp[i + 1];
    };

    // closed-form per-interval weights for the backward pass with linear h
    const double eb = std::exp(-p.b1 * dt2);
    const double wA = (1.0 - eb) / p.b1;
    const double wB = (1.0 - (1.0 + p.b1 * dt2) * eb) / (p.b1 * p.b1 * dt2);

    double target = 0.0;
    for (int sweep = 0; sweep < 4; ++sweep) {
        // forward RK4 for (x_0, x_-), x_+ frozen
        x0[0] = g.x0_init;
        xm[0] = g.xm_init;
        const auto rhs2 = [&](double t, double y0, double ym, double& d0, double& dm) {
            const double yp = xp_at(t);
            d0 = p.eps * (g.a_p * yp + g.a_0 * y0 + g.a_m * ym);
            dm = -p.b2 * ym + p.eps * (g.c_p * yp + g.c_0 * y0);
        };
        for (std::size_t i = 0; i + 1 < n2; ++i) {
            const double t = static_cast<double>(i) * dt2;
            double k10, k1m, k20, k2m, k30, k3m, k40, k4m;
            rhs2(t, x0[i], xm[i], k10, k1m);
            rhs2(t + 0.5 * dt2, x0[i] + 0.5 * dt2 * k10, xm[i] + 0.5 * dt2 * k1m, k20, k2m);
            rhs2(t + 0.5 * dt2, x0[i] + 0.5 * dt2 * k20, xm[i] + 0.5 * dt2 * k2m, k30, k3m);
            rhs2(t + dt2, x0[i] + dt2 * k30, xm[i] + dt2 * k3m, k40, k4m);
            x0[i + 1] = x0[i] + dt2 / 6.0 * (k10 + 2 * k20 + 2 * k30 + k40);
            xm[i + 1] = xm[i] + dt2 / 6.0 * (k1m + 2 * k2m + 2 * k3m + k4m);
        }
        // backward exact integrator for x_+ from the terminal target
        target = 1e-9 * (x0.back() + xm.back()) + 1e-290;
        xp[n2 - 1] = target;
        for (std::size_t i = n2 - 1; i-- > 0;) {
            const double h0 = g.d0 * x0[i] + g.dm * xm[i];
            const double h1 = g.d0 * x0[i + 1] + g.dm * xm[i + 1];
            xp[i] = eb * xp[i + 1] + p.eps * (h0 * wA + (h1 - h0) * wB);
        }
    }

    double floor_sum = 0.0;
    for (std::size_t i = 0; i < n2; ++i) floor_sum = std::max(floor_sum, x0[i] + xm[i]);
    if (!(floor_sum > 0) || xp.back() > 1e-8 * floor_sum)
        throw std::runtime_error("generate_random_system: shooting missed the target; reseed");

    Trajectory traj;
    traj.t.reserve(static_cast<std::size_t>(steps) + 1);
    traj.x_plus.reserve(static_cast<std::size_t>(steps) + 1);
    traj.x_zero.reserve(static_cast<std::size_t>(steps) + 1);
    traj.x_minus.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const std::size_t i2 = 2 * static_cast<std::size_t>(i);
        double vp = xp[i2], v0 = x0[i2], vm = xm[i2];
        for (double* v : {&vp, &v0, &vm}) {
            if (*v < 0) {
                if (*v < -1e-12 * floor_sum)
                    throw std::runtime_error("generate_random_system: negative excursion; reseed");
                *v = 0.0;
            }
        }
        if (!(vp + v0 + vm > 0))
            throw std::runtime_error("generate_random_system: component sum vanished; reseed");
        traj.t.push_back(i * dt);
        traj.x_plus.push_back(vp);
        traj.x_zero.push_back(v0);
        traj.x_minus.push_back(vm);
    }
    return traj;
}

std::vector<SweepRow> epsilon_threshold_probe(const std::vector<double>& eps_over_b, int n_seeds,
                                              std::uint64_t master_seed, double T, double dt) {
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < eps_over_b.size(); ++k) {
        MZParams p;
        p.b = p.b1 = p.b2 = 1.0;
        p.eps = eps_over_b[k];
        SweepRow row{eps_over_b[k], n_seeds, 0, 0};
        for (int i = 0; i < n_seeds; ++i) {
            const std::uint64_t seed =
                master_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1 +
                                                        (static_cast<std::uint64_t>(k) << 32)));
            const auto mode = static_cast<GeneratorMode>(i % 3);
            Trajectory traj;
            try {
                traj = generate_random_system(seed, p, T, dt, mode);
            } catch (const std::exception&) {
                ++row.hyp_failures;
                continue;
            }
            if (!verify_hypotheses(traj, p, 1e-6)) {
                ++row.hyp_failures;
                continue;
            }
            const MZVerdict v = verify_conclusions(traj, p, 1e-6);
            if (!v.conclusive_pass()) ++row.failures;
        }
        rows.push_back(row);
    }
    return rows;
}

Trajectory rescale_to_unit_b(const Trajectory& traj, const MZParams& p) {
    p.validate();
    const double dt = traj.dt();
    const std::size_t n = traj.t.size();
    const double T_new = traj.t.back() * p.b;
    const std::size_t n_new = static_cast<std::size_t>(std::llround(T_new / dt)) + 1;

    const auto sample = [&](const std::vector<double>& x, double s) {
        // cubic Hermite with central-difference slopes
        if (s <= 0) return x.front();
        if (s >= traj.t.back()) return x.back();
        const std::size_t i = std::min(n - 2, static_cast<std::size_t>(s / dt));
        const double u = (s - traj.t[i]) / dt;
        const auto slope = [&](std::size_t j) {
            if (j == 0) return (x[1] - x[0]) / dt;
            if (j + 1 >= n) return (x[n - 1] - x[n - 2]) / dt;
            return (x[j + 1] - x[j - 1]) / (2 * dt);
        };
        const double m0 = slope(i) * dt, m1 = slope(i + 1) * dt;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * x[i] + (u3 - 2 * u2 + u) * m0 +
               (-2 * u3 + 3 * u2) * x[i + 1] + (u3 - u2) * m1;
    };

    Trajectory out;
    out.t.resize(n_new);
    out.x_plus.resize(n_new);
    out.x_zero.resize(n_new);
    out.x_minus.resize(n_new);
    for (std::size_t i = 0; i < n_new; ++i) {
        const double t = i * dt;
        out.t[i] = t;
        out.x_plus[i] = std::max(0.0, sample(traj.x_plus, t / p.b));
        out.x_zero[i] = std::max(0.0, sample(traj.x_zero, t / p.b));
        out.x_minus[i] = std::max(0.0, sample(traj.x_minus, t / p.b));
    }
    return out;
}

}  // namespace mz
}  // namespace flatgerm
