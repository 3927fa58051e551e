#pragma once

#include "flatgerm/jet.hpp"
#include "flatgerm/log_scaled.hpp"
#include "flatgerm/phi_expr.hpp"
#include "flatgerm/rational.hpp"
#include "flatgerm/report.hpp"

#include <utility>
#include <vector>

namespace flatgerm {

// Truncated base solution u0(x,t) = sum_{k<=K} sigma^k phi^(k)(t) x^{2k}/(2k)!.
// sigma=+1 solves du/dt = u_xx, sigma=-1 solves du/dt + u_xx = 0; both vanish
// identically for t <= 0.
struct TruncatedU0 {
    int K = 0;
    int sigma = +1;
};

// Iterated flat germs f_0 = t^2, f_{k+1} = e^{-1/f_k}, with the derivative
// envelope g_N = (2/t) (8/eps)^{N-1} prod_{j<N} f_j^{-eps} and g_0 = 2/t.
struct FlatGermFamily {
    int N = 0;
    Rational epsilon{1, 4};
};

LogScaled u0_eval(const TruncatedU0& u, double x, double t);

// Applies (d_t - sigma d_xx) to the truncated series. exact_tail is the single
// surviving boundary term sigma^K phi^(K+1)(t) x^{2K}/(2K)!; fd_residual is a
// centered finite-difference evaluation of the same operator on u0_eval.
struct U0Residual {
    LogScaled exact_tail;
    double fd_residual = 0;
};
U0Residual u0_residual(const TruncatedU0& u, double x, double t, double h = 1e-5);

// Symbolic route for the same tail: coefficient list of (d_t - sigma d_xx) u0
// in powers of x, exact PhiExpr per power. All entries below 2K vanish.
std::vector<PhiExpr> u0_residual_symbolic(const TruncatedU0& u);

// Minimal C_eps for |phi^(k)(t)| <= C_eps k!/(eps t)^k e^{-eps/t^2} over the
// grid, for all k <= k_max. Ratios are per-(k,t) rows; max ratio is C_eps.
BoundReport phi_bound_check(int k_max, const Rational& eps, const std::vector<double>& t_grid);

// Bisection (resolution 1e-3) for the largest T such that the truncated |u0|
// stays strictly below e^{-1/(2 t^2)} at every node of an nx-by-nt grid of
// [-R,R] x (0,T]. The comparison is nodewise in t.
struct DecayCheckResult {
    double T = 0;
    bool pass = false;
};
DecayCheckResult u0_decay_check(double R, int K, int sigma = +1, int nx = 201, int nt = 200,
                                double T_hi = 1.0);

// Jets of the elementary germs at a base point.
Jet jet_of_f0(double base, int order);               // t^2
Jet jet_of_flat_germ(int N, double base, int order); // f_N
Jet jet_exp(const Jet& f);
Jet jet_recip(const Jet& f);
Jet jet_neg(const Jet& f);

// ln f_j(t) for j = 0..N (computed through the -e^{-ln f_j} chain).
std::vector<double> flat_germ_logs(int N, double t);

// The lemma's envelope prefactor comes in two readings. The statement prints
// (8/eps)^{N-1}, but its own induction g_{k+1} = (8/eps) g_k f_k^{-eps} with
// g_0 = 2/t yields (8/eps)^N; the stated version is numerically false already
// at N = 1 while the derived one holds with wide margin.
enum class EnvelopeConvention { stated, derived };
double flat_germ_envelope_log(const FlatGermFamily& fam, double t,
                              EnvelopeConvention conv = EnvelopeConvention::derived); // ln g_N

// |f_N^(i)| <= i! f_N^{1-eps} g_N^i on the grid, i <= i_max, via jets.
BoundReport flat_germ_bound_check(const FlatGermFamily& fam, int i_max,
                                  const std::vector<double>& t_grid,
                                  EnvelopeConvention conv = EnvelopeConvention::derived);

// Appendix-style function lemmas on a supplied germ jet f at one base point:
//   hypothesis  |f^(i)| <= i! g^i |f|^{1-eps}   (g measured minimal, or supplied)
//   exp bound   |(e^f)^(i)| <= i! e^{(1-eps) f} (2g/eps)^i          (needs f < 0)
//   recip bound |(1/f)^(i)| <= i! (4g)^i (1/|f|)^{1+i eps}          (needs f != 0)
// A violated hypothesis is reported as hypothesis-failure, not bound-failure.
struct FuncLemmaResult {
    BoundReport exp_bound;
    BoundReport recip_bound;
    double measured_g = 0;
};
FuncLemmaResult lemma_func_checks(const Jet& f, const Rational& eps, int i_max,
                                  double g_supplied = -1.0);

}  // namespace flatgerm
