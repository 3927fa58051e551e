#pragma once

#include "flatgerm/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flatgerm {
namespace spectral {

// Model cylinder S^1_{sqrt 2} x R (n = 2, k = 1): drift operator
// L f = Delta f - (x/2).grad f + f, weight e^{-|x|^2/4}. Eigenfunctions are
// h_m(y) tensor {1, cos(l theta), sin(l theta)} with
// lambda(m, l) = 1 - m/2 - l^2/2.
enum class Parity : std::uint8_t { cos = 0, sin = 1 };

struct EigenMode {
    int m = 0;
    int l = 0;
    Parity parity = Parity::cos;  // meaningful only for l >= 1

    friend bool operator<(const EigenMode& a, const EigenMode& b) {
        return std::tie(a.m, a.l, a.parity) < std::tie(b.m, b.l, b.parity);
    }
    friend bool operator==(const EigenMode& a, const EigenMode& b) {
        return a.m == b.m && a.l == b.l && a.parity == b.parity;
    }
};

// General spectrum formula 1 - j/2 - i(i-1+n-k)/(2(n-k)); the model instance
// is eigenvalue(m, l) = eigenvalue_general(l, m, 2, 1) = 1 - m/2 - l^2/2.
Rational eigenvalue_general(int i, int j, int n, int k);
Rational eigenvalue(int m, int l);

// Distinct model eigenvalues >= cutoff, with multiplicities (cos/sin doubling
// for l >= 1), exact enumeration.
std::map<Rational, int> enumerate_spectrum(const Rational& cutoff);

// min |lambda - lambda'| over model eigenvalues lambda' != lambda down to
// cutoff - 1; throws if lambda is not in the spectrum.
Rational spectral_gap(const Rational& lambda, const Rational& cutoff);

// Axis Hermite polynomials h_0 = 1, h_1 = y, h_{m+1} = y h_m - 2m h_{m-1},
// eigenfunctions of A = d^2/dy^2 - (y/2) d/dy with A h_m = -(m/2) h_m.
class HermitePoly {
public:
    explicit HermitePoly(int m);
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    double eval(double y) const;
    // exact check of A h + (m/2) h = 0 over the rationals
    bool operator_identity_ok() const;
    // squared weighted norm: integral h_m^2 e^{-y^2/4} dy = m! 2^m * 2 sqrt(pi),
    // stored exactly as (rational, power of pi, power of 2)
    struct ExactNorm {
        Rational q;
        Rational pi_pow;
        Rational two_pow;
        double to_double() const;
    };
    ExactNorm norm_squared() const;

private:
    int m_;
    std::vector<Rational> c_;
};

// Gauss nodes/weights for the axis weight e^{-y^2/4} (Golub-Welsch on the
// monic h_m recurrence) and a uniform theta grid carrying the sqrt(2) arc
// factor of the radius-sqrt(2) circle.
class WeightedGrid {
public:
    WeightedGrid(int n_axis, int n_theta);
    int exactness_degree() const { return 2 * static_cast<int>(ynodes_.size()) - 1; }
    const std::vector<double>& ynodes() const { return ynodes_; }
    const std::vector<double>& yweights() const { return yweights_; }
    const std::vector<double>& thetas() const { return thetas_; }
    double theta_weight() const { return theta_weight_; }

    // orthonormal basis function at a grid point
    double basis(const EigenMode& mode, double y, double theta) const;
    // weighted inner product of sampled functions (fixed summation order)
    double inner(const std::vector<double>& f, const std::vector<double>& g) const;
    std::vector<double> sample(const EigenMode& mode) const;
    // index into samples: iy * n_theta + it
    std::size_t size() const { return ynodes_.size() * thetas_.size(); }

private:
    std::vector<double> ynodes_, yweights_, thetas_;
    double theta_weight_;
};

// Finite mode expansion with lazily applied linear evolution: the stored
// coefficients are at time 0 and `elapsed` accumulates exactly, so the
// semigroup property holds in the representation.
struct ModeCoefficients {
    std::map<EigenMode, double> c;
    double elapsed = 0;

    double at(const EigenMode& mode) const;  // includes the e^{lambda elapsed} factor
};

ModeCoefficients project(const std::vector<double>& f, const WeightedGrid& grid, int m_cut,
                         int l_cut);
ModeCoefficients evolve_linear(const ModeCoefficients& c, double t);

// Axis window x theta arc.
struct Window {
    double y_lo = 0, y_hi = 1;
    double theta_lo = 0, theta_hi = 1.5707963267948966;
};

struct LowerBoundDemo {
    double fitted_slope = 0;
    double expected_slope = 0;  // 2 lambda*
    double slope_error = 0;
    double gram_min_eigenvalue = 0;
    bool pass = false;
};

// Windowed weighted norm ||u(t)||^2 on the t-grid for the linear evolution of
// c; least-squares slope of its logarithm against 2 lambda*, plus the smallest
// eigenvalue of the window Gram matrix of the lambda*-eigenspace spanned by
// the modes of c at the top eigenvalue.
LowerBoundDemo local_lower_bound_demo(const ModeCoefficients& c, const WeightedGrid& grid,
                                      const Window& window, const std::vector<double>& t_grid,
                                      double slope_tol = 1e-3, double gram_tol = 1e-8);

// Quadratic mode coupling Q_i(u) = sum q[{i,j,k}] u_j u_k.
struct ModeCoupling {
    std::map<std::array<int, 3>, double> q;  // indices into a fixed mode list
};

struct ModeTrajectory {
    std::vector<double> t;
    std::vector<double> x_plus, x_zero, x_minus;  // detrended by e^{-lambda t}
    bool hypothesis_ok = true;                    // coupling smallness gate
    std::string note;
};

// RK4 integration of d u_i/dt = lambda_i u_i + Q_i(u), then aggregation of the
// e^{-lambda t}-detrended mode magnitudes into (x_+, x_0, x_-) relative to the
// chosen lambda. Refuses when dt violates stability; flags hypothesis failure
// when the measured |Q| exceeds eps_gate * |u| along the way.
ModeTrajectory mode_ode_check(const std::vector<EigenMode>& modes, const std::vector<double>& c0,
                              const ModeCoupling& coupling, const Rational& lambda, double T,
                              double dt, double eps_gate);

std::string spectrum_csv(const Rational& cutoff);

}  // namespace spectral
}  // namespace flatgerm
