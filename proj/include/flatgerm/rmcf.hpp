#pragma once

#include "flatgerm/log_scaled.hpp"
#include "flatgerm/qtaylor.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flatgerm {
namespace rmcf {

// Graphical quadratic term over the plane:
//   Q(u, u', u'') = -u'' (u')^2 / (1 + (u')^2),
// expanded geometrically: coefficient (-1)^{m+1} at (0, 2m+2, 1), 2m+3 <= D.
QTaylor q_taylor_plane(int cutoff);

// Theta-independent graphs over the cylinder: the quadratic part reduces to
// -Cq u^2; an optional user-supplied tail (same text format) is merged after
// the no-constant/no-linear validation.
QTaylor q_taylor_cylinder_quadratic(const Rational& Cq, int cutoff,
                                    const std::optional<std::string>& q_tilde_text = std::nullopt);

// (theta0, theta1, theta2, theta3) = (-1/2, -1/2, 0, 1/2).
ExponentProfile exponent_profile_rmcf();

// Parabolic rescaling u(y,t) = sqrt(-t) v(y/sqrt(-t), -ln(-t)).
struct SamplePoint {
    double coord = 0;
    double time = 0;
    double value = 0;
};
enum class RescaleDirection { mcf_to_rmcf, rmcf_to_mcf };
std::vector<SamplePoint> rescale(const std::vector<SamplePoint>& samples, RescaleDirection dir);

// Value e^{o depth}(top); comparisons raise both sides to a common depth by
// taking logarithms of the tops, so e^{o3}(4)-sized quantities never need to
// be materialized.
struct NestedExp {
    int depth = 0;
    double top = 0;

    static NestedExp make(int N, double x) { return NestedExp{N, x}; }
    // representation of 1/f_N(t) = e^{oN}(1/t^2), exact by construction
    static NestedExp inv_flat_germ(int N, double t);

    friend bool nested_less(NestedExp a, NestedExp b);
    friend bool operator==(const NestedExp& a, const NestedExp& b) {
        return a.depth == b.depth && a.top == b.top;
    }
};

// e^{oN}(x) as a log-scaled value; throws when the (N-1)-fold iterate
// overflows the double range (the nested-log representation above is the
// overflow-free alternative).
LogScaled iterated_exp_eval(int N, double x, int N_max = 6);

// |x| <= e^{oN}(1/t^2)
bool domain_member(int N, double x, double t);

struct DecayCertificate {
    bool decreasing = true;
    bool below_threshold = true;
    bool pass = true;
    std::vector<double> log_products;  // ln(|u| e^{oN}) along the grid
};

// Checks |u(tau)| e^{oN}(tau) decreasing along tau_grid and below the given
// threshold at the horizon; the evaluator returns |u| as a LogScaled.
DecayCertificate decay_certificate(const std::function<LogScaled(double)>& u_abs, int N,
                                   const std::vector<double>& tau_grid, double log_threshold);

}  // namespace rmcf
}  // namespace flatgerm
