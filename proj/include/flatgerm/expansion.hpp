#pragma once

#include "flatgerm/log_scaled.hpp"
#include "flatgerm/phi_expr.hpp"
#include "flatgerm/qtaylor.hpp"
#include "flatgerm/report.hpp"

#include <optional>
#include <vector>

namespace flatgerm {

// Geometric-ratio evaluation region: |x|^2 <= c/|t|, 0 < t <= t_max.
struct EvalDomain {
    double c = 0;
    double t_max = 1.0;

    bool contains(double x, double t) const { return t > 0 && t <= t_max && x * x <= c / t; }
};

// Doubly indexed coefficient family of u_s(x,t) = sum V^{i,j}(t) x^i s^j built
// from the triangular recurrence
//   d_t V^{i,j} - sigma (i+1)(i+2) V^{i+2,j} = [x^i s^{j-1}] t^{theta0} Q(...)
// with base row V^{2i,0} = sigma^i phi^(i)/(2i)!, odd base row zero, and
// V^{0,j} = V^{1,j} = 0 for j >= 1. Entries are exact PhiExpr.
class CoeffTable {
public:
    CoeffTable(QTaylor q, ExponentProfile theta, int I, int J, int sigma = -1);

    int I() const { return I_; }
    int J() const { return J_; }
    int sigma() const { return sigma_; }
    const QTaylor& q() const { return q_; }
    const ExponentProfile& theta() const { return theta_; }

    const PhiExpr& entry(int i, int j) const;

    // order in which entries were produced, for the triangularity property
    const std::vector<std::pair<int, int>>& build_order() const { return build_order_; }

    std::string export_text() const;  // "V[i,j]:" header + PhiExpr lines

private:
    void build();
    QTaylor q_;
    ExponentProfile theta_;
    int I_, J_, sigma_;
    std::vector<std::vector<PhiExpr>> v_;  // v_[i][j]
    std::vector<std::pair<int, int>> build_order_;
};

struct EvalResult {
    LogScaled value;
    bool certified = true;  // false when evaluated outside the supplied domain
};

// Truncated double sum in log-scaled arithmetic; t <= 0 gives exact 0.
EvalResult eval_us(const CoeffTable& tab, double x, double t, double s,
                   const std::optional<EvalDomain>& domain = std::nullopt);

struct ResidualEntry {
    int i, j;
    PhiExpr expr;
};

// Exact coefficients of (d_t - sigma d_xx) u - s t^{theta0} Q(t^{theta1}u, ...)
// formed from the table; returns the nonzero ones. All entries with
// i <= I-2 vanish identically for a correctly built table.
std::vector<ResidualEntry> pde_residual_exact(const CoeffTable& tab);

struct NumericResidual {
    double value = 0;
    bool certified = true;
    bool step_warning = false;
};

// Centered finite differences on eval_us against the truncated Q composition.
NumericResidual pde_residual_numeric(const CoeffTable& tab, double x, double t, double s,
                                     double h, const std::optional<EvalDomain>& domain = std::nullopt);

// Exact symbolic zero checks: odd-index rows and i < 2j entries for the
// quadratic case; only the imposed i in {0,1}, j >= 1 rows for general Q.
enum class VanishingScope { quadratic_full, base_rows_only };
bool vanishing_structure_check(const CoeffTable& tab, VanishingScope scope);

// One certificate: W-normalized derivative of V^{i,j} against the Catalan
// majorant, on a t-grid.
struct BoundCertificate {
    int i = 0, j = 0, m = 0;
    std::string convention;  // "quadratic" or "general"
    BoundReport report;
};

// Quadratic-case certificate (W^{2i,j}_m = (2i)!/(2i+2m)! |d_t^m V^{2i,j}|,
// right side Cat(j) sum over compositions of i+m-j). Requires the u^2 table.
BoundCertificate catalan_bound_check_quadratic(const CoeffTable& tab, int i_half, int j, int m,
                                               const std::vector<double>& t_grid);

// General-machinery certificate (W^{i,j}_n = i!/(i+2n-2)! |d_t^n V^{i,j}|,
// clamping negative factorial arguments at 0!). The L-sum of the majorant is
// truncated at 2J + L_extra; truncation only lowers the right side, so a pass
// remains a valid certificate. Requires Theta = -(theta0+theta1 i0+...) > 0
// for every stored Q index.
BoundCertificate catalan_bound_check_general(const CoeffTable& tab, int i, int j, int n,
                                             const std::vector<double>& t_grid, double C,
                                             int L_extra = 3);

// All-entry sweep used by the CLI: quadratic certificates for every table
// entry with j >= 1, i+m within the desk-scale window.
std::vector<BoundCertificate> catalan_bound_sweep(const CoeffTable& tab,
                                                  const std::vector<double>& t_grid, int m_max);

struct DomainCertificate {
    EvalDomain domain;
    double ratio_at_boundary = 1.0;  // max of the majorant ratio on the boundary grid
    double C_eps = 0;
    double C_growth = 0;  // combined constant in the exponent
    bool found = false;
    std::string note;
};

// Finds c > 0 with the paper's geometric ratio < 1/2 on the boundary grid
// |x|^2 = c/t, t in (0, t_max]. Constants are measured: C_eps from the
// phi-derivative bound, C from the Q data and the product-estimate sweep.
DomainCertificate domain_certificate(const QTaylor& q, const ExponentProfile& theta,
                                     const Rational& eps, double t_max = 0.5);

// Measured smallest order I0 with |S_{I+2} - S_I| / |S_I| <= 2^{-(I-I0)} on the
// test grid, for partial sums of eval_us at s = 1.
struct ConvergenceReport {
    int I0 = -1;
    bool pass = false;
    std::vector<double> ratios;  // per increment, worst over the grid
};
ConvergenceReport partial_sum_convergence(const QTaylor& q, const ExponentProfile& theta, int I_max,
                                          int J, const EvalDomain& dom,
                                          const std::vector<std::pair<double, double>>& xt_grid);

}  // namespace flatgerm
