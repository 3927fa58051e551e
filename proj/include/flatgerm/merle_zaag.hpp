#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flatgerm {
namespace mz {

struct MZParams {
    double b = 1, b1 = 1, b2 = 1;
    double eps = 0;

    void validate() const;
};

// Sampled nonnegative component paths on a uniform grid over [0, T].
struct Trajectory {
    std::vector<double> t;
    std::vector<double> x_plus, x_zero, x_minus;

    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
    std::string to_csv() const;
};

enum class Branch : std::uint8_t { none, a_zero_dominates, b_minus_dominates };

struct MZVerdict {
    bool hyp_ok = false;
    bool plus_bound_ok = false;   // x_+ <= 2 (eps/b)(x_0 + x_-) at every node
    Branch branch = Branch::none;
    double s0 = -1;               // branch A onset
    bool decay_ok = false;        // branch B: e^{(b2-eps)s}(x_+ + x_0 + x_-) tail decreasing
    bool inconclusive = false;
    double tol = 0;
    std::string detail;

    bool conclusive_pass() const {
        return hyp_ok && plus_bound_ok && branch != Branch::none && !inconclusive &&
               (branch != Branch::b_minus_dominates || decay_ok);
    }
    std::string to_json() const;
};

// Central-difference check of the three differential inequalities
//   |x_0'| <= eps (x_+ + x_0 + x_-)
//   x_+'  >= b1 x_+ - eps (x_0 + x_-)
//   x_-'  <= -b2 x_- + eps (x_0 + x_+)
// at interior nodes, within tol relative to the local scale. Refuses grids
// with dt * max(b1, b2) > 0.1.
bool verify_hypotheses(const Trajectory& traj, const MZParams& p, double tol,
                       std::string* first_failure = nullptr);

// Conclusion checker: the plus bound at every node, then branch A on trailing
// windows (x_- <= 8 eps/b x_0 on [s0, T] for some s0 <= 0.8 T), else branch B
// globally (x_0 <= 20 eps/b x_- on [0, T]) with a decreasing tail of
// e^{(b2-eps)s}(x_+ + x_0 + x_-). Neither branch -> inconclusive verdict.
MZVerdict verify_conclusions(const Trajectory& traj, const MZParams& p, double tol);

enum class GeneratorMode : std::uint8_t { mixed, neutral_dominant, stable_dominant };

// Linear system x' = M x built so the hypotheses hold with per-seed slack
// factors in [0,1]; x_+(0) sits on the numerically-shot stable manifold so
// x_+(T) ~ 0 stands in for liminf x_+ = 0. Throws if shooting cannot reach
// the target (caller regenerates with a new seed).
Trajectory generate_random_system(std::uint64_t seed, const MZParams& p, double T, double dt,
                                  GeneratorMode mode = GeneratorMode::mixed);

struct SweepRow {
    double eps_over_b;
    int n_seeds;
    int failures;       // conclusive failures or inconclusive verdicts
    int hyp_failures;   // trajectories whose hypotheses did not verify
};

// Empirical failure-rate curve over eps/b values; deterministic per
// (master_seed, index) substream.
std::vector<SweepRow> epsilon_threshold_probe(const std::vector<double>& eps_over_b,
                                              int n_seeds, std::uint64_t master_seed, double T,
                                              double dt);

// Cubic-Hermite resample of x(t/b) onto the same grid layout, for the
// rescaling-invariance property (uses the generator's linear dynamics only
// through finite differences of the samples).
Trajectory rescale_to_unit_b(const Trajectory& traj, const MZParams& p);

}  // namespace mz
}  // namespace flatgerm
