#pragma once

#include "flatgerm/rational.hpp"

#include <cstdint>
#include <vector>

namespace flatgerm {
namespace combinat {

// Two index conventions coexist in the source material: the standard Cat(j)
// with Cat(0) = 1, and the shifted C_n = Cat(n-1) with C_1 = 1.
enum class CatalanConvention { standard, shifted };

// Exact Catalan number: Cat(j) = binom(2j,j)/(j+1), or C_n = binom(2n-2,n-1)/n.
BigNat catalan(int idx, CatalanConvention conv = CatalanConvention::standard);

// Brute-force oracle: counts balanced +-1 sequences by backtracking.
std::uint64_t catalan_bruteforce(int j);

// C_n = sum_{m=1}^{n-1} sum_{k_1+..+k_m = n-1, k_i >= 1} prod C_{k_i}, n >= 2.
bool forest_identity_check(int n);

// The binary recursion under a given handling of the index-0 term.
// standard: Cat(j0) = sum_{j1+j2=j0-1, j1,j2>=0} Cat(j1) Cat(j2)
// shifted with C_0 := 1 holds; shifted with C_0 := 0 fails at n = 2.
struct BinaryIdentityResult {
    bool standard_ok = false;
    bool shifted_c0_one_ok = false;
    bool shifted_c0_zero_ok = false;
};
BinaryIdentityResult binary_identity_check(int n);

// sum_{alpha=2}^{L+j0-1} sum_{(L_k+j_k) comps of L+j0-1 into alpha parts, each >= 1}
//   prod Cat(L_k + j_k)  <=  Cat(L + j0)
// exact enumeration on both sides, verified under both index conventions;
// refuses above total = 14.
bool variable_branching_bound_check(int L, int j0);

// sum over row splittings x_i+y_i+z_i = l_i with column sums (X,Y,Z) of
// prod l_i!/(x_i!y_i!z_i!) equals (X+Y+Z)!/(X!Y!Z!).
bool multinomial_split_check(int X, int Y, int Z, const std::vector<int>& l_vec);

// Brute-force max of prod i_j!/(2 i_j - v)! over compositions of i into k
// positive parts; the max is attained at a balanced composition and equals
// the closed form ([i/k] vs [i/k]+1 parts).
bool balanced_maximizer_check(int i, int k, int v);

// Minimal C with prod i_j!/(2 i_j - v)! <= C^i k^i / i! over all compositions.
double prod_estimate_min_constant(int i, int k, int v);

// sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} < n! < sqrt(2 pi n)(n/e)^n e^{1/(12n)},
// strict, with ln n! accumulated as sum ln k in extended precision.
bool robbins_check(int n_max);

}  // namespace combinat
}  // namespace flatgerm
