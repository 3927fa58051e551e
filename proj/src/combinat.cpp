#include "flatgerm/combinat.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace flatgerm {
namespace combinat {

BigNat catalan(int idx, CatalanConvention conv) {
    if (conv == CatalanConvention::standard) {
        if (idx < 0) throw std::invalid_argument("catalan: j must be >= 0");
        return binomial(2 * static_cast<unsigned>(idx), static_cast<unsigned>(idx)) / (idx + 1);
    }
    if (idx < 1) throw std::invalid_argument("catalan: shifted index must be >= 1");
    return binomial(2 * static_cast<unsigned>(idx) - 2, static_cast<unsigned>(idx) - 1) / idx;
}

std::uint64_t catalan_bruteforce(int j) {
    if (j < 0) throw std::invalid_argument("catalan_bruteforce: j must be >= 0");
    std::uint64_t count = 0;
    // depth-first over prefixes with nonnegative partial sums
    std::function<void(int, int)> walk = [&](int placed, int height) {
        if (placed == 2 * j) {
            if (height == 0) ++count;
            return;
        }
        if (height + (2 * j - placed) < 0) return;
        walk(placed + 1, height + 1);
        if (height > 0) walk(placed + 1, height - 1);
    };
    walk(0, 0);
    return count;
}

namespace {

// Enumerates compositions of `total` into `parts` entries each >= minval.
void for_compositions(int total, int parts, int minval,
                      const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur(static_cast<std::size_t>(parts));
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == parts - 1) {
            if (remaining >= minval) {
                cur[static_cast<std::size_t>(idx)] = remaining;
                fn(cur);
            }
            return;
        }
        const int upper = remaining - minval * (parts - 1 - idx);
        for (int v = minval; v <= upper; ++v) {
            cur[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1, remaining - v);
        }
    };
    if (parts <= 0) {
        if (total == 0) fn({});
        return;
    }
    rec(0, total);
}

}  // namespace

bool forest_identity_check(int n) {
    if (n < 2) throw std::invalid_argument("forest_identity_check: n must be >= 2");
    BigNat rhs = 0;
    for (int m = 1; m <= n - 1; ++m) {
        for_compositions(n - 1, m, 1, [&](const std::vector<int>& ks) {
            BigNat prod = 1;
            for (int k : ks) prod *= catalan(k, CatalanConvention::shifted);
            rhs += prod;
        });
    }
    return rhs == catalan(n, CatalanConvention::shifted);
}

BinaryIdentityResult binary_identity_check(int n) {
    if (n < 2) throw std::invalid_argument("binary_identity_check: n must be >= 2");
    BinaryIdentityResult out;
    {
        // standard: Cat(j0) = sum_{j1+j2 = j0-1} Cat(j1) Cat(j2), indices from 0
        const int j0 = n;
        BigNat rhs = 0;
        for (int j1 = 0; j1 <= j0 - 1; ++j1) rhs += catalan(j1) * catalan(j0 - 1 - j1);
        out.standard_ok = (rhs == catalan(j0));
    }
    const auto shifted_with_c0 = [&](const BigNat& c0) {
        BigNat rhs = 0;
        for (int m = 1; m <= n - 1; ++m) {
            const int other = n - 1 - m;  // ranges down to 0
            const BigNat right = other == 0 ? c0 : catalan(other, CatalanConvention::shifted);
            rhs += catalan(m, CatalanConvention::shifted) * right;
        }
        return rhs == catalan(n, CatalanConvention::shifted);
    };
    out.shifted_c0_one_ok = shifted_with_c0(1);
    out.shifted_c0_zero_ok = shifted_with_c0(0);
    return out;
}

bool variable_branching_bound_check(int L, int j0) {
    const int total = L + j0;
    if (total > 14) throw std::invalid_argument("variable_branching_bound_check: L+j0 too large");
    if (total < 1) throw std::invalid_argument("variable_branching_bound_check: L+j0 must be >= 1");
    // checked in both index conventions: parts and right side in the same one
    for (const auto conv : {CatalanConvention::shifted, CatalanConvention::standard}) {
        BigNat lhs = 0;
        for (int alpha = 2; alpha <= total - 1; ++alpha) {
            for_compositions(total - 1, alpha, 1, [&](const std::vector<int>& parts) {
                BigNat prod = 1;
                for (int p : parts) prod *= catalan(p, conv);
                lhs += prod;
            });
        }
        if (lhs > catalan(total, conv)) return false;
    }
    return true;
}

bool multinomial_split_check(int X, int Y, int Z, const std::vector<int>& l_vec) {
    int sum_l = 0;
    for (int l : l_vec) {
        if (l < 0) throw std::invalid_argument("multinomial_split_check: negative row");
        sum_l += l;
    }
    if (sum_l != X + Y + Z)
        throw std::invalid_argument("multinomial_split_check: sum l_i must equal X+Y+Z");

    BigNat lhs = 0;
    const int rows = static_cast<int>(l_vec.size());
    std::vector<int> xs(static_cast<std::size_t>(rows)), ys(static_cast<std::size_t>(rows));
    std::function<void(int, int, int, BigNat)> rec = [&](int idx, int xleft, int yleft,
                                                         BigNat partial) {
        if (idx == rows) {
            if (xleft == 0 && yleft == 0) lhs += partial;
            return;
        }
        const int l = l_vec[static_cast<std::size_t>(idx)];
        for (int x = 0; x <= std::min(l, xleft); ++x) {
            for (int y = 0; y <= std::min(l - x, yleft); ++y) {
                const int z = l - x - y;
                BigNat w = factorial(static_cast<unsigned>(l));
                w /= factorial(static_cast<unsigned>(x));
                w /= factorial(static_cast<unsigned>(y));
                w /= factorial(static_cast<unsigned>(z));
                rec(idx + 1, xleft - x, yleft - y, partial * w);
            }
        }
    };
    rec(0, X, Y, BigNat(1));

    BigNat rhs = factorial(static_cast<unsigned>(X + Y + Z));
    rhs /= factorial(static_cast<unsigned>(X));
    rhs /= factorial(static_cast<unsigned>(Y));
    rhs /= factorial(static_cast<unsigned>(Z));
    return lhs == rhs;
}

namespace {

Rational prod_ratio(const std::vector<int>& parts, int v) {
    Rational prod = 1;
    for (int p : parts) {
        if (2 * p - v < 0) throw std::invalid_argument("prod_ratio: 2 i_j - v < 0");
        prod *= Rational(factorial(static_cast<unsigned>(p)),
                         factorial(static_cast<unsigned>(2 * p - v)));
    }
    return prod;
}

bool is_balanced(const std::vector<int>& parts) {
    int lo = parts[0], hi = parts[0];
    for (int p : parts) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return hi - lo <= 1;
}

}  // namespace

bool balanced_maximizer_check(int i, int k, int v) {
    if (v < 0 || v > 2) throw std::invalid_argument("balanced_maximizer_check: v in {0,1,2}");
    if (k < 1 || i < k) throw std::invalid_argument("balanced_maximizer_check: need i >= k >= 1");
    Rational best = -1;
    std::vector<int> argbest;
    for_compositions(i, k, 1, [&](const std::vector<int>& parts) {
        const Rational val = prod_ratio(parts, v);
        if (val > best) {
            best = val;
            argbest = parts;
        }
    });
    // closed form: k - i + k[i/k] parts of size [i/k], i - k[i/k] parts of size [i/k]+1
    const int q = i / k;
    const int hi_parts = i - k * q;
    const int lo_parts = k - hi_parts;
    std::vector<int> balanced;
    balanced.insert(balanced.end(), static_cast<std::size_t>(lo_parts), q);
    balanced.insert(balanced.end(), static_cast<std::size_t>(hi_parts), q + 1);
    const Rational closed = prod_ratio(balanced, v);
    return is_balanced(argbest) && best == closed;
}

double prod_estimate_min_constant(int i, int k, int v) {
    if (v < 0 || v > 2) throw std::invalid_argument("prod_estimate_min_constant: v in {0,1,2}");
    Rational worst = 0;  // max over compositions of prod * i! / k^i
    for_compositions(i, k, 1, [&](const std::vector<int>& parts) {
        const Rational val = prod_ratio(parts, v);
        if (val > worst) worst = val;
    });
    // C^i >= worst * i!/k^i  =>  C = (worst * i!/k^i)^{1/i}
    const double log_w = log_abs(worst) + log_abs(factorial(static_cast<unsigned>(i))) -
                         i * std::log(static_cast<double>(k));
    return std::exp(log_w / i);
}

bool robbins_check(int n_max) {
    if (n_max < 1) throw std::invalid_argument("robbins_check: n must be >= 1");
    constexpr long double kPi = 3.141592653589793238462643383279502884L;
    long double lnfact = 0.0L;
    for (int n = 1; n <= n_max; ++n) {
        lnfact += std::log(static_cast<long double>(n));
        const long double base =
            0.5L * std::log(2.0L * kPi * n) + n * (std::log(static_cast<long double>(n)) - 1.0L);
        const long double lower = base + 1.0L / (12.0L * n + 1.0L);
        const long double upper = base + 1.0L / (12.0L * n);
        if (!(lower < lnfact && lnfact < upper)) return false;
    }
    return true;
}

}  // namespace combinat
}  // namespace flatgerm
