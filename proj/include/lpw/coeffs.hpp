#pragma once

#include <cstdint>
#include <vector>

#include "lpw/group_json.hpp"
#include "lpw/rational.hpp"

namespace lpw {

/// Subsets of {1..64} as bitmasks; bit j-1 stands for index j.
using Subset = std::uint64_t;

/// a_s = eps1 / sum_{j in s} j!, a_empty = eps1.
struct SubsetCoeffs {
    BigRational eps1{BigRational(1, 60)};

    BigRational a(Subset s) const;
    BigRational a(const std::vector<std::size_t>& indices) const;

    static SubsetCoeffs defaults() { return SubsetCoeffs{}; }
};

struct CoeffCheck {
    bool aone = true;
    bool aunion = true;
    bool asubset = true;
    BigRational worst_subset_sum{0};  // max_s sum_{v subset s} a_v a_{s\v} / a_s
    Subset worst_subset = 0;
    Subset witness_s = 0;
    Subset witness_v = 0;
    bool all() const { return aone && aunion && asubset; }
};

/// Exhaustive check of (aone), (aunion) and (asubset) over all subsets of {1..k}.
CoeffCheck check_coeffs(const SubsetCoeffs& coeffs, int k);

struct AlphaCheck {
    bool alphaone = true;           // 0 < alpha_j < 1
    BigRational product_one_plus;   // prod (1 + alpha_j), exact
    BigRational product_zero;       // prod (1 + alpha_j^2 u_j(0)), exact upper bound
    BigRational alpha_sum;          // sum alpha_j, compared against ln 2 from below
    bool kj = true;                 // prod (1 + alpha_j) < 2
    bool zero = true;               // prod (1 + alpha_j^2 (u_j*u_j)(0)) < 2
    bool log_sum = true;            // sum alpha_j < ln 2
    bool all() const { return alphaone && kj && zero && log_sum; }
};

/// alpha_j = 3^{-j} / max(1, u_j(0)).
std::vector<BigRational> default_alphas(const std::vector<BigRational>& zero_values);

/// Checks the alpha constraints with u_j(0) standing in for (u_j*u_j)(0).
AlphaCheck check_alphas(const std::vector<BigRational>& alphas, const std::vector<BigRational>& zero_values);

std::string subset_str(Subset s);

}  // namespace lpw
