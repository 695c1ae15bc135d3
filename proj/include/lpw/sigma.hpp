#pragma once

#include "lpw/group_json.hpp"
#include "lpw/interval.hpp"

namespace lpw {

/// sigma(n) = 1 / max(1, |n|)^2.
BigRational sigma(const BigInt& n);

/// Enclosure of f(m) = max(1,|m|)^2 * sum_n sigma(n) sigma(m - n), summing |n| <= K
/// and adding the tail over |n| > K.
FloatInterval sigma_ratio_at(long m, long K);

/// Upper envelope valid for every m >= M' >= 2.
FloatInterval sigma_envelope(long m_from);

struct SigmaConstant {
    long M = 0;
    long K = 0;
    FloatInterval c2;          // encloses sup_m f(m)
    FloatInterval f0;          // f(0) = 1 + 2 zeta(4)
    long argmax = 0;           // scanned m with the largest lower bound
    FloatInterval envelope;    // bound for m > M
    RationalInterval c2_exact() const;
    Json to_json() const;
};

/// Subconvolutive constant C2 with sum_n sigma(n) sigma(m-n) <= C2 sigma(m) for all m.
SigmaConstant sigma_subconvolutive_constant(long M = 1000);

/// Shared M = 1000 result, computed once.
const SigmaConstant& default_sigma_constant();

}  // namespace lpw
