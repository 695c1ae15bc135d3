#pragma once

#include <vector>

#include "lpw/certificate.hpp"
#include "lpw/rational.hpp"
#include "lpw/weight.hpp"

namespace lpw {

/// q_1 = 2, q_n = q_{n-1} m_n with m_n the least integer such that q_n > 2 q_{n-1} exp(q_{n-1}^2),
/// and alpha = sum 1/q_n.
///
/// q_1, q_2 are stored exactly. q_3 has about 21000 decimal digits and is
/// kept only through the lower bound q_3 >= 2 q_2 2^{k3}, k3 = floor(q_2^2 / ln 2).
struct QSequence {
    int depth = 2;
    std::vector<BigInt> q;           // concrete entries
    std::vector<BigInt> multiplier;  // m_n, with m_1 = q_1
    BigInt next_factor;              // 2 q_last
    unsigned long next_log2 = 0;     // k3
    /// Lower bound for the first symbolic entry.
    BigInt next_lower() const;
    std::size_t concrete() const { return q.size(); }
    Json to_json() const;
};

/// depth in {2, 3}; larger depths are refused.
QSequence build_q_sequence(int depth);

/// {q_n alpha} < 2 q_n / q_{n+1} and < exp(-q_n^2), 1 <= n <= concrete().
Certificate check_q_fractional_bound(const QSequence& seq, int n);

/// |log w({q_n alpha})| / q_n^2 >= 1/4 for w(t) = t^{1/4} and each verifiable n.
Certificate countex_divergence_lower_bound(const QSequence& seq, const WeightFn& w);

}  // namespace lpw
