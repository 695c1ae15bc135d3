#pragma once

#include <optional>
#include <vector>

#include "lpw/certificate.hpp"
#include "lpw/weight.hpp"

namespace lpw {

/// One row of the series sum_n log+ w(nx) / n^2.
struct DomarTerm {
    long n = 0;
    double log_plus = 0.0;
    std::optional<BigRational> exact_log_plus;
    double partial = 0.0;
    std::optional<BigRational> exact_partial;
};

/// Partial sums S_1..S_N. Exact while every log+ w(nx) is rational.
std::vector<DomarTerm> domar_partial(const WeightFn& w, const GroupPoint& x, long N);

enum class DomarClass { Convergent, Divergent, Inconclusive };
const char* to_string(DomarClass c);

/// Convergent: log+ w(nx) <= a + d log n, so every partial sum is below
///   cap = a zeta(2) + d sum log n / n^2.
/// Divergent: log+ w(nx) >= c n / rho(n) with sum 1/(n rho(n)) = infinity.
/// The partial sums up to n_check are computed and compared with the bound.
Certificate domar_classify(const WeightFn& w, const GroupPoint& x, long n_check = 1000);
DomarClass domar_class(const Certificate& c);

}  // namespace lpw
