#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lpw/certificate.hpp"
#include "lpw/conv.hpp"
#include "lpw/weight.hpp"
#include "lpw/window.hpp"

namespace lpw {

/// (b): conv_at(u,x).hi <= bound * u(x) on every window point (bound defaults to 1).
/// Window points are processed concurrently; the result does not depend on the thread count.
Certificate check_b(const WeightFn& u, const Window& window, const Truncation& trunc,
                    std::optional<BigRational> bound = std::nullopt, unsigned threads = 0);

/// (a) u > 0. On continuous groups zero values on a null set are excluded when ae is set.
Certificate check_positivity(const WeightFn& u, const Window& window, bool ae = true);
/// (c) u(x) = u(-x).
Certificate check_evenness(const WeightFn& u, const Window& window);
/// (a) and (c) together.
Certificate check_parity_positivity(const WeightFn& u, const Window& window, bool ae = true);

/// Constants with 1/u(nx) <= C n^d for all n >= 1, derived from the construction.
struct DecayBound {
    BigRational C;
    int d = 0;
};
std::optional<DecayBound> poly_decay_bound(const WeightFn& u, const GroupPoint& x);
/// (d) with explicit (C, d), checked for n = 1..N.
Certificate check_poly_decay(const WeightFn& u, const GroupPoint& x, int N = 20);

enum class SubmultMode { Exact, Invariance };
/// w(s+t) <= w(s) w(t) on the given pairs (all window pairs when empty, seeded
/// sample when the window is large). Invariance mode reports max_t w(s+t)/w(t) per s.
Certificate check_submultiplicative(const WeightFn& w, const Window& window, SubmultMode mode = SubmultMode::Exact,
                                    std::vector<std::pair<GroupPoint, GroupPoint>> pairs = {},
                                    std::uint64_t seed = 1, std::size_t max_pairs = 4096);

/// Exact min and max of w1/w2 over the window when both are exact.
Certificate weight_equivalence(const WeightFn& w1, const WeightFn& w2, const Window& window);

/// Minimum over the window plus the construction's global lower bound.
Certificate ess_inf_check(const WeightFn& w, const Window& window);

/// (aone), (aunion), (asubset) over subsets of {1..k}.
Certificate check_subset_coeffs(const SubsetCoeffs& coeffs, int k);
/// alpha constraints of a direct-sum weight.
Certificate check_alpha_constraints(const WeightFn& sum);

}  // namespace lpw
