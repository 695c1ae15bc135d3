#pragma once

#include "lpw/interval.hpp"
#include "lpw/weight.hpp"
#include "lpw/window.hpp"

namespace lpw {

/// Enclosure of (u*u)(x) = sum_y u(y) u(x - y) on a discrete group:
/// lo is the exact sum over the truncation set, hi adds a tail bound taken
/// from the closed form of the weight's phi sequence.
RationalInterval conv_at(const WeightFn& u, const GroupPoint& x, const Truncation& trunc);

/// Pieces of the Q enclosure, for reporting.
struct RationalsConvParts {
    BigRational partial;
    BigRational layer_tail;
    BigRational range_tail;
};
RationalsConvParts rationals_conv_parts(const WeightFn& u, const GroupPoint& x, const Truncation& trunc);

}  // namespace lpw
