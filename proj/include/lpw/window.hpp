#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpw/group.hpp"
#include "lpw/group_json.hpp"

namespace lpw {

/// Cutoffs for truncated convolution sums.
///   layers: N for Z(p^inf) and Q, per-summand L for direct sums
///   range:  B for Q (sum over |y| <= B)
///   closed_form: use the exact layer formula to exhaustion where one exists
struct Truncation {
    int layers = 8;
    long range = 40;
    bool closed_form = false;

    /// "N=8", "N=5,B=40", "L=6", "full".
    static Truncation parse(std::string_view text);
    Json to_json() const;
};

/// Finite, negation-closed set of points of one group.
struct Window {
    std::string spec;
    GroupDescriptor group;
    std::vector<GroupPoint> points;
    std::uint64_t seed = 0;
    bool seeded = false;

    bool negation_closed() const;
    Json to_json() const;
};

/// All of G_n in Z(p^inf): k/p^n for 0 <= k < p^n.
Window pruefer_layer_window(std::uint64_t p, int n);
/// Q_n intersected with [-bound, bound].
Window rationals_window(const GroupDescriptor& g, int n, long bound);
/// Seeded sample of direct-sum points with coordinates in G_{j,layer}, closed under negation.
Window sampled_sum_window(const GroupDescriptor& g, std::size_t count, int layer, std::uint64_t seed);
/// t = k/K on the circle.
Window circle_grid(long K);
/// Symmetric grid on R^1 with n points on [a, b].
Window real_grid(double a, double b, int n);
/// Explicit points, completed under negation.
Window explicit_window(const GroupDescriptor& g, std::vector<GroupPoint> points);

/// "G_4", "Q_3:3", "sample:200:4:SEED", "grid:K", "grid:-5:5:101", "points:a;b;c".
Window make_window(const GroupDescriptor& g, std::string_view spec);

}  // namespace lpw
