#pragma once

#include <functional>
#include <string>

#include "lpw/group_json.hpp"

namespace lpw {

/// Composite Gauss-Kronrod: panels of width <= h, 31-point rule per panel.
struct QuadratureSpec {
    double h = 1.0 / 64.0;
    double T = 1000.0;
    double tol = default_tolerance();
    std::string singular = "chebyshev-substitution";
    /// 1e-9, or LPW_TOLERANCE from the environment.
    static double default_tolerance();
    Json to_json() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // sum of per-panel Kronrod error estimates
    int panels = 0;
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double h);

}  // namespace lpw
