#pragma once

#include <string>
#include <vector>

#include "lpw/certificate.hpp"
#include "lpw/interval.hpp"
#include "lpw/quadrature.hpp"
#include "lpw/weight.hpp"

namespace lpw {

/// int_{-T}^{T} log+ w(t) / (1+t^2) dt, computed in t = tan(theta), plus a
/// finite/infinite classification from the growth family of w.
/// Verdict: Holds = finite, Fails = infinite.
Certificate beurling_integral(const WeightFn& w, const QuadratureSpec& spec = {});
/// "finite", "infinite" or "inconclusive".
std::string beurling_class(const Certificate& c);

/// int_0^t s^{-1/2} (t-s)^{-1/2} ds, which equals pi.
QuadResult beta_segment(double t, const QuadratureSpec& spec = {});
/// int_t^1 s^{-1/2} (1+t-s)^{-1/2} ds: the part of the circle convolution that wraps mod 1.
QuadResult wrap_segment(double t, const QuadratureSpec& spec = {});
/// (u*u)(t) for u = t^{-1/2} on [0,1): pi + pi - 4 atan(sqrt t).
double circle_conv_closed_form(double t);

struct CircleRatio {
    FloatInterval sup;  // encloses sup_t (u*u)(t)/u(t)
    double max_beta_deviation = 0.0;
    double max_wrap_deviation = 0.0;
    Certificate cert;
};
/// u = builtin circle-inv-sqrt (any scale). Grid of `grid` points in (0,1) for the
/// quadrature cross-checks, branch and bound for the supremum.
CircleRatio circle_conv_ratio(const WeightFn& u, const QuadratureSpec& spec = {}, int grid = 20);

/// (u_R*u_R)(t) for the raw Cauchy weight 1/(1+t^2).
QuadResult line_conv_value(double t, const QuadratureSpec& spec = {});
/// 2 pi / (4 + t^2).
double line_conv_closed_form(double t);

struct LineRatio {
    int d = 1;
    FloatInterval sup;
    FloatInterval at_zero;
    double max_deviation = 0.0;
    Certificate cert;
};
/// Ratio (u_R*u_R)/u_R of the raw weight on [-range, range], d-th power for R^d.
LineRatio line_conv_ratio(int d = 1, const QuadratureSpec& spec = {}, double range = 10.0, int points = 201);

}  // namespace lpw
