#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpw/rational.hpp"

namespace lpw {

/// Closed enclosure [lo, hi] of a quantity known only up to truncation or rounding.
template <class T>
struct Interval {
    T lo{};
    T hi{};

    Interval() = default;
    Interval(T l, T h) : lo(std::move(l)), hi(std::move(h))
    {
        if (hi < lo) throw std::logic_error("Interval: lo > hi");
    }
    static Interval point(const T& v) { return Interval(v, v); }

    bool contains(const T& v) const { return !(v < lo) && !(hi < v); }
    T width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
};

using RationalInterval = Interval<BigRational>;
using FloatInterval = Interval<double>;

// Float intervals are widened by one ulp after every operation, which is
// enough for IEEE round-to-nearest arithmetic and glibc's < 1 ulp libm.
inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

FloatInterval operator+(const FloatInterval& a, const FloatInterval& b);
FloatInterval operator-(const FloatInterval& a, const FloatInterval& b);
FloatInterval operator*(const FloatInterval& a, const FloatInterval& b);
FloatInterval operator/(const FloatInterval& a, const FloatInterval& b);
FloatInterval hull(const FloatInterval& a, const FloatInterval& b);
/// Outward-rounded enclosure of an exact rational.
FloatInterval enclose(const BigRational& v);
/// Enclosure of a double computed with at most `ulps` rounding error.
FloatInterval widen(double v, int ulps = 1);
FloatInterval log(const FloatInterval& a);
FloatInterval sqrt(const FloatInterval& a);

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
/// Product of nonnegative enclosures.
RationalInterval mul_nonneg(const RationalInterval& a, const RationalInterval& b);

/// Rational enclosure of exp(x) from the Taylor series with a geometric remainder bound.
RationalInterval exp_bounds(const BigRational& x, int terms = 40);

/// Rational enclosures of the constants the certificates need.
namespace constants {
RationalInterval pi();
RationalInterval ln2();
RationalInterval zeta2();            // pi^2/6
RationalInterval zeta4();            // pi^4/90
RationalInterval sum_log_over_sq();  // sum_{n>=2} log(n)/n^2 = -zeta'(2)
}  // namespace constants

}  // namespace lpw
