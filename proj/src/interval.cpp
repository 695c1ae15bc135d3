#include "lpw/interval.hpp"

#include <array>

namespace lpw {

FloatInterval operator+(const FloatInterval& a, const FloatInterval& b)
{
    return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

FloatInterval operator-(const FloatInterval& a, const FloatInterval& b)
{
    return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

FloatInterval operator*(const FloatInterval& a, const FloatInterval& b)
{
    const std::array<double, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {round_down(*mn), round_up(*mx)};
}

FloatInterval operator/(const FloatInterval& a, const FloatInterval& b)
{
    if (b.lo <= 0.0 && b.hi >= 0.0) throw std::domain_error("FloatInterval: division by an interval containing 0");
    const std::array<double, 4> p{a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {round_down(*mn), round_up(*mx)};
}

FloatInterval hull(const FloatInterval& a, const FloatInterval& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

FloatInterval enclose(const BigRational& v)
{
    const double d = v.to_double();
    const BigRational back = BigRational::from_double(d);
    if (back == v) return FloatInterval::point(d);
    return back < v ? FloatInterval(d, round_up(d)) : FloatInterval(round_down(d), d);
}

FloatInterval widen(double v, int ulps)
{
    double lo = v;
    double hi = v;
    for (int i = 0; i < ulps; ++i) {
        lo = round_down(lo);
        hi = round_up(hi);
    }
    return {lo, hi};
}

FloatInterval log(const FloatInterval& a)
{
    if (a.lo <= 0.0) throw std::domain_error("FloatInterval: log of non-positive interval");
    return {round_down(std::log(a.lo)), round_up(std::log(a.hi))};
}

FloatInterval sqrt(const FloatInterval& a)
{
    if (a.lo < 0.0) throw std::domain_error("FloatInterval: sqrt of negative interval");
    return {round_down(std::sqrt(a.lo)), round_up(std::sqrt(a.hi))};
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b)
{
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval mul_nonneg(const RationalInterval& a, const RationalInterval& b)
{
    if (a.lo.sign() < 0 || b.lo.sign() < 0) throw std::domain_error("mul_nonneg: negative enclosure");
    return {a.lo * b.lo, a.hi * b.hi};
}

RationalInterval exp_bounds(const BigRational& x, int terms)
{
    if (x.sign() < 0) {
        const RationalInterval e = exp_bounds(-x, terms);
        return {BigRational(1) / e.hi, BigRational(1) / e.lo};
    }
    // Partial sum S_K and remainder x^{K+1}/(K+1)! * 1/(1 - x/(K+2)), valid for x < K+2.
    const BigRational bound(terms + 2);
    if (!(x < bound)) {
        const RationalInterval h = exp_bounds(x / BigRational(2), terms);
        return {h.lo * h.lo, h.hi * h.hi};
    }
    BigRational sum(1);
    BigRational term(1);
    for (int k = 1; k <= terms; ++k) {
        term *= x;
        term /= BigRational(k);
        sum += term;
    }
    BigRational rem = term * x / BigRational(terms + 1);
    rem /= BigRational(1) - x / bound;
    return {sum, sum + rem};
}

namespace constants {

namespace {
RationalInterval decimal(const char* lo, const char* hi)
{
    return {BigRational::parse(lo), BigRational::parse(hi)};
}
}  // namespace

RationalInterval pi() { return decimal("3.1415926535897932384", "3.1415926535897932385"); }
RationalInterval ln2() { return decimal("0.6931471805599453094", "0.6931471805599453095"); }
RationalInterval zeta2() { return decimal("1.6449340668482264364", "1.6449340668482264365"); }
RationalInterval zeta4() { return decimal("1.0823232337111381915", "1.0823232337111381916"); }
RationalInterval sum_log_over_sq() { return decimal("0.9375482543158437537", "0.9375482543158437538"); }

}  // namespace constants

}  // namespace lpw
