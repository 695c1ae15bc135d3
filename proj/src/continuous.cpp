#include "lpw/continuous.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpw {

namespace {

constexpr double kPi = std::numbers::pi;

double up(double v, int k = 4)
{
    for (int i = 0; i < k; ++i) v = round_up(v);
    return v;
}

double down(double v, int k = 4)
{
    for (int i = 0; i < k; ++i) v = round_down(v);
    return v;
}

Json interval_json(const FloatInterval& v)
{
    return {{"lo", v.lo}, {"hi", v.hi}};
}

enum class Family { Finite, Infinite, Unknown };

struct BeurlingFamily {
    Family family = Family::Unknown;
    std::string reason;
    // Finite case: per-side tail bound for int_T^inf.
    double tail = 0.0;
    double closed_form = -1.0;
};

BeurlingFamily classify_family(const WeightFn& w, double T)
{
    BeurlingFamily f;
    const bool unit = w.scale() == BigRational(1);
    if (std::holds_alternative<EuclideanNode>(w.node().data)) {
        if (auto s = w.sup_upper(); s && *s <= BigRational(1)) {
            f.family = Family::Finite;
            f.reason = "w <= 1";
            f.closed_form = 0.0;
        }
        return f;
    }
    const auto* b = std::get_if<BuiltinNode>(&w.node().data);
    if (!b) {
        f.reason = "no growth family; numeric value only";
        return f;
    }
    if (b->name == "circle-quarter" || b->name == "circle-inv-sqrt")
        throw std::invalid_argument("the Beurling integral is defined for weights on R");
    if (!unit && b->name != "one") {
        f.reason = "scaled formula weight; numeric value only";
        return f;
    }
    if (b->name == "one") {
        if (w.scale() <= BigRational(1)) {
            f.family = Family::Finite;
            f.reason = "w <= 1";
            f.closed_form = 0.0;
        }
        return f;
    }
    if (b->name == "poly2") {
        // log(1+t^2) <= log 2 + 2 log t for t >= 1.
        f.family = Family::Finite;
        f.reason = "log+ w(t) = O(log t)";
        f.tail = up((std::numbers::ln2 + 2.0 * std::log(T) + 2.0) / T);
        f.closed_form = 2.0 * kPi * std::numbers::ln2;
        return f;
    }
    f.family = Family::Infinite;
    if (b->name == "poly2-exp-log") {
        f.reason = "log+ w(t) >= t / log(e+t); int dt/(t log t) diverges";
    } else {
        f.reason = "log+ w(t) >= t on t > 0; int t/(1+t^2) dt diverges";
    }
    return f;
}

struct Cell {
    double a;
    double b;
    double upper;
};

}  // namespace

// ---- Beurling --------------------------------------------------------------

Certificate beurling_integral(const WeightFn& w, const QuadratureSpec& spec)
{
    if (w.group().kind != GroupKind::Real || w.group().dim != 1)
        throw std::invalid_argument("the Beurling integral is defined for weights on R");
    const double T = spec.T;
    if (!(T > 1.0)) throw std::invalid_argument("Beurling cutoff T must exceed 1");
    const BeurlingFamily fam = classify_family(w, T);
    auto g = [&](double theta) {
        const double t = std::tan(theta);
        return std::max(0.0, w.log_eval(real_point({t})));
    };
    const double tt = std::atan(T);
    const QuadResult neg = integrate(g, -tt, 0.0, spec.h);
    const QuadResult pos = integrate(g, 0.0, tt, spec.h);
    const double value = neg.value + pos.value;
    const double err = neg.error + pos.error + 1e-12 * std::max(1.0, std::fabs(value));
    const FloatInterval body(down(value - err), up(value + err));

    Certificate c;
    c.property = "beurling";
    c.weight = weight_ref(w);
    c.window = {{"T", T}};
    c.truncation = spec.to_json();
    c.payload["integral_lo"] = body.lo;
    c.payload["integral_hi"] = body.hi;
    c.payload["negative_half"] = neg.value;
    c.payload["positive_half"] = pos.value;
    c.payload["quadrature_error"] = err;
    c.payload["reason"] = fam.reason;
    switch (fam.family) {
    case Family::Finite: {
        const FloatInterval total(body.lo, up(body.hi + 2.0 * fam.tail));
        c.payload["classification"] = "finite";
        c.payload["tail_per_side"] = fam.tail;
        c.payload["total_lo"] = total.lo;
        c.payload["total_hi"] = total.hi;
        if (fam.closed_form >= 0.0) c.payload["closed_form"] = fam.closed_form;
        c.verdict = Verdict::Holds;
        break;
    }
    case Family::Infinite:
        c.payload["classification"] = "infinite";
        c.verdict = Verdict::Fails;
        break;
    default:
        c.payload["classification"] = "inconclusive";
        c.verdict = Verdict::Inconclusive;
        c.rigorous = false;
        break;
    }
    return c.seal();
}

std::string beurling_class(const Certificate& c)
{
    return c.payload.at("classification").get<std::string>();
}

// ---- circle ----------------------------------------------------------------

QuadResult beta_segment(double t, const QuadratureSpec& spec)
{
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("beta_segment needs t in (0,1)");
    // s = t sin^2(theta) removes both endpoint singularities.
    auto f = [t](double th) {
        const double sn = std::sin(th);
        const double cs = std::cos(th);
        const double s = t * sn * sn;
        const double r = t * cs * cs;
        return 2.0 * t * sn * cs / std::sqrt(s * r);
    };
    return integrate(f, 0.0, kPi / 2.0, spec.h);
}

QuadResult wrap_segment(double t, const QuadratureSpec& spec)
{
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("wrap_segment needs t in (0,1)");
    // s = (1+t) sin^2(theta), s from t to 1.
    const double L = 1.0 + t;
    auto f = [L](double th) {
        const double sn = std::sin(th);
        const double cs = std::cos(th);
        const double s = L * sn * sn;
        const double r = L * cs * cs;
        return 2.0 * L * sn * cs / std::sqrt(s * r);
    };
    const double a = std::asin(std::sqrt(t / L));
    const double b = std::asin(std::sqrt(1.0 / L));
    return integrate(f, a, b, spec.h);
}

double circle_conv_closed_form(double t)
{
    return 2.0 * kPi - 4.0 * std::atan(std::sqrt(t));
}

CircleRatio circle_conv_ratio(const WeightFn& u, const QuadratureSpec& spec, int grid)
{
    const auto* b = std::get_if<BuiltinNode>(&u.node().data);
    if (!b || b->name != "circle-inv-sqrt") throw std::invalid_argument("circle_conv_ratio expects builtin:circle-inv-sqrt");
    if (grid < 1) throw std::invalid_argument("circle_conv_ratio needs a positive grid");
    const double s = u.scale().to_double();
    CircleRatio out;
    Certificate& c = out.cert;
    c.property = "circle-ratio";
    c.weight = weight_ref(u);
    c.window = {{"grid", grid}};
    c.truncation = spec.to_json();

    Json rows = Json::array();
    double grid_max = 0.0;
    for (int k = 1; k <= grid; ++k) {
        const double t = static_cast<double>(k) / (grid + 1);
        const QuadResult beta = beta_segment(t, spec);
        const QuadResult wrap = wrap_segment(t, spec);
        const double wrap_exact = kPi - 4.0 * std::atan(std::sqrt(t));
        const double bd = std::fabs(beta.value - kPi);
        const double wd = std::fabs(wrap.value - wrap_exact);
        out.max_beta_deviation = std::max(out.max_beta_deviation, bd);
        out.max_wrap_deviation = std::max(out.max_wrap_deviation, wd);
        const double ratio = s * std::sqrt(t) * (beta.value + wrap.value);
        grid_max = std::max(grid_max, ratio);
        rows.push_back({{"t", t}, {"beta", beta.value}, {"beta_dev", bd}, {"wrap", wrap.value}, {"wrap_dev", wd},
                        {"ratio", ratio}});
    }
    if (out.max_beta_deviation > spec.tol || out.max_wrap_deviation > spec.tol)
        throw std::runtime_error("circle convolution: tolerance not met at the requested resolution");

    // conv is decreasing and sqrt is increasing, so sqrt(b) conv(a) bounds the ratio on [a,b].
    const double ratio_tol = 1e-6;
    auto conv_hi = [](double t) { return up(circle_conv_closed_form(t) * (1.0 + 1e-15)); };
    auto ratio_lo = [s](double t) { return down(s * std::sqrt(t) * circle_conv_closed_form(t) * (1.0 - 1e-15)); };
    double lower = 0.0;
    std::vector<Cell> work;
    const int start = 64;
    for (int i = 0; i < start; ++i) {
        const double a = static_cast<double>(i) / start;
        const double bb = static_cast<double>(i + 1) / start;
        if (a > 0.0) lower = std::max(lower, ratio_lo(a));
        work.push_back({a, bb, up(s * std::sqrt(bb) * conv_hi(a))});
    }
    double upper = 0.0;
    std::size_t cells = 0;
    while (!work.empty()) {
        const Cell cell = work.back();
        work.pop_back();
        if (cell.upper <= lower + ratio_tol) {
            upper = std::max(upper, cell.upper);
            continue;
        }
        if (++cells > 2000000 || cell.b - cell.a < 1e-15)
            throw std::runtime_error("circle ratio: tolerance not met at the requested resolution");
        const double m = 0.5 * (cell.a + cell.b);
        lower = std::max(lower, ratio_lo(m));
        work.push_back({cell.a, m, up(s * std::sqrt(m) * conv_hi(cell.a))});
        work.push_back({m, cell.b, up(s * std::sqrt(cell.b) * conv_hi(m))});
    }
    lower = std::max(lower, grid_max * (1.0 - 1e-12));
    upper = std::max(upper, lower);
    out.sup = FloatInterval(lower, upper);

    c.payload["grid"] = rows;
    c.payload["max_beta_deviation"] = out.max_beta_deviation;
    c.payload["max_wrap_deviation"] = out.max_wrap_deviation;
    c.payload["M"] = interval_json(out.sup);
    c.payload["M_closed_form"] = s * kPi;
    c.payload["ratio_tolerance"] = ratio_tol;
    c.payload["consequence"] = "u / M_hi satisfies (b)";
    c.verdict = std::isfinite(out.sup.hi) ? Verdict::Holds : Verdict::Fails;
    c.notes.push_back("singular factors removed by the substitution s = a + (b-a) sin^2(theta)");
    c.notes.push_back("ratio tends to 0 as t -> 0+ and to M as t -> 1-");
    c.seal();
    return out;
}

// ---- line ------------------------------------------------------------------

QuadResult line_conv_value(double t, const QuadratureSpec& spec)
{
    // s = tan(theta) turns ds / (1+s^2) into d(theta).
    auto f = [t](double th) {
        const double d = t - std::tan(th);
        return 1.0 / (1.0 + d * d);
    };
    return integrate(f, -kPi / 2.0, kPi / 2.0, spec.h);
}

double line_conv_closed_form(double t)
{
    return 2.0 * kPi / (4.0 + t * t);
}

LineRatio line_conv_ratio(int d, const QuadratureSpec& spec, double range, int points)
{
    if (d < 1 || d > 3) throw std::invalid_argument("line_conv_ratio supports 1 <= d <= 3");
    if (points < 2 || !(range > 0.0)) throw std::invalid_argument("line_conv_ratio needs a nondegenerate grid");
    LineRatio out;
    out.d = d;
    const double ratio_tol = 1e-6;
    Json rows = Json::array();
    double grid_lo = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = -range + 2.0 * range * i / (points - 1);
        const QuadResult v = line_conv_value(t, spec);
        const double ratio = v.value * (1.0 + t * t);
        const double exact = 2.0 * kPi * (1.0 + t * t) / (4.0 + t * t);
        const double dev = std::fabs(ratio - exact);
        out.max_deviation = std::max(out.max_deviation, dev);
        grid_lo = std::max(grid_lo, down(ratio - (v.error + 1e-12) * (1.0 + t * t)));
        rows.push_back({{"t", t}, {"ratio", ratio}, {"closed_form", exact}, {"deviation", dev}});
    }
    if (out.max_deviation > ratio_tol) throw std::runtime_error("line convolution: tolerance not met");
    const QuadResult z = line_conv_value(0.0, spec);
    const double zerr = z.error + 1e-12;
    const FloatInterval at0(down(z.value - zerr), up(z.value + zerr));
    // The ratio increases in |t| towards 2 pi.
    const double two_pi_hi = up((BigRational(2) * constants::pi().hi).to_double());
    FloatInterval sup(grid_lo, two_pi_hi);
    FloatInterval zero = at0;
    for (int k = 1; k < d; ++k) {
        sup = FloatInterval(down(sup.lo * grid_lo), up(sup.hi * two_pi_hi));
        zero = FloatInterval(down(zero.lo * at0.lo), up(zero.hi * at0.hi));
    }
    out.sup = sup;
    out.at_zero = zero;

    Certificate& c = out.cert;
    c.property = "line-ratio";
    c.window = {{"range", range}, {"points", points}, {"d", d}};
    c.truncation = spec.to_json();
    c.payload["closed_form"] = "2pi(1+t^2)/(4+t^2) per coordinate";
    c.payload["max_deviation"] = out.max_deviation;
    c.payload["sup"] = interval_json(sup);
    c.payload["at_zero"] = interval_json(zero);
    c.payload["grid"] = rows;
    c.verdict = Verdict::Holds;
    c.notes.push_back("sup (2pi)^d is approached as |t| grows and is not attained");
    c.seal();
    return out;
}

}  // namespace lpw
