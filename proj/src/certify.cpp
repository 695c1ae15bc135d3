#include "lpw/certify.hpp"

#include "lpw/continuous.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace lpw {

namespace {

struct PointResult {
    Verdict verdict = Verdict::Holds;
    RationalInterval conv;
    BigRational rhs;
    std::string error;
};

unsigned pick_threads(unsigned requested, std::size_t work)
{
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (work < n) n = static_cast<unsigned>(std::max<std::size_t>(work, 1));
    return n;
}

bool continuous(const GroupDescriptor& g)
{
    return g.kind == GroupKind::Circle || g.kind == GroupKind::Real;
}

Certificate base_cert(const std::string& property, const WeightFn& u, const Window* window)
{
    Certificate c;
    c.property = property;
    c.weight = weight_ref(u);
    if (window) c.window = window->to_json();
    return c;
}

Certificate euclidean_b(const WeightFn& u, const EuclideanNode& e, const Window& window)
{
    Certificate c = base_cert("b", u, &window);
    c.truncation = {{"mode", "closed-form"}};
    // Per coordinate (v*v)(t)/v(t) = 2 pi (1+t^2)/(4+t^2): pi/2 at 0, increasing to 2 pi, never attained.
    const BigRational one(1);
    const auto pi = constants::pi();
    BigRational factor = u.scale();
    if (e.normalized) {
        c.payload["normalization"] = "(2pi)^-d";
        c.verdict = factor <= one ? Verdict::Holds : Verdict::Inconclusive;
    } else {
        const BigRational sup_hi = pow(BigRational(2) * pi.hi, e.d);
        const BigRational at_zero_lo = pow(pi.lo / BigRational(2), e.d);
        if (factor * sup_hi <= one) {
            c.verdict = Verdict::Holds;
        } else if (factor * at_zero_lo > one) {
            c.verdict = Verdict::Fails;
            c.witness = {{"x", to_json(real_point(std::vector<double>(static_cast<std::size_t>(e.d), 0.0)))},
                         {"ratio_lo", (factor * at_zero_lo).str()}};
        } else {
            c.verdict = Verdict::Inconclusive;
        }
        c.payload["normalization"] = "1";
    }
    c.payload["d"] = e.d;
    c.payload["scale"] = u.scale().str();
    c.payload["ratio_closed_form"] = "2pi(1+t^2)/(4+t^2) per coordinate";
    c.payload["ratio_at_zero"] = "(pi/2)^d";
    c.payload["ratio_sup"] = "(2pi)^d, not attained";
    c.notes.push_back("closed-form Cauchy convolution; the ratio is strictly below its supremum");
    return c;
}

// Decides w(s+t) <= w(s) w(t). Returns {ok, exact}.
std::pair<bool, bool> submult_pair(const WeightFn& w, const GroupPoint& s, const GroupPoint& t)
{
    const GroupPoint a = add(s, t);
    if (w.group().kind != GroupKind::Real && w.group().kind != GroupKind::Product) {
        auto pa = w.power_form(a);
        auto ps = w.power_form(s);
        auto pt = w.power_form(t);
        if (pa && ps && pt && pa->factor == ps->factor && ps->factor == pt->factor && pa->exponent == ps->exponent &&
            ps->exponent == pt->exponent) {
            const BigRational& f = pa->factor;
            const BigRational& e = pa->exponent;
            const BigRational prod = ps->base * pt->base;
            if (e.is_zero()) return {f <= f * f, true};
            if (f == BigRational(1)) {
                if (e.sign() > 0) return {pa->base <= prod, true};
                if (pa->base.sign() > 0 && prod.sign() > 0) return {pa->base >= prod, true};
            } else if (e == BigRational(1)) {
                return {pa->base <= f * prod, true};
            }
        }
        auto la = w.exact_log(a);
        auto ls = w.exact_log(s);
        auto lt = w.exact_log(t);
        if (la && ls && lt) return {*la <= *ls + *lt, true};
    }
    const double la = w.log_eval(a);
    const double ls = w.log_eval(s);
    const double lt = w.log_eval(t);
    const double slack = 1e-12 * std::max(1.0, std::fabs(ls) + std::fabs(lt));
    return {la <= ls + lt + slack, false};
}

Json value_json(const WeightFn& w, const GroupPoint& x)
{
    if (auto v = w.try_value(x)) return v->str();
    return w.eval(x);
}

}  // namespace

// ---- (b) -------------------------------------------------------------------

Certificate check_b(const WeightFn& u, const Window& window, const Truncation& trunc, std::optional<BigRational> bound,
                    unsigned threads)
{
    if (const auto* e = std::get_if<EuclideanNode>(&u.node().data)) return euclidean_b(u, *e, window);
    if (const auto* bn = std::get_if<BuiltinNode>(&u.node().data); bn && bn->name == "circle-inv-sqrt") {
        // sup of (u*u)/u is approached as t -> 1 and not attained.
        const CircleRatio cr = circle_conv_ratio(u);
        Certificate c = base_cert("b", u, &window);
        c.truncation = cr.cert.truncation;
        const double k = bound ? bound->to_double() : 1.0;
        c.payload["bound"] = bound ? bound->str() : "1";
        c.payload["M"] = cr.cert.payload["M"];
        c.payload["circle_ratio_certificate"] = cr.cert.id;
        c.verdict = cr.sup.hi <= k ? Verdict::Holds : cr.sup.lo > k ? Verdict::Fails : Verdict::Inconclusive;
        if (c.verdict == Verdict::Fails) c.witness = {{"t_near", 1.0}, {"ratio_lo", cr.sup.lo}};
        c.rigorous = false;
        c.notes.push_back("quadrature cross-checked against the closed form; float enclosure");
        return c.seal();
    }
    if (const auto* p = std::get_if<ProductNode>(&u.node().data)) {
        Certificate c = base_cert("b", u, &window);
        c.truncation = trunc.to_json();
        std::vector<GroupPoint> hs;
        for (const auto& x : window.points) hs.push_back(*x.expect<ProductPoint>("product window").h);
        const Window hw = explicit_window(p->h.group(), hs);
        const Certificate ch = check_b(p->h, hw, trunc, std::nullopt, threads);
        const Certificate cr = check_b(p->r, real_grid(-1.0, 1.0, 3), trunc);
        c.verdict = combine(ch.verdict, cr.verdict);
        if (u.scale() > BigRational(1)) c.verdict = combine(c.verdict, Verdict::Inconclusive);
        c.payload["factor_R"] = cr.to_json();
        c.payload["factor_H"] = ch.to_json();
        c.notes.push_back("convolution factorizes over R^d x H");
        return c.seal();
    }

    const BigRational k = bound ? *bound : BigRational(1);
    Certificate c = base_cert("b", u, &window);
    c.truncation = trunc.to_json();
    const std::size_t n = window.points.size();
    std::vector<PointResult> results(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            PointResult& r = results[i];
            try {
                const GroupPoint& x = window.points[i];
                r.conv = conv_at(u, x, trunc);
                r.rhs = k * u.value(x);
                if (r.conv.hi <= r.rhs) {
                    r.verdict = Verdict::Holds;
                } else if (r.conv.lo > r.rhs) {
                    r.verdict = Verdict::Fails;
                } else {
                    r.verdict = Verdict::Inconclusive;
                }
            } catch (const std::exception& ex) {
                r.error = ex.what();
            }
        }
    };
    const unsigned nt = pick_threads(threads, n);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& r : results)
        if (!r.error.empty()) throw std::invalid_argument(r.error);

    std::size_t holds = 0;
    std::size_t fails = 0;
    Json inconclusive = Json::array();
    std::size_t worst = 0;
    BigRational worst_ratio(-1);
    c.verdict = Verdict::Holds;
    for (std::size_t i = 0; i < n; ++i) {
        const PointResult& r = results[i];
        const BigRational ratio = r.conv.hi / r.rhs;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = i;
        }
        if (r.verdict == Verdict::Holds) {
            ++holds;
        } else if (r.verdict == Verdict::Fails) {
            if (fails++ == 0)
                c.witness = {{"x", to_json(window.points[i])},
                             {"conv_lo", r.conv.lo.str()},
                             {"conv_hi", r.conv.hi.str()},
                             {"bound_times_u", r.rhs.str()}};
        } else if (inconclusive.size() < 10) {
            inconclusive.push_back(point_str(window.points[i]));
        }
        c.verdict = combine(c.verdict, r.verdict);
    }
    c.payload["bound"] = k.str();
    c.payload["points"] = n;
    c.payload["holds"] = holds;
    c.payload["fails"] = fails;
    c.payload["inconclusive"] = n - holds - fails;
    if (!inconclusive.empty()) c.payload["inconclusive_points"] = inconclusive;
    if (n > 0) {
        const PointResult& r = results[worst];
        c.payload["worst"] = {{"x", point_str(window.points[worst])},
                              {"conv_lo", r.conv.lo.str()},
                              {"conv_hi", r.conv.hi.str()},
                              {"bound_times_u", r.rhs.str()},
                              {"ratio_hi", worst_ratio.to_double()}};
    }
    if (c.verdict == Verdict::Inconclusive) c.notes.push_back("tail bound too coarse at this truncation");
    return c.seal();
}

// ---- (a), (c) ----------------------------------------------------------------

Certificate check_positivity(const WeightFn& u, const Window& window, bool ae)
{
    Certificate c = base_cert("a", u, &window);
    c.verdict = Verdict::Holds;
    Json excluded = Json::array();
    const bool null_set_ok = ae && continuous(u.group());
    for (const auto& x : window.points) {
        bool positive;
        bool finite = true;
        if (auto v = u.try_value(x)) {
            positive = v->sign() > 0;
        } else {
            const double fv = u.eval(x);
            positive = fv > 0.0;
            finite = std::isfinite(fv);
        }
        if (positive && finite) continue;
        if (null_set_ok) {
            excluded.push_back(point_str(x));
            continue;
        }
        if (!positive) {
            c.verdict = Verdict::Fails;
            c.witness = {{"x", to_json(x)}, {"value", value_json(u, x)}};
            break;
        }
    }
    c.payload["points"] = window.points.size();
    if (!excluded.empty()) {
        c.payload["pointwise_failures"] = excluded;
        c.notes.push_back("a.e. semantics: points where u is 0 or undefined form a null set and are excluded");
    }
    return c.seal();
}

Certificate check_evenness(const WeightFn& u, const Window& window)
{
    Certificate c = base_cert("c", u, &window);
    c.verdict = Verdict::Holds;
    bool exact = true;
    for (const auto& x : window.points) {
        const GroupPoint nx = neg(x);
        bool equal;
        auto a = u.power_form(x);
        auto b = u.power_form(nx);
        if (a && b && a->factor == b->factor && a->exponent == b->exponent) {
            equal = a->base == b->base;
        } else {
            exact = false;
            const double va = u.log_eval(x);
            const double vb = u.log_eval(nx);
            equal = va == vb || std::fabs(va - vb) <= 1e-12 * std::max(1.0, std::fabs(va));
        }
        if (!equal) {
            c.verdict = Verdict::Fails;
            c.witness = {{"x", to_json(x)}, {"u(x)", value_json(u, x)}, {"u(-x)", value_json(u, nx)}};
            break;
        }
    }
    c.rigorous = exact;
    c.payload["points"] = window.points.size();
    c.payload["exact"] = exact;
    return c.seal();
}

Certificate check_parity_positivity(const WeightFn& u, const Window& window, bool ae)
{
    const Certificate a = check_positivity(u, window, ae);
    const Certificate e = check_evenness(u, window);
    Certificate c = base_cert("a+c", u, &window);
    c.verdict = combine(a.verdict, e.verdict);
    c.rigorous = a.rigorous && e.rigorous;
    c.payload["positivity"] = to_string(a.verdict);
    c.payload["evenness"] = to_string(e.verdict);
    if (!a.witness.is_null()) c.witness = a.witness;
    else if (!e.witness.is_null()) c.witness = e.witness;
    c.notes = a.notes;
    return c.seal();
}

// ---- (d) -------------------------------------------------------------------

std::optional<DecayBound> poly_decay_bound(const WeightFn& u, const GroupPoint& x)
{
    const GroupDescriptor& g = u.group();
    const BigRational one(1);
    if (const auto* n = std::get_if<NestedNode>(&u.node().data)) {
        // The orbit nx stays in G_{L(x)}.
        const int L = layer_of(g, x);
        return DecayBound{one / (u.scale() * n->phi.min_term_upto(L)), 0};
    }
    if (const auto* n = std::get_if<RationalsNode>(&u.node().data)) {
        // nx stays in Q_{L(x)} and floor|nx| <= n |x|.
        const int L = layer_of(g, x);
        const BigRational ax = x.expect<RationalPoint>("poly decay").value.abs();
        const BigRational m = ax > one ? ax * ax : one;
        return DecayBound{m / (u.scale() * n->phi.min_term_upto(L)), 2};
    }
    if (const auto* s = std::get_if<SumNode>(&u.node().data)) {
        // s(nx) is inside s(x), so a_{s(nx)} >= a_{s(x)}; absent factors are bounded by 1.
        const auto& sx = x.expect<SumPoint>("poly decay");
        BigRational C = one / (s->coeffs.a(support(sx)) * u.scale());
        int d = 0;
        for (const auto& [j, xj] : sx.coords) {
            auto bj = poly_decay_bound(s->summands[j - 1], *xj);
            if (!bj) return std::nullopt;
            const BigRational r = bj->C / s->alphas[j - 1];
            C *= r > one ? r : one;
            d += bj->d;
        }
        return DecayBound{C, d};
    }
    if (const auto* e = std::get_if<EuclideanNode>(&u.node().data)) {
        // 1 + n^2 r^2 <= n^2 (1 + r^2) for n >= 1.
        BigRational C = one / u.scale();
        if (e->normalized) C *= pow(BigRational(2) * constants::pi().hi, e->d);
        for (double r : x.expect<RealPoint>("poly decay").x) {
            const BigRational rr = BigRational::from_double(r);
            C *= one + rr * rr;
        }
        return DecayBound{C, 2 * e->d};
    }
    if (const auto* p = std::get_if<ProductNode>(&u.node().data)) {
        const auto& pp = x.expect<ProductPoint>("poly decay");
        auto br = poly_decay_bound(p->r, GroupPoint(pp.r));
        auto bh = poly_decay_bound(p->h, *pp.h);
        if (!br || !bh) return std::nullopt;
        return DecayBound{br->C * bh->C / u.scale(), br->d + bh->d};
    }
    return std::nullopt;
}

Certificate check_poly_decay(const WeightFn& u, const GroupPoint& x, int N)
{
    if (N < 10) throw std::invalid_argument("check_poly_decay needs N >= 10");
    Certificate c = base_cert("d", u, nullptr);
    c.window = {{"orbit_of", to_json(x)}, {"N", N}};
    const auto bound = poly_decay_bound(u, x);
    if (!bound) {
        double worst = 0.0;
        for (int n = 1; n <= N; ++n) worst = std::max(worst, std::exp(-u.log_eval(nmul(n, x))));
        c.verdict = Verdict::Inconclusive;
        c.rigorous = false;
        c.payload["sampled_max_inverse"] = worst;
        c.notes.push_back("no decay formula for this construction; sampling only");
        return c.seal();
    }
    c.payload["C"] = bound->C.str();
    c.payload["d"] = bound->d;
    c.verdict = Verdict::Holds;
    double max_ratio = 0.0;
    for (int n = 1; n <= N; ++n) {
        const GroupPoint y = nmul(n, x);
        const BigRational rhs = bound->C * pow(BigRational(n), bound->d);
        bool ok;
        double ratio;
        if (auto v = u.try_value(y)) {
            const BigRational inv = BigRational(1) / *v;
            ok = inv <= rhs;
            ratio = (inv / rhs).to_double();
        } else {
            const double inv = 1.0 / u.eval(y);
            ratio = inv / rhs.to_double();
            ok = ratio <= 1.0 + 1e-12;
        }
        max_ratio = std::max(max_ratio, ratio);
        if (!ok) {
            c.verdict = Verdict::Fails;
            c.witness = {{"n", n}, {"nx", to_json(y)}, {"C_n^d", rhs.str()}};
            break;
        }
    }
    c.payload["max_ratio"] = max_ratio;
    c.notes.push_back("C and d follow from the construction, valid for every n >= 1");
    return c.seal();
}

// ---- submultiplicativity ---------------------------------------------------------

Certificate check_submultiplicative(const WeightFn& w, const Window& window, SubmultMode mode,
                                    std::vector<std::pair<GroupPoint, GroupPoint>> pairs, std::uint64_t seed,
                                    std::size_t max_pairs)
{
    Certificate c = base_cert(mode == SubmultMode::Exact ? "submult" : "submult-invariance", w, &window);
    const auto& pts = window.points;
    if (mode == SubmultMode::Invariance) {
        // Finite-sample stand-in for L_s = ess sup_t w(s+t)/w(t).
        Json rows = Json::array();
        bool finite = true;
        for (const auto& s : pts) {
            double best = -HUGE_VAL;
            for (const auto& t : pts) best = std::max(best, w.log_eval(add(s, t)) - w.log_eval(t));
            const double L = std::exp(best);
            finite = finite && std::isfinite(L);
            rows.push_back({{"s", point_str(s)}, {"L_s", L}});
        }
        c.payload["L"] = rows;
        c.verdict = finite ? Verdict::Holds : Verdict::Inconclusive;
        c.rigorous = false;
        c.notes.push_back("finite-sample maximum; no claim about the essential supremum");
        return c.seal();
    }
    if (pairs.empty()) {
        if (pts.size() * pts.size() <= max_pairs) {
            for (const auto& s : pts)
                for (const auto& t : pts) pairs.emplace_back(s, t);
        } else {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
            for (std::size_t i = 0; i < max_pairs; ++i) pairs.emplace_back(pts[pick(rng)], pts[pick(rng)]);
            c.payload["seed"] = seed;
        }
    }
    c.verdict = Verdict::Holds;
    bool exact = true;
    std::size_t failures = 0;
    for (const auto& [s, t] : pairs) {
        const auto [ok, ex] = submult_pair(w, s, t);
        exact = exact && ex;
        if (ok) continue;
        if (failures++ == 0) {
            const GroupPoint a = add(s, t);
            c.witness = {{"s", to_json(s)},
                         {"t", to_json(t)},
                         {"w(s+t)", w.eval(a)},
                         {"w(s)w(t)", w.eval(s) * w.eval(t)}};
            c.verdict = Verdict::Fails;
        }
    }
    c.rigorous = exact;
    c.payload["pairs"] = pairs.size();
    c.payload["failures"] = failures;
    c.payload["exact"] = exact;
    return c.seal();
}

// ---- equivalence, inf ---------------------------------------------------------------

Certificate weight_equivalence(const WeightFn& w1, const WeightFn& w2, const Window& window)
{
    Certificate c = base_cert("equiv", w1, &window);
    c.payload["w2"] = weight_ref(w2);
    c.payload["ratio"] = "w1/w2";
    bool exact = true;
    std::optional<BigRational> lo;
    std::optional<BigRational> hi;
    for (const auto& x : window.points) {
        auto a = w1.try_value(x);
        auto b = w2.try_value(x);
        if (!a || !b || b->sign() <= 0) {
            exact = false;
            break;
        }
        const BigRational r = *a / *b;
        if (!lo || r < *lo) lo = r;
        if (!hi || r > *hi) hi = r;
    }
    if (exact && lo) {
        c.payload["C1"] = lo->str();
        c.payload["C2"] = hi->str();
        c.verdict = lo->sign() > 0 ? Verdict::Holds : Verdict::Fails;
    } else {
        double mn = HUGE_VAL;
        double mx = -HUGE_VAL;
        for (const auto& x : window.points) {
            const double r = w1.log_eval(x) - w2.log_eval(x);
            mn = std::min(mn, r);
            mx = std::max(mx, r);
        }
        const double C1 = std::exp(mn);
        const double C2 = std::exp(mx);
        c.payload["C1"] = C1;
        c.payload["C2"] = C2;
        c.rigorous = false;
        c.verdict = (C1 > 0.0 && std::isfinite(C2)) ? Verdict::Holds : Verdict::Fails;
    }
    c.payload["exact"] = exact;
    c.notes.push_back("bounds are over the window only");
    return c.seal();
}

Certificate ess_inf_check(const WeightFn& w, const Window& window)
{
    Certificate c = base_cert("essinf", w, &window);
    double mn = HUGE_VAL;
    std::size_t arg = 0;
    std::optional<BigRational> exact_min;
    for (std::size_t i = 0; i < window.points.size(); ++i) {
        const GroupPoint& x = window.points[i];
        double v;
        if (auto e = w.try_value(x)) {
            v = e->to_double();
            if (!exact_min || *e < *exact_min) exact_min = *e;
        } else {
            v = w.eval(x);
        }
        if (v < mn) {
            mn = v;
            arg = i;
        }
    }
    c.payload["window_min"] = exact_min && exact_min->to_double() == mn ? Json(exact_min->str()) : Json(mn);
    if (!window.points.empty()) c.payload["argmin"] = point_str(window.points[arg]);

    if (w.group().kind == GroupKind::Circle) {
        Json minima = Json::array();
        for (long K : {10L, 100L, 1000L, 10000L}) {
            double m = HUGE_VAL;
            for (long k = 1; k < K; ++k) m = std::min(m, w.eval(circle_point(BigRational(BigInt(k), BigInt(K)))));
            minima.push_back({{"K", K}, {"min", m}});
        }
        c.payload["grid_minima_excluding_0"] = minima;
    }

    const auto inf = w.global_inf();
    c.payload["global_lower_bound"] = inf.known ? Json(inf.lower) : Json(nullptr);
    if (inf.known && inf.is_zero) {
        c.verdict = Verdict::Fails;
        c.payload["global_inf"] = 0;
        if (!window.points.empty()) c.witness = {{"x", to_json(window.points[arg])}, {"value", mn}};
        c.notes.push_back("inf w = 0 for this construction");
    } else if (inf.known && inf.lower > 0.0) {
        c.verdict = Verdict::Holds;
    } else {
        c.verdict = Verdict::Inconclusive;
        c.rigorous = false;
    }
    return c.seal();
}

Certificate check_subset_coeffs(const SubsetCoeffs& coeffs, int k)
{
    Certificate c;
    c.property = "coeffs";
    c.window = {{"subsets_of", "{1.." + std::to_string(k) + "}"}};
    const CoeffCheck r = check_coeffs(coeffs, k);
    c.verdict = r.all() ? Verdict::Holds : Verdict::Fails;
    c.payload["eps1"] = coeffs.eps1.str();
    c.payload["aone"] = r.aone;
    c.payload["aunion"] = r.aunion;
    c.payload["asubset"] = r.asubset;
    c.payload["asubset_budget"] = "1/4";
    c.payload["worst_subset_sum"] = r.worst_subset_sum.str();
    c.payload["worst_subset_sum_approx"] = r.worst_subset_sum.to_double();
    c.payload["worst_subset"] = subset_str(r.worst_subset);
    if (!r.all()) c.witness = {{"s", subset_str(r.witness_s)}, {"v", subset_str(r.witness_v)}};
    return c.seal();
}

Certificate check_alpha_constraints(const WeightFn& sum)
{
    const auto* s = std::get_if<SumNode>(&sum.node().data);
    if (!s) throw std::invalid_argument("check_alpha_constraints needs a direct-sum weight");
    Certificate c = base_cert("alphas", sum, nullptr);
    const AlphaCheck r = check_alphas(s->alphas, zero_values(s->summands));
    c.verdict = r.all() ? Verdict::Holds : Verdict::Fails;
    Json al = Json::array();
    for (const auto& a : s->alphas) al.push_back(a.str());
    c.payload["alphas"] = al;
    c.payload["alphaone"] = r.alphaone;
    c.payload["prod_1_plus_alpha"] = r.product_one_plus.str();
    c.payload["prod_1_plus_alpha2_u0"] = r.product_zero.str();
    c.payload["alpha_sum"] = r.alpha_sum.str();
    c.payload["ln2_lower"] = constants::ln2().lo.str();
    c.notes.push_back("(u_j*u_j)(0) <= u_j(0) by (b) for each summand");
    return c.seal();
}

}  // namespace lpw
