#include "lpw/suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lpw/certify.hpp"
#include "lpw/continuous.hpp"
#include "lpw/countex.hpp"
#include "lpw/domar.hpp"
#include "lpw/sigma.hpp"

namespace lpw {

namespace {

using Clock = std::chrono::steady_clock;

SuiteResult timed(int criterion, std::string name, const std::function<void(SuiteResult&)>& body)
{
    SuiteResult r;
    r.criterion = criterion;
    r.name = std::move(name);
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::string fmt(double v, int prec = 6)
{
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

// Increasing prefix 1/8 < 1/4 < 3/8 with a small tail: the nested formula gives (u*u)(0) > u(0).
WeightFn increasing_phi_weight()
{
    const GroupDescriptor g = GroupDescriptor::pruefer(2);
    PhiSequence phi(g, {BigRational(1, 8), BigRational(1, 4), BigRational(3, 8)},
                    PhiTail{PhiTail::Kind::Normalized, BigRational(1, 2), BigRational(1, 2)}, true);
    return nested_finite_weight(phi);
}

}  // namespace

SuiteResult pruefer_suite()
{
    return timed(1, "pruefer", [](SuiteResult& r) {
        const WeightFn u = pruefer_weight(2);
        const GroupPoint zero = identity(u.group());
        const RationalInterval c0 = conv_at(u, zero, Truncation::parse("full"));
        const bool exact = c0.is_point() && c0.lo == BigRational(15, 112);
        const WeightFn up = scale_for_b(u, BigRational(2));
        const Window w = make_window(u.group(), "G_4");
        Certificate cb = check_b(up, w, Truncation::parse("N=8"));
        Certificate raw = check_b(u, w, Truncation::parse("N=8"), u.raw_b_bound());
        r.pass = exact && cb.holds() && raw.holds() && w.points.size() == 16;
        r.detail = "(u*u)(0) = " + c0.lo.str() + ", check_b(u/2, G_4, N=8): " + to_string(cb.verdict) + " on " +
                   std::to_string(w.points.size()) + " points";
        r.certs = {cb, raw};
    });
}

SuiteResult rationals_suite()
{
    return timed(2, "rationals", [](SuiteResult& r) {
        const SigmaConstant& sc = default_sigma_constant();
        const double f0 = 1.0 + std::pow(std::numbers::pi, 4) / 45.0;
        const bool f0_ok = sc.f0.lo - 1e-6 <= f0 && f0 <= sc.f0.hi + 1e-6 && sc.c2.lo <= sc.c2.hi && sc.c2.hi >= f0;
        const WeightFn u = rationals_weight();
        const Window w = make_window(u.group(), "Q_3:3");
        Certificate cb = check_b(u, w, Truncation::parse("N=5,B=40"), u.raw_b_bound());
        Certificate sig;
        sig.property = "sigma-c2";
        sig.payload = sc.to_json();
        sig.verdict = f0_ok ? Verdict::Holds : Verdict::Fails;
        sig.seal();
        r.pass = f0_ok && cb.holds() && w.points.size() == 37;
        r.detail = "C2 in [" + fmt(sc.c2.lo) + ", " + fmt(sc.c2.hi) + "], f(0) in [" + fmt(sc.f0.lo, 10) + ", " +
                   fmt(sc.f0.hi, 10) + "], check_b(u <= 2 C phi u, Q_3 in [-3,3]): " + to_string(cb.verdict) +
                   " on " + std::to_string(w.points.size()) + " points";
        r.certs = {sig, cb};
    });
}

SuiteResult direct_sum_suite()
{
    return timed(3, "direct-sum", [](SuiteResult& r) {
        std::vector<WeightFn> s{auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3)),
                                auto_scale(pruefer_weight(2))};
        const WeightFn u = direct_sum_weight(s);
        const auto& node = std::get<SumNode>(u.node().data);
        Certificate coeffs = check_subset_coeffs(node.coeffs, 8);
        Certificate alphas = check_alpha_constraints(u);
        const Window w = sampled_sum_window(u.group(), 200, 6, 20240601);
        Certificate cb = check_b(u, w, Truncation::parse("L=6"));
        r.pass = coeffs.holds() && alphas.holds() && cb.holds() && w.points.size() == 200;
        r.detail = "coeffs on {1..8}: " + std::string(to_string(coeffs.verdict)) +
                   " (max subset sum " + fmt(coeffs.payload["worst_subset_sum_approx"].get<double>()) +
                   " <= 1/4), alphas: " + to_string(alphas.verdict) + ", check_b on " +
                   std::to_string(w.points.size()) + " sampled points: " + to_string(cb.verdict);
        r.certs = {coeffs, alphas, cb};
    });
}

SuiteResult domar_suite()
{
    return timed(4, "domar", [](SuiteResult& r) {
        const GroupPoint one = real_point({1.0});
        Certificate a = domar_classify(builtin_weight("poly2"), one);
        Certificate b = domar_classify(builtin_weight("poly2-exp"), one);
        Certificate c = domar_classify(builtin_weight("poly2-exp-log"), one);
        const auto p = domar_partial(builtin_weight("exp"), one, 3);
        const bool s3 = p.back().exact_partial && *p.back().exact_partial == BigRational(11, 6);
        r.pass = domar_class(a) == DomarClass::Convergent && domar_class(b) == DomarClass::Divergent &&
                 domar_class(c) == DomarClass::Divergent && s3;
        r.detail = std::string("1+t^2: ") + to_string(domar_class(a)) + ", (1+t^2)e^|t|: " +
                   to_string(domar_class(b)) + ", (1+t^2)exp(|t|/log(e+|t|)): " + to_string(domar_class(c)) +
                   ", S_3 for e^|t| = " + (p.back().exact_partial ? p.back().exact_partial->str() : "inexact");
        r.certs = {a, b, c};
    });
}

SuiteResult beurling_suite()
{
    return timed(5, "beurling", [](SuiteResult& r) {
        const GroupPoint one = real_point({1.0});
        const std::vector<std::pair<std::string, std::string>> expect{
            {"poly2", "finite"}, {"poly2-exp", "infinite"}, {"poly2-exp-log", "infinite"}};
        r.pass = true;
        for (const auto& [name, cls] : expect) {
            const WeightFn w = builtin_weight(name);
            Certificate b = beurling_integral(w);
            const DomarClass d = domar_class(domar_classify(w, one));
            const bool agree = (cls == "finite") == (d == DomarClass::Convergent);
            r.pass = r.pass && beurling_class(b) == cls && agree;
            if (!r.detail.empty()) r.detail += ", ";
            r.detail += name + ": " + beurling_class(b) + (agree ? " (agrees with domar)" : " (DISAGREES with domar)");
            r.certs.push_back(b);
        }
    });
}

SuiteResult countex_suite()
{
    return timed(6, "countex", [](SuiteResult& r) {
        const QSequence q = build_q_sequence(2);
        Certificate f1 = check_q_fractional_bound(q, 1);
        Certificate f2 = check_q_fractional_bound(q, 2);
        const BigRational lo = BigRational::parse(f1.payload["frac_lo_exclusive"].get<std::string>());
        const BigRational hi = BigRational::parse(f1.payload["frac_hi"].get<std::string>());
        const bool range = lo == BigRational(1, 110) && hi < BigRational(1, 55) && hi < exp_bounds(BigRational(-4)).lo;
        Certificate div = countex_divergence_lower_bound(q, builtin_weight("circle-quarter"));
        const bool half = BigRational::parse(div.payload["verified_sum_lower"].get<std::string>()) >= BigRational(1, 2);
        const CircleRatio cr = circle_conv_ratio(builtin_weight("circle-inv-sqrt"), QuadratureSpec{}, 20);
        const bool beta = cr.max_beta_deviation <= 1e-9;
        const bool qs = q.q.size() == 2 && q.q[0] == 2 && q.q[1] == 220;
        r.pass = qs && f1.holds() && f2.holds() && range && div.holds() && half && beta && std::isfinite(cr.sup.hi);
        r.detail = "q = [2, 220], {2 alpha} in (1/110, " + fmt(hi.to_double(), 8) +
                   "], verified term sum >= " + div.payload["verified_sum_lower"].get<std::string>() + ", M in [" +
                   fmt(cr.sup.lo, 10) + ", " + fmt(cr.sup.hi, 10) + "], Beta segment max deviation " +
                   fmt(cr.max_beta_deviation, 3);
        r.certs = {f1, f2, div, cr.cert};
    });
}

SuiteResult euclidean_suite()
{
    return timed(7, "euclidean", [](SuiteResult& r) {
        const LineRatio l1 = line_conv_ratio(1);
        const LineRatio l2 = line_conv_ratio(2);
        const double two_pi = 2.0 * std::numbers::pi;
        const bool sup_ok = l1.sup.contains(two_pi) && l2.sup.contains(two_pi * two_pi);
        const bool zero_ok = l1.at_zero.contains(std::numbers::pi / 2.0);
        const WeightFn u = euclidean_weight(1);
        Certificate cb = check_b(u, real_grid(-10.0, 10.0, 41), Truncation{});
        r.pass = l1.max_deviation <= 1e-6 && sup_ok && zero_ok && cb.holds();
        r.detail = "max |ratio - 2pi(1+t^2)/(4+t^2)| = " + fmt(l1.max_deviation, 3) + " on [-10,10], sup in [" +
                   fmt(l1.sup.lo, 10) + ", " + fmt(l1.sup.hi, 10) + "], value at 0 in [" + fmt(l1.at_zero.lo, 12) +
                   ", " + fmt(l1.at_zero.hi, 12) + "], normalized (b): " + to_string(cb.verdict);
        r.certs = {l1.cert, l2.cert, cb};
    });
}

SuiteResult negative_controls_suite()
{
    return timed(8, "negative-controls", [](SuiteResult& r) {
        const WeightFn bad = increasing_phi_weight();
        Certificate b = check_b(bad, make_window(bad.group(), "G_3"), Truncation::parse("N=8"));
        const bool b_fails = b.verdict == Verdict::Fails && !b.witness.is_null();

        const WeightFn cq = builtin_weight("circle-quarter");
        const GroupPoint tenth = circle_point(BigRational(1, 10));
        Certificate sm = check_submultiplicative(cq, circle_grid(10), SubmultMode::Exact, {{tenth, tenth}});
        Certificate inf = ess_inf_check(cq, circle_grid(100));

        std::vector<WeightFn> algebras{
            algebra_weight(auto_scale(pruefer_weight(2)), BigRational(2)),
            algebra_weight(auto_scale(pruefer_weight(3)), BigRational(3)),
            algebra_weight(auto_scale(rationals_weight()), BigRational(2)),
            algebra_weight(direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3))}),
                           BigRational(2)),
        };
        const std::vector<std::string> windows{"G_4", "G_2", "Q_2:2", "sample:40:3:5"};
        bool pos = true;
        std::vector<Certificate> infs;
        for (std::size_t i = 0; i < algebras.size(); ++i) {
            Certificate c = ess_inf_check(algebras[i], make_window(algebras[i].group(), windows[i]));
            pos = pos && c.holds() && c.payload["global_lower_bound"].get<double>() > 0.0;
            infs.push_back(c);
        }
        r.pass = b_fails && sm.verdict == Verdict::Fails && inf.verdict == Verdict::Fails && pos;
        r.detail = std::string("increasing phi: ") + to_string(b.verdict) + " at " +
                   (b.witness.is_null() ? "-" : point_str(point_from_json(b.witness["x"]))) +
                   ", t^(1/4) submult at s=t=1/10: " + to_string(sm.verdict) + ", t^(1/4) ess inf: " +
                   to_string(inf.verdict) + ", lemma algebra weights bounded below: " + (pos ? "yes" : "no");
        r.certs = {b, sm, inf};
        r.certs.insert(r.certs.end(), infs.begin(), infs.end());
    });
}

std::string suite_bundle_dump()
{
    std::vector<Certificate> all;
    for (auto f : {pruefer_suite, rationals_suite, direct_sum_suite, domar_suite, beurling_suite, countex_suite,
                   euclidean_suite, negative_controls_suite}) {
        SuiteResult s = f();
        all.insert(all.end(), s.certs.begin(), s.certs.end());
    }
    return bundle(all).dump();
}

SuiteResult determinism_suite()
{
    return timed(9, "determinism", [](SuiteResult& r) {
        const std::string a = suite_bundle_dump();
        const std::string b = suite_bundle_dump();
        r.pass = a == b && !a.empty();
        r.detail = "two runs, " + std::to_string(a.size()) + " bytes of certificate JSON, " +
                   (a == b ? "identical" : "DIFFERENT");
    });
}

std::vector<SuiteResult> run_all_suites(bool with_determinism)
{
    std::vector<SuiteResult> out{pruefer_suite(),  rationals_suite(), direct_sum_suite(),
                                 domar_suite(),    beurling_suite(),  countex_suite(),
                                 euclidean_suite(), negative_controls_suite()};
    if (with_determinism) out.push_back(determinism_suite());
    return out;
}

Json suite_report(const std::vector<SuiteResult>& results)
{
    Json suites = Json::array();
    for (const auto& s : results) {
        suites.push_back({{"criterion", s.criterion},
                          {"name", s.name},
                          {"pass", s.pass},
                          {"detail", s.detail},
                          {"certificates", bundle(s.certs)}});
    }
    return {{"schema", "lpw.report/1"}, {"suites", suites}};
}

}  // namespace lpw
