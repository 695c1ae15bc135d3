// One line per acceptance criterion: each suite result plus independent oracle checks.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>

#include "lpw/certify.hpp"
#include "lpw/continuous.hpp"
#include "lpw/countex.hpp"
#include "lpw/domar.hpp"
#include "lpw/sigma.hpp"
#include "lpw/suite.hpp"
#include "oracles.hpp"

using namespace lpw;

namespace {

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            why += (why.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int k, const std::string& name, const std::function<void(Check&)>& body)
{
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << k << " " << name;
    if (!c.ok) std::cout << ": " << c.why;
    std::cout << std::endl;
    if (!c.ok) ++failures;
}

void suite_ok(Check& c, const SuiteResult& r) { c.require(r.pass, r.name + ": " + r.detail); }

}  // namespace

int main()
{
    report(1, "pruefer", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        suite_ok(c, pruefer_suite());
        c.require(seconds_since(t0) < 10.0, "runtime >= 10 s");
        const WeightFn u = pruefer_weight(2);
        const RationalInterval v = conv_at(u, identity(u.group()), Truncation::parse("full"));
        c.require(v.is_point() && v.lo == BigRational(15, 112), "(u*u)(0) != 15/112");
        c.require(oracle::pruefer_conv_zero(2) == BigRational(15, 112), "oracle series != 15/112");
        const auto phi = [](int n) { return BigRational(BigInt(1), oracle::ipow(4, n)); };
        for (long k = 0; k < 16; ++k) {
            const GroupPoint x = pruefer_point(2, BigRational(k, 16));
            const RationalInterval iv = conv_at(u, x, Truncation::parse("N=8"));
            const BigRational brute = oracle::pruefer_conv_brute(2, 8, BigInt(k) * 16, phi);
            c.require(iv.lo <= brute && brute <= iv.hi, "brute force outside enclosure at k=" + std::to_string(k));
        }
    });

    report(2, "rationals", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        suite_ok(c, rationals_suite());
        c.require(seconds_since(t0) < 60.0, "runtime >= 60 s");
        const SigmaConstant& s = default_sigma_constant();
        const double f0 = oracle::sigma_f0();
        c.require(std::fabs(f0 - 3.16465) < 1e-5, "oracle f(0)");
        c.require(s.f0.lo - 1e-6 <= f0 && f0 <= s.f0.hi + 1e-6, "f(0) enclosure misses 1 + pi^4/45");
        for (long m : {1L, 2L, 5L, 50L}) {
            const FloatInterval fm = sigma_ratio_at(m, 20000);
            c.require(fm.lo - 1e-3 <= oracle::sigma_f(m) && oracle::sigma_f(m) <= fm.hi + 1e-3,
                      "f(m) oracle mismatch at m=" + std::to_string(m));
            c.require(fm.hi <= s.c2.hi, "f(m) above C2");
        }
    });

    report(3, "direct sum", [](Check& c) {
        suite_ok(c, direct_sum_suite());
        const Certificate co = check_subset_coeffs(SubsetCoeffs{}, 8);
        c.require(co.holds(), "subset coefficients");
        c.require(co.payload["eps1"] == "1/60", "eps1 != 1/60");
        const WeightFn s = direct_sum_weight(
            {auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3)), auto_scale(pruefer_weight(2))});
        const Certificate al = check_alpha_constraints(s);
        c.require(al.holds(), "alpha constraints");
        const auto z = zero_values({auto_scale(pruefer_weight(2))});
        const BigRational a1 = BigRational(1, 3) / (z[0] > BigRational(1) ? z[0] : BigRational(1));
        c.require(al.payload["alphas"][0] == a1.str(), "alpha_1 != 3^-1/max(1,u_1(0))");
    });

    report(4, "domar", [](Check& c) {
        suite_ok(c, domar_suite());
        const GroupPoint one = real_point({1.0});
        c.require(domar_class(domar_classify(builtin_weight("poly2"), one)) == DomarClass::Convergent, "1+t^2");
        c.require(domar_class(domar_classify(builtin_weight("poly2-exp"), one)) == DomarClass::Divergent,
                  "(1+t^2)e^|t|");
        c.require(domar_class(domar_classify(builtin_weight("poly2-exp-log"), one)) == DomarClass::Divergent,
                  "(1+t^2)exp(|t|/log(e+|t|))");
        const auto p = domar_partial(builtin_weight("exp"), one, 3);
        c.require(p.back().exact_partial && *p.back().exact_partial == BigRational(11, 6), "S_3 != 11/6");
        // 1 + 1/2 + 1/3 = 11/6 with log+ e^n = n
        c.require(BigRational(1) + BigRational(1, 2) + BigRational(1, 3) == BigRational(11, 6), "oracle");
    });

    report(5, "beurling", [](Check& c) {
        suite_ok(c, beurling_suite());
        const Certificate p = beurling_integral(builtin_weight("poly2"));
        const double closed = 2.0 * std::numbers::pi * std::numbers::ln2;
        c.require(p.payload["total_lo"].get<double>() <= closed && closed <= p.payload["total_hi"].get<double>(),
                  "integral for 1+t^2 misses 2 pi ln 2");
        for (const char* n : {"poly2", "poly2-exp", "poly2-exp-log"}) {
            const WeightFn w = builtin_weight(n);
            const bool fin = beurling_class(beurling_integral(w)) == "finite";
            const bool conv = domar_class(domar_classify(w, real_point({1.0}))) == DomarClass::Convergent;
            c.require(fin == conv, std::string("disagreement on ") + n);
        }
    });

    report(6, "counterexample", [](Check& c) {
        suite_ok(c, countex_suite());
        const QSequence q = build_q_sequence(2);
        c.require(q.q.size() == 2 && q.q[0] == 2 && q.q[1] == 220, "q != [2, 220]");
        // m_2: least m with 2m > 4 e^4 = 218.39...
        c.require(2.0 * 109 < 4.0 * std::exp(4.0) && 4.0 * std::exp(4.0) < 2.0 * 110, "oracle m_2");
        const CircleRatio r = circle_conv_ratio(builtin_weight("circle-inv-sqrt"));
        c.require(std::isfinite(r.sup.hi), "M not finite");
        double dev = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double t = k / 21.0;
            dev = std::max(dev, std::fabs(beta_segment(t).value - oracle::beta_half_half()));
        }
        c.require(dev <= 1e-9, "Beta segment deviates from pi");
        c.require(r.max_beta_deviation <= 1e-9, "reported Beta deviation");
    });

    report(7, "euclidean", [](Check& c) {
        suite_ok(c, euclidean_suite());
        double dev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = -10.0 + 0.1 * i;
            dev = std::max(dev, std::fabs(line_conv_value(t).value * (1 + t * t) - oracle::cauchy_ratio(t)));
        }
        c.require(dev <= 1e-6, "ratio deviates from 2 pi (1+t^2)/(4+t^2)");
        const LineRatio l = line_conv_ratio(1);
        c.require(l.sup.contains(2 * std::numbers::pi), "sup misses 2 pi");
        c.require(l.at_zero.contains(std::numbers::pi / 2), "value at 0 misses pi/2");
    });

    report(8, "negative controls", [](Check& c) {
        suite_ok(c, negative_controls_suite());
        const WeightFn cq = builtin_weight("circle-quarter");
        // (1/5)^{1/4} > ((1/10)^{1/4})^2
        c.require(std::pow(0.2, 0.25) > std::pow(0.1, 0.5), "oracle t^{1/4}");
        const GroupPoint t = circle_point(BigRational(1, 10));
        c.require(check_submultiplicative(cq, circle_grid(10), SubmultMode::Exact, {{t, t}}).verdict == Verdict::Fails,
                  "t^{1/4} submultiplicative at 1/10");
    });

    report(9, "determinism", [](Check& c) {
        const std::string a = suite_bundle_dump();
        const std::string b = suite_bundle_dump();
        c.require(a == b, "bundles differ");
        c.require(a.find("timestamp") == std::string::npos, "timestamp in certificates");
    });

    return failures == 0 ? 0 : 1;
}
