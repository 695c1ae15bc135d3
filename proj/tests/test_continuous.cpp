#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpw/continuous.hpp"
#include "lpw/domar.hpp"
#include "oracles.hpp"

using namespace lpw;

TEST_SUITE("continuous")
{
    TEST_CASE("Beta segment equals pi on (0,1)")
    {
        for (int k = 1; k <= 20; ++k) {
            const double t = k / 21.0;
            CHECK(std::fabs(beta_segment(t).value - oracle::beta_half_half()) <= 1e-9);
            const double wrap = std::numbers::pi - 4.0 * std::atan(std::sqrt(t));
            CHECK(std::fabs(wrap_segment(t).value - wrap) <= 1e-9);
        }
        CHECK_THROWS(beta_segment(0.0));
    }

    TEST_CASE("circle ratio")
    {
        const CircleRatio r = circle_conv_ratio(builtin_weight("circle-inv-sqrt"));
        CHECK(r.sup.contains(std::numbers::pi));
        CHECK(r.sup.width() <= 1e-6);
        for (const auto& row : r.cert.payload["grid"]) CHECK(row["ratio"].get<double>() <= r.sup.hi);
        // ratio -> 0 as t -> 0+
        CHECK(std::sqrt(1e-8) * circle_conv_closed_form(1e-8) < 1e-3);
        const CircleRatio half = circle_conv_ratio(builtin_weight("circle-inv-sqrt").scaled(BigRational(1, 2)));
        CHECK(half.sup.contains(std::numbers::pi / 2));
        CHECK_THROWS(circle_conv_ratio(builtin_weight("circle-quarter")));
    }

    TEST_CASE("line convolution matches the Cauchy closed form")
    {
        for (double t = -10.0; t <= 10.0; t += 0.5) {
            CHECK(std::fabs(line_conv_value(t).value - oracle::cauchy_conv(t)) <= 1e-9);
            CHECK(line_conv_closed_form(t) == doctest::Approx(oracle::cauchy_conv(t)));
        }
        const LineRatio l = line_conv_ratio(1);
        CHECK(l.max_deviation <= 1e-6);
        CHECK(l.sup.contains(2 * std::numbers::pi));
        CHECK(l.at_zero.contains(std::numbers::pi / 2));
        const LineRatio l2 = line_conv_ratio(2);
        CHECK(l2.sup.contains(4 * std::numbers::pi * std::numbers::pi));
        CHECK_THROWS(line_conv_ratio(4));
    }

    TEST_CASE("halving h reduces the error estimate")
    {
        double prev = 1e300;
        for (double h : {0.8, 0.4, 0.2}) {
            QuadratureSpec s;
            s.h = h;
            const QuadResult r = line_conv_value(3.0, s);
            CHECK(r.error < prev);
            prev = r.error;
        }
    }

    TEST_CASE("Beurling integrals")
    {
        const Certificate p = beurling_integral(builtin_weight("poly2"));
        CHECK(beurling_class(p) == "finite");
        const double closed = 2.0 * std::numbers::pi * std::numbers::ln2;
        CHECK(p.payload["total_lo"].get<double>() <= closed);
        CHECK(p.payload["total_hi"].get<double>() >= closed);
        CHECK(beurling_class(beurling_integral(builtin_weight("exp"))) == "infinite");
        CHECK(beurling_class(beurling_integral(builtin_weight("poly2-exp"))) == "infinite");
        CHECK(beurling_class(beurling_integral(builtin_weight("poly2-exp-log"))) == "infinite");
        CHECK(beurling_class(beurling_integral(euclidean_weight(1))) == "finite");
        CHECK_THROWS(beurling_integral(builtin_weight("circle-quarter")));
    }

    TEST_CASE("Beurling and Domar agree on the formula weights")
    {
        for (const char* n : {"poly2", "poly2-exp", "poly2-exp-log", "exp", "poly2-char"}) {
            const WeightFn w = builtin_weight(n);
            const bool finite = beurling_class(beurling_integral(w)) == "finite";
            const bool convergent = domar_class(domar_classify(w, real_point({1.0}))) == DomarClass::Convergent;
            CHECK_MESSAGE(finite == convergent, n);
        }
    }

    TEST_CASE("tolerance from the environment")
    {
        CHECK(QuadratureSpec::default_tolerance() > 0.0);
    }
}
