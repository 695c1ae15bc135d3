#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpw/certify.hpp"
#include "lpw/weight.hpp"

using namespace lpw;

namespace {
GroupPoint pt(const WeightFn& w, const char* s) { return parse_point(w.group(), s); }
}  // namespace

TEST_SUITE("weights")
{
    TEST_CASE("pruefer weight values")
    {
        const WeightFn u = pruefer_weight(2);
        CHECK(u.value(pt(u, "1/2")) == BigRational(1, 4));
        CHECK(u.value(pt(u, "3/8")) == BigRational(1, 64));
        CHECK(u.value(pt(u, "0")) == BigRational(1, 4));
        const WeightFn u3 = pruefer_weight(3);
        CHECK(u3.value(pt(u3, "1/3")) == BigRational(1, 6));
        CHECK(std::get<NestedNode>(u.node().data).phi.mass() == BigRational(1));
        CHECK_THROWS(pruefer_weight(6));
    }

    TEST_CASE("rationals weight values")
    {
        const WeightFn u = rationals_weight();
        CHECK(u.value(pt(u, "0")) == BigRational(1, 2));
        CHECK(u.value(pt(u, "5/2")) == BigRational(1, 32));
        CHECK(u.value(pt(u, "-5/2")) == BigRational(1, 32));
        const Json prov = u.provenance();
        CHECK(prov["params"].contains("C"));
        CHECK(prov["params"].contains("C2"));
    }

    TEST_CASE("direct sum weight values")
    {
        std::vector<WeightFn> s{auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3))};
        const WeightFn u = direct_sum_weight(s);
        const auto& node = std::get<SumNode>(u.node().data);
        const BigRational eps1(1, 60);
        CHECK(u.value(identity(u.group())) == eps1);
        const BigRational u1 = s[0].value(pt(s[0], "1/2"));
        const BigRational u2 = s[1].value(pt(s[1], "1/3"));
        CHECK(u1 == BigRational(1, 8));  // (1/4) / 2
        CHECK(u.value(pt(u, "{1:1/2}")) == node.coeffs.a(Subset{0b1}) * node.alphas[0] * u1);
        CHECK(u.value(pt(u, "{1:1/2,2:1/3}")) ==
              BigRational(1, 180) * node.alphas[0] * node.alphas[1] * u1 * u2);
    }

    TEST_CASE("direct sum needs (b)-certified summands")
    {
        CHECK_THROWS(direct_sum_weight({pruefer_weight(2), pruefer_weight(3)}));
        CHECK_THROWS(direct_sum_weight({builtin_weight("poly2")}));
    }

    TEST_CASE("euclidean and product weights")
    {
        const WeightFn r = euclidean_weight(1, false);
        CHECK(r.eval(real_point({0.0})) == 1.0);
        CHECK(r.eval(real_point({2.0})) == doctest::Approx(0.2));
        const WeightFn n = euclidean_weight(1);
        CHECK(n.eval(real_point({0.0})) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
        CHECK(n.provenance()["params"]["normalization"] == "(2pi)^-1");
        const WeightFn h = auto_scale(pruefer_weight(2));
        const WeightFn p = product_weight(r, h);
        const GroupPoint x = parse_point(p.group(), "(1;1/2)");
        CHECK(p.eval(x) == doctest::Approx(0.5 * 0.125));
        CHECK(p.eval(neg(x)) == p.eval(x));
        CHECK(p.eval(identity(p.group())) == doctest::Approx(r.eval(real_point({0.0})) * h.eval(identity(h.group()))));
    }

    TEST_CASE("algebra weights")
    {
        CHECK(*algebra_value(BigRational(1, 4), BigRational(2)) == BigRational(2));
        CHECK(*algebra_value(BigRational(1, 8), BigRational(3)) == BigRational(4));
        CHECK_FALSE(algebra_value(BigRational(1, 2), BigRational(2)).has_value());
        const WeightFn u = auto_scale(pruefer_weight(2));
        const WeightFn w = algebra_weight(u, BigRational(2));
        CHECK(w.is_algebra());
        // u(1/2) = 1/8, w = 8^{1/2}
        CHECK(w.eval(pt(w, "1/2")) == doctest::Approx(std::sqrt(8.0)));
        CHECK_FALSE(w.try_value(pt(w, "1/4")).has_value());  // u = 1/32
        const WeightFn w3 = algebra_weight(u, BigRational(3));
        REQUIRE(w3.try_value(pt(w3, "1/2")).has_value());
        CHECK(*w3.try_value(pt(w3, "1/2")) == BigRational(4));  // (1/8)^{-2/3}
        CHECK_THROWS(algebra_weight(u, BigRational(1)));
        CHECK_THROWS(algebra_weight(pruefer_weight(2), BigRational(2)));
    }

    TEST_CASE("scale_for_b")
    {
        const WeightFn u = pruefer_weight(2);
        const WeightFn v = scale_for_b(u, BigRational(2));
        CHECK(v.scale() == BigRational(1, 2));
        CHECK(v.value(pt(v, "1/2")) == BigRational(1, 8));
        CHECK(scale_for_b(v, BigRational(1)).scale() == v.scale());
        CHECK_THROWS(scale_for_b(u, BigRational(1)));  // below the certified bound 2
        const Certificate e = weight_equivalence(u, v, make_window(u.group(), "G_3"));
        CHECK(e.payload["C1"] == "2/1");
        CHECK(e.payload["C2"] == "2/1");
    }

    TEST_CASE("builtin formula weights")
    {
        const GroupPoint one = real_point({1.0});
        CHECK(builtin_weight("poly2").eval(one) == 2.0);
        CHECK(builtin_weight("exp").eval(one) == doctest::Approx(std::numbers::e));
        CHECK(builtin_weight("poly2-exp").log_eval(real_point({800.0})) ==
              doctest::Approx(800.0 + std::log1p(640000.0)));
        const WeightFn c = builtin_weight("circle-quarter");
        CHECK(c.eval(circle_point(BigRational(1, 16))) == doctest::Approx(0.5));
        CHECK_THROWS(builtin_weight("nope"));
    }

    TEST_CASE("provenance round-trip")
    {
        std::vector<WeightFn> ws{
            auto_scale(pruefer_weight(2)),
            rationals_weight(),
            direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3))}),
            euclidean_weight(2),
            product_weight(euclidean_weight(1), auto_scale(pruefer_weight(2))),
            algebra_weight(auto_scale(pruefer_weight(3)), BigRational(3, 2)),
            builtin_weight("poly2-exp-log"),
        };
        for (const auto& w : ws) {
            const Json j = w.provenance();
            CHECK(j["schema"] == "lpw.weight/1");
            const WeightFn back = WeightFn::from_provenance(j);
            CHECK(back.provenance().dump() == j.dump());
        }
    }
}
