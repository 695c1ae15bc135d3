#include <doctest.h>

#include "lpw/certify.hpp"

using namespace lpw;

namespace {

WeightFn increasing_phi()
{
    const auto g = GroupDescriptor::pruefer(2);
    return nested_finite_weight(PhiSequence(g, {BigRational(1, 8), BigRational(1, 4), BigRational(3, 8)},
                                            PhiTail{PhiTail::Kind::Normalized, BigRational(1, 2), BigRational(1, 2)},
                                            true));
}

}  // namespace

TEST_SUITE("certify")
{
    TEST_CASE("(b) on the scaled Pruefer weight")
    {
        const WeightFn u = scale_for_b(pruefer_weight(2), BigRational(2));
        const Certificate c = check_b(u, make_window(u.group(), "G_4"), Truncation::parse("N=8"));
        CHECK(c.holds());
        CHECK(c.payload["points"] == 16);
        CHECK(c.payload["holds"] == 16);
        CHECK(c.witness.is_null());
    }

    TEST_CASE("raw Pruefer weight: bound form 2 phi, and u(0) alone")
    {
        const WeightFn u = pruefer_weight(2);
        const Window w = make_window(u.group(), "G_4");
        CHECK(check_b(u, w, Truncation::parse("N=8"), BigRational(2)).holds());
        const Certificate at0 = check_b(u, explicit_window(u.group(), {identity(u.group())}), Truncation::parse("full"));
        CHECK(at0.holds());  // 15/112 <= 28/112
    }

    TEST_CASE("increasing phi fails with an exact witness")
    {
        const WeightFn u = increasing_phi();
        const Certificate c = check_b(u, make_window(u.group(), "G_3"), Truncation::parse("N=8"));
        CHECK(c.verdict == Verdict::Fails);
        REQUIRE_FALSE(c.witness.is_null());
        const BigRational lo = BigRational::parse(c.witness["conv_lo"].get<std::string>());
        const BigRational rhs = BigRational::parse(c.witness["bound_times_u"].get<std::string>());
        CHECK(lo > rhs);
        CHECK_FALSE(u.b_certified());
    }

    TEST_CASE("coarse truncation is inconclusive, never holds")
    {
        // (u*u)(0)/u(0) lies in [1.7247, 1.7521] at this truncation
        const WeightFn u = rationals_weight();
        const Certificate c =
            check_b(u, make_window(u.group(), "Q_1:1"), Truncation::parse("N=3,B=5"), BigRational(87, 50));
        CHECK(c.verdict == Verdict::Inconclusive);
        CHECK(c.payload.contains("inconclusive_points"));
    }

    TEST_CASE("rationals bound form 2 C phi")
    {
        const WeightFn u = rationals_weight();
        const auto b = u.raw_b_bound();
        REQUIRE(b.has_value());
        const auto& node = std::get<RationalsNode>(u.node().data);
        CHECK(*b == BigRational(2) * node.C() * node.phi.mass());
        CHECK(check_b(u, make_window(u.group(), "Q_3:3"), Truncation::parse("N=5,B=40"), b).holds());
    }

    TEST_CASE("parity and positivity")
    {
        const WeightFn u = rationals_weight();
        CHECK(check_parity_positivity(u, make_window(u.group(), "Q_3:3")).holds());
        const WeightFn s = direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(5))});
        CHECK(check_parity_positivity(s, make_window(s.group(), "sample:60:3:4")).holds());
        const WeightFn c = builtin_weight("circle-quarter");
        const Certificate pos = check_positivity(c, circle_grid(8));
        CHECK(pos.holds());
        CHECK(pos.payload["pointwise_failures"].size() == 1);
        CHECK(check_positivity(c, circle_grid(8), false).verdict == Verdict::Fails);
        // t^{1/4} is not even on the circle: w(1/8) != w(7/8)
        CHECK(check_evenness(c, circle_grid(8)).verdict == Verdict::Fails);
    }

    TEST_CASE("polynomial decay constants")
    {
        const WeightFn u = pruefer_weight(2);
        const auto db = poly_decay_bound(u, parse_point(u.group(), "1/2"));
        REQUIRE(db.has_value());
        CHECK(db->d == 0);
        CHECK(check_poly_decay(u, parse_point(u.group(), "1/2"), 20).holds());

        const WeightFn q = rationals_weight();
        const auto dq = poly_decay_bound(q, parse_point(q.group(), "1/2"));
        REQUIRE(dq.has_value());
        CHECK(dq->d == 2);
        CHECK(dq->C == BigRational(8));
        CHECK(check_poly_decay(q, parse_point(q.group(), "1/2"), 30).holds());

        const WeightFn s = direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3))});
        const auto ds = poly_decay_bound(s, parse_point(s.group(), "{1:1/2}"));
        REQUIRE(ds.has_value());
        CHECK(ds->d == 0);
        CHECK(check_poly_decay(s, parse_point(s.group(), "{1:1/2,2:1/9}"), 20).holds());
        CHECK_THROWS(check_poly_decay(u, identity(u.group()), 5));

        const Certificate b = check_poly_decay(builtin_weight("poly2"), real_point({1.0}), 10);
        CHECK(b.verdict == Verdict::Inconclusive);
        CHECK_FALSE(b.rigorous);
    }

    TEST_CASE("submultiplicativity")
    {
        const WeightFn e = builtin_weight("exp");
        CHECK(check_submultiplicative(e, real_grid(-5, 5, 21), SubmultMode::Exact).holds());
        const WeightFn c = builtin_weight("circle-quarter");
        const GroupPoint t = circle_point(BigRational(1, 10));
        const Certificate f = check_submultiplicative(c, circle_grid(10), SubmultMode::Exact, {{t, t}});
        CHECK(f.verdict == Verdict::Fails);
        CHECK(f.rigorous);
        const WeightFn w = algebra_weight(auto_scale(pruefer_weight(2)), BigRational(2));
        CHECK(check_submultiplicative(w, make_window(w.group(), "G_4"), SubmultMode::Exact).holds());
        const Certificate inv = check_submultiplicative(c, circle_grid(10), SubmultMode::Invariance);
        CHECK(inv.payload["L"].size() == 10);
    }

    TEST_CASE("equivalence")
    {
        const WeightFn u = auto_scale(pruefer_weight(2));
        const Certificate c = weight_equivalence(u.scaled(BigRational(3)), u, make_window(u.group(), "G_3"));
        CHECK(c.payload["C1"] == "3/1");
        CHECK(c.payload["C2"] == "3/1");
        const Certificate r = weight_equivalence(builtin_weight("poly2"), builtin_weight("poly2-char"),
                                                 real_grid(-5, 5, 101));
        CHECK(r.payload["C1"].get<double>() == doctest::Approx(std::exp(-5.0)));
        CHECK(r.payload["C2"].get<double>() == doctest::Approx(std::exp(5.0)));
    }

    TEST_CASE("essential infimum")
    {
        const Certificate c = ess_inf_check(builtin_weight("circle-quarter"), circle_grid(100));
        CHECK(c.verdict == Verdict::Fails);
        CHECK(c.payload["grid_minima_excluding_0"].size() == 4);
        const WeightFn w = algebra_weight(auto_scale(pruefer_weight(2)), BigRational(2));
        const Certificate a = ess_inf_check(w, make_window(w.group(), "G_4"));
        CHECK(a.holds());
        CHECK(a.payload["global_lower_bound"].get<double>() > 0.0);
        const Certificate one = ess_inf_check(builtin_weight("one"), real_grid(-1, 1, 5));
        CHECK(one.holds());
        CHECK(one.payload["global_lower_bound"].get<double>() == doctest::Approx(1.0));
    }

    TEST_CASE("coefficient and alpha certificates")
    {
        CHECK(check_subset_coeffs(SubsetCoeffs{}, 8).holds());
        const WeightFn s = direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(pruefer_weight(3)),
                                              auto_scale(pruefer_weight(2))});
        const Certificate a = check_alpha_constraints(s);
        CHECK(a.holds());
        CHECK(a.payload["alphas"][0] == "1/3");
        CHECK_THROWS(check_alpha_constraints(pruefer_weight(2)));
    }

    TEST_CASE("euclidean and product (b)")
    {
        CHECK(check_b(euclidean_weight(1), real_grid(-3, 3, 7), Truncation{}).holds());
        const Certificate raw = check_b(euclidean_weight(1, false), real_grid(-3, 3, 7), Truncation{});
        CHECK(raw.verdict == Verdict::Fails);
        const WeightFn p = product_weight(euclidean_weight(1), auto_scale(pruefer_weight(2)));
        const Window w = explicit_window(p.group(), {parse_point(p.group(), "(0;1/2)"), parse_point(p.group(), "(1;1/4)")});
        CHECK(check_b(p, w, Truncation::parse("N=8")).holds());
    }

    TEST_CASE("certificates round-trip")
    {
        const WeightFn u = scale_for_b(pruefer_weight(2), BigRational(2));
        const Certificate c = check_b(u, make_window(u.group(), "G_3"), Truncation::parse("N=6"));
        const Certificate back = Certificate::from_json(Json::parse(c.to_json().dump()));
        CHECK(back.to_json().dump() == c.to_json().dump());
        CHECK(back.id == c.id);
        CHECK(exit_code({c}) == 0);
        Certificate f = c;
        f.verdict = Verdict::Inconclusive;
        CHECK(exit_code({c, f}) == 3);
        f.verdict = Verdict::Fails;
        CHECK(exit_code({c, f}) == 1);
    }
}
