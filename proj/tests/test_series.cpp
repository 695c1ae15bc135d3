#include <doctest.h>

#include <cmath>

#include "lpw/countex.hpp"
#include "lpw/domar.hpp"

using namespace lpw;

TEST_SUITE("series")
{
    TEST_CASE("domar partial sums")
    {
        const auto p = domar_partial(builtin_weight("exp"), real_point({1.0}), 3);
        REQUIRE(p.size() == 3);
        CHECK(p[2].exact_partial.value() == BigRational(11, 6));
        const auto z = domar_partial(builtin_weight("poly2"), real_point({0.0}), 5);
        CHECK(z.back().partial == 0.0);
        const auto q = domar_partial(builtin_weight("poly2"), real_point({1.0}), 200);
        for (const auto& t : q) {
            double bound = 0.0;
            for (long n = 1; n <= t.n; ++n) bound += (std::log(2.0) + 2.0 * std::log(double(n))) / double(n * n);
            CHECK(t.partial <= bound + 1e-12);
        }
        CHECK_THROWS(domar_partial(builtin_weight("exp"), real_point({1.0}), 0));
    }

    TEST_CASE("domar classification")
    {
        const GroupPoint one = real_point({1.0});
        CHECK(domar_class(domar_classify(builtin_weight("poly2"), one)) == DomarClass::Convergent);
        CHECK(domar_class(domar_classify(builtin_weight("poly2-exp"), one)) == DomarClass::Divergent);
        CHECK(domar_class(domar_classify(builtin_weight("poly2-exp-log"), one)) == DomarClass::Divergent);
        CHECK(domar_class(domar_classify(builtin_weight("poly2-char"), one)) == DomarClass::Divergent);
        CHECK(domar_class(domar_classify(builtin_weight("poly2-char"), real_point({-1.0}))) == DomarClass::Convergent);
        CHECK(domar_class(domar_classify(builtin_weight("exp"), real_point({0.0}))) == DomarClass::Convergent);
        const Certificate c = domar_classify(builtin_weight("circle-quarter"), circle_point(BigRational(1, 3)));
        CHECK(domar_class(c) == DomarClass::Convergent);
        CHECK(c.payload["cap"].get<double>() <= 1e-300);
        CHECK(domar_class(domar_classify(builtin_weight("circle-inv-sqrt"), circle_point(BigRational(1, 3)))) ==
              DomarClass::Inconclusive);
    }

    TEST_CASE("algebra weights from lemma constructions are Domar-convergent")
    {
        const WeightFn w = algebra_weight(auto_scale(rationals_weight()), BigRational(2));
        const Certificate c = domar_classify(w, parse_point(w.group(), "1/2"), 300);
        CHECK(domar_class(c) == DomarClass::Convergent);
        CHECK(c.holds());
        CHECK(c.payload["d"].get<double>() == doctest::Approx(1.0));
    }

    TEST_CASE("q sequence")
    {
        const QSequence q = build_q_sequence(2);
        REQUIRE(q.q.size() == 2);
        CHECK(q.q[0] == 2);
        CHECK(q.q[1] == 220);
        // 220 > 4 e^4 > 218
        CHECK(4.0 * std::exp(4.0) < 220.0);
        CHECK(4.0 * std::exp(4.0) > 218.0);
        CHECK(q.next_log2 == 69826);
        CHECK(build_q_sequence(3).depth == 3);
        CHECK_THROWS(build_q_sequence(4));
        CHECK_THROWS(build_q_sequence(1));
    }

    TEST_CASE("fractional part bounds")
    {
        const QSequence q = build_q_sequence(2);
        const Certificate f1 = check_q_fractional_bound(q, 1);
        CHECK(f1.holds());
        CHECK(f1.payload["frac_lo_exclusive"] == "1/110");
        const BigRational hi = BigRational::parse(f1.payload["frac_hi"].get<std::string>());
        CHECK(hi < BigRational(1, 55));
        CHECK(hi.to_double() < std::exp(-4.0));
        const Certificate f2 = check_q_fractional_bound(q, 2);
        CHECK(f2.holds());
        CHECK(f2.payload["by_construction"] == true);
        CHECK_THROWS(check_q_fractional_bound(q, 3));
        CHECK_THROWS(check_q_fractional_bound(q, 0));
    }

    TEST_CASE("divergence terms")
    {
        const Certificate d = countex_divergence_lower_bound(build_q_sequence(2), builtin_weight("circle-quarter"));
        CHECK(d.holds());
        CHECK(d.payload["terms"][0]["term_lower"].get<double>() >= 0.25);
        CHECK(d.payload["terms"][0]["term_lower"].get<double>() == doctest::Approx(std::log(110.0) / 16.0).epsilon(1e-6));
        CHECK(d.payload["verified_sum_lower"] == "1/2");
        CHECK_THROWS(countex_divergence_lower_bound(build_q_sequence(2), builtin_weight("poly2")));
    }
}
