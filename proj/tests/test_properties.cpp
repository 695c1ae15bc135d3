#include <doctest.h>

#include <cmath>
#include <random>

#include "lpw/certify.hpp"
#include "lpw/domar.hpp"
#include "oracles.hpp"

using namespace lpw;

namespace {

GroupPoint random_pruefer(std::mt19937_64& g, std::uint64_t p, int max_layer)
{
    std::uniform_int_distribution<int> layer(0, max_layer);
    const BigInt den = oracle::ipow(p, static_cast<unsigned>(layer(g)));
    std::uniform_int_distribution<unsigned long> num(0, den.get_ui() - 1);
    return pruefer_point(p, BigRational(BigInt(num(g)), den));
}

GroupPoint random_rational(std::mt19937_64& g)
{
    static const long dens[] = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 30, 36, 40, 45, 48};
    std::uniform_int_distribution<std::size_t> den(0, std::size(dens) - 1);
    std::uniform_int_distribution<long> num(-60, 60);
    return rational_point(BigRational(BigInt(num(g)), BigInt(dens[den(g)])));
}

}  // namespace

TEST_SUITE("properties")
{
    TEST_CASE("evenness and positivity at random points")
    {
        auto g = oracle::rng(11);
        const WeightFn u = pruefer_weight(3);
        const WeightFn q = rationals_weight();
        for (int i = 0; i < 200; ++i) {
            const GroupPoint x = random_pruefer(g, 3, 6);
            CHECK(u.value(x) == u.value(neg(x)));
            CHECK(u.value(x) > BigRational(0));
            const GroupPoint r = random_rational(g);
            CHECK(q.value(r) == q.value(neg(r)));
            CHECK(q.value(r) > BigRational(0));
        }
    }

    TEST_CASE("truncation intervals are nested and shrink")
    {
        auto g = oracle::rng(12);
        const WeightFn u = pruefer_weight(2);
        for (int i = 0; i < 20; ++i) {
            const GroupPoint x = random_pruefer(g, 2, 4);
            RationalInterval prev = conv_at(u, x, Truncation::parse("N=5"));
            for (int N : {6, 8, 10}) {
                const RationalInterval cur = conv_at(u, x, Truncation::parse("N=" + std::to_string(N)));
                CHECK(cur.lo >= prev.lo);
                CHECK(cur.hi <= prev.hi);
                CHECK(cur.width() <= prev.width());
                prev = cur;
            }
        }
    }

    TEST_CASE("exact submultiplicativity matches an all-pairs oracle")
    {
        // algebra weights on G_3 are submultiplicative; shrinking by 1/2 can break w(s+t) <= w(s)w(t)
        for (const char* pstr : {"2", "3"}) {
            const WeightFn w = algebra_weight(auto_scale(pruefer_weight(2)), BigRational::parse(pstr));
            for (const BigRational& k : {BigRational(1), BigRational(2), BigRational(1, 2)}) {
                const WeightFn wk = w.scaled(k);
                const Window win = make_window(wk.group(), "G_3");
                bool oracle_ok = true;
                for (const auto& s : win.points)
                    for (const auto& t : win.points)
                        oracle_ok = oracle_ok && wk.eval(add(s, t)) <= wk.eval(s) * wk.eval(t) * (1 + 1e-12);
                const Certificate c = check_submultiplicative(wk, win, SubmultMode::Exact);
                CHECK_MESSAGE((c.verdict == Verdict::Holds) == oracle_ok, pstr, " ", k.str());
                CHECK(c.verdict != Verdict::Inconclusive);
            }
        }
    }

    TEST_CASE("domar partial sums are monotone and under the cap")
    {
        auto g = oracle::rng(13);
        std::uniform_real_distribution<double> xs(-3.0, 3.0);
        for (const char* name : {"poly2", "one"}) {
            const WeightFn w = builtin_weight(name);
            for (int i = 0; i < 5; ++i) {
                const GroupPoint x = real_point({xs(g)});
                const auto terms = domar_partial(w, x, 300);
                const Certificate c = domar_classify(w, x, 300);
                REQUIRE(domar_class(c) == DomarClass::Convergent);
                const double cap = c.payload["cap"].get<double>();
                for (std::size_t n = 1; n < terms.size(); ++n) CHECK(terms[n].partial >= terms[n - 1].partial);
                CHECK(terms.back().partial <= cap);
            }
        }
    }

    TEST_CASE("equivalence recovers a random rational factor")
    {
        auto g = oracle::rng(14);
        std::uniform_int_distribution<long> num(1, 50), den(1, 50);
        const WeightFn u = auto_scale(rationals_weight());
        const Window win = make_window(u.group(), "Q_2:2");
        for (int i = 0; i < 10; ++i) {
            const BigRational c(BigInt(num(g)), BigInt(den(g)));
            const Certificate e = weight_equivalence(u.scaled(c), u, win);
            CHECK(BigRational::parse(e.payload["C1"].get<std::string>()) == c);
            CHECK(BigRational::parse(e.payload["C2"].get<std::string>()) == c);
        }
    }

    TEST_CASE("certificates round-trip byte for byte")
    {
        auto g = oracle::rng(15);
        const WeightFn u = auto_scale(pruefer_weight(5));
        for (int i = 0; i < 10; ++i) {
            const Window w = explicit_window(u.group(), {random_pruefer(g, 5, 3), random_pruefer(g, 5, 3)});
            const Certificate c = check_b(u, w, Truncation::parse("N=6"));
            const std::string s = c.to_json().dump();
            CHECK(Certificate::from_json(Json::parse(s)).to_json().dump() == s);
        }
    }

    TEST_CASE("provenance round-trip reproduces values")
    {
        auto g = oracle::rng(16);
        const WeightFn s = direct_sum_weight({auto_scale(pruefer_weight(2)), auto_scale(rationals_weight())});
        const WeightFn back = WeightFn::from_provenance(Json::parse(s.provenance().dump()));
        const Window w = make_window(s.group(), "sample:40:3:16");
        for (const auto& x : w.points) CHECK(back.value(x) == s.value(x));
        (void)g;
    }
}
