#include <doctest.h>

#include "lpw/conv.hpp"
#include "lpw/weight.hpp"
#include "lpw/window.hpp"
#include "oracles.hpp"

using namespace lpw;

namespace {

BigRational default_phi_pruefer(std::uint64_t p, int n)
{
    return BigRational(BigInt(1), oracle::ipow(2 * p, static_cast<unsigned>(n)));
}

// u(q) = phi_n / max(1, floor|q|)^2 with n the least layer containing q, t_n = n!.
BigRational rationals_u(const BigRational& q)
{
    int n = 1;
    BigInt t = 1;
    while (BigRational(q * BigRational(t)).den() != 1) {
        ++n;
        t *= n;
    }
    const BigRational phi(BigInt(1), BigInt(t * oracle::ipow(2, static_cast<unsigned>(n))));
    BigInt f = q.abs().floor();
    if (f < 1) f = 1;
    return phi / BigRational(BigInt(f * f));
}

}  // namespace

TEST_SUITE("conv")
{
    TEST_CASE("closed form at zero for p = 2, 3, 5")
    {
        for (std::uint64_t p : {2u, 3u, 5u}) {
            const WeightFn u = pruefer_weight(p);
            const RationalInterval c = conv_at(u, identity(u.group()), Truncation::parse("full"));
            CHECK(c.is_point());
            CHECK(c.lo == oracle::pruefer_conv_zero(p));
        }
        const WeightFn u = pruefer_weight(2);
        CHECK(conv_at(u, identity(u.group()), Truncation::parse("full")).lo == BigRational(15, 112));
    }

    TEST_CASE("truncated enclosure: lo is the G_N sum, hi - lo is the closed-form tail")
    {
        const WeightFn u = pruefer_weight(2);
        const auto phi = [](int n) { return default_phi_pruefer(2, n); };
        for (unsigned N : {3u, 5u}) {
            const Truncation tr = Truncation::parse("N=" + std::to_string(N));
            for (const auto& x : make_window(u.group(), "G_3").points) {
                const auto& pp = x.expect<PrueferPoint>("test");
                const BigInt k = pp.k * oracle::ipow(2, N - pp.n);
                const BigRational brute = oracle::pruefer_conv_brute(2, N, k, phi);
                const RationalInterval c = conv_at(u, x, tr);
                CHECK(c.lo == brute);
                const RationalInterval full = conv_at(u, x, Truncation::parse("full"));
                CHECK(c.contains(full.lo));
            }
        }
        // hi - lo at 0 with N = 3 is sum_{j>3} 2^{j-1} 16^{-j}.
        const RationalInterval c = conv_at(u, identity(u.group()), Truncation::parse("N=3"));
        CHECK(c.hi - c.lo == BigRational(1, 2) * pow(BigRational(1, 8), 4) / BigRational(7, 8));
    }

    TEST_CASE("brute force over G_6 lies inside the N = 4 enclosure")
    {
        const WeightFn u = pruefer_weight(3);
        const auto phi = [](int n) { return default_phi_pruefer(3, n); };
        const RationalInterval c = conv_at(u, parse_point(u.group(), "1/9"), Truncation::parse("N=4"));
        const BigRational brute = oracle::pruefer_conv_brute(3, 6, BigInt(81), phi);
        CHECK(c.lo <= brute);
        CHECK(brute <= c.hi);
    }

    TEST_CASE("rationals enclosure against a direct sum")
    {
        const WeightFn u = rationals_weight();
        const Truncation tr = Truncation::parse("N=3,B=4");
        for (const char* xs : {"0", "1/2", "-5/3", "7/6"}) {
            const GroupPoint x = parse_point(u.group(), xs);
            const BigRational xv = x.expect<RationalPoint>("test").value;
            BigRational brute(0);
            const long t = 6;  // t_3
            for (long k = -4 * t; k <= 4 * t; ++k) {
                const BigRational y{BigInt(k), BigInt(t)};
                brute += rationals_u(y) * rationals_u(xv - y);
            }
            const RationalsConvParts parts = rationals_conv_parts(u, x, tr);
            CHECK(parts.partial == brute);
            const RationalInterval c = conv_at(u, x, tr);
            CHECK(c.lo == brute);
            CHECK(c.hi == brute + parts.layer_tail + parts.range_tail);
            // a finer truncation stays inside
            const RationalInterval fine = conv_at(u, x, Truncation::parse("N=4,B=10"));
            CHECK(fine.lo >= c.lo);
            CHECK(fine.hi <= c.hi);
        }
    }

    TEST_CASE("the oracle itself reproduces u values")
    {
        const WeightFn u = rationals_weight();
        for (const char* xs : {"0", "5/2", "-5/2", "1/6", "13/24"})
            CHECK(rationals_u(BigRational::parse(xs)) == u.value(parse_point(u.group(), xs)));
    }

    TEST_CASE("direct sum enclosure contains a brute-force sum")
    {
        const WeightFn a = auto_scale(pruefer_weight(2));
        const WeightFn b = auto_scale(pruefer_weight(3));
        const WeightFn u = direct_sum_weight({a, b});
        const GroupPoint x = parse_point(u.group(), "{1:1/2,2:1/3}");
        const RationalInterval c = conv_at(u, x, Truncation::parse("L=3"));
        // Direct enumeration over G_3 x G_3 (coordinates 0 included).
        BigRational brute(0);
        const auto wa = make_window(a.group(), "G_3").points;
        const auto wb = make_window(b.group(), "G_3").points;
        for (const auto& ya : wa)
            for (const auto& yb : wb) {
                std::vector<std::pair<std::size_t, GroupPoint>> cs;
                if (!is_identity(ya)) cs.emplace_back(1, ya);
                if (!is_identity(yb)) cs.emplace_back(2, yb);
                const GroupPoint y = sum_point(cs);
                brute += u.value(y) * u.value(sub(x, y));
            }
        CHECK(c.lo <= brute);
        CHECK(brute <= c.hi);
    }

    TEST_CASE("formula weights have no discrete tail")
    {
        CHECK_THROWS(conv_at(builtin_weight("poly2"), real_point({0.0}), Truncation{}));
    }
}
