#include "lpw/conv.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "lpw/sigma.hpp"

namespace lpw {

namespace {

RationalInterval nested_conv(const WeightFn& u, const NestedNode& node, const GroupPoint& x, const Truncation& trunc)
{
    const PhiSequence& phi = node.phi;
    const GroupDescriptor& g = u.group();
    const int n = layer_of(g, x);
    const int N = trunc.closed_form ? n : trunc.layers;
    if (N < n) throw std::invalid_argument("conv_at: point lies beyond the truncation layer");

    const BigRational p(static_cast<long>(g.p));
    auto U = [&](int j) { return j == 1 ? p : pow(p, j) - pow(p, j - 1); };
    const BigRational G_prev = n == 1 ? BigRational(0) : pow(p, n - 1);

    // y in U_j, j < n, pairs with x - y in U_n (and symmetrically); y, x - y both
    // in U_n unless y lies in the coset x + G_{n-1}; for j > n both lie in U_j.
    const BigRational phi_n = phi.term(n);
    BigRational lower(0);
    for (int j = 1; j < n; ++j) lower += U(j) * phi.term(j);
    BigRational lo = BigRational(2) * phi_n * lower + (U(n) - G_prev) * phi_n * phi_n;
    for (int j = n + 1; j <= N; ++j) lo += U(j) * phi.term(j) * phi.term(j);
    const BigRational tail = phi.pruefer_square_tail(N);

    const BigRational s2 = u.scale() * u.scale();
    if (trunc.closed_form) {
        const BigRational v = s2 * (lo + tail);
        return {v, v};
    }
    return {s2 * lo, s2 * (lo + tail)};
}

RationalInterval sum_conv(const WeightFn& u, const SumNode& node, const GroupPoint& x, const Truncation& trunc)
{
    const auto& sx = x.expect<SumPoint>("direct-sum conv_at");
    const std::size_t K = node.summands.size();
    if (K > 20) throw std::invalid_argument("conv_at: too many summands for exact enumeration");

    // Per coordinate: the allowed states and their factor intervals.
    //   x_j = 0:  y_j = 0 (factor 1, j in neither support) or y_j != 0 (j in both)
    //   x_j != 0: y_j = 0 (j in s(x-y) only), y_j = x_j (j in s(y) only), else both
    struct State {
        bool in_s1;
        bool in_s2;
        RationalInterval factor;
    };
    std::vector<std::vector<State>> states(K);
    const BigRational one(1);
    for (std::size_t j = 1; j <= K; ++j) {
        const WeightFn& uj = node.summands[j - 1];
        const BigRational& a = node.alphas[j - 1];
        const GroupPoint zero = identity(uj.group());
        const BigRational u0 = uj.value(zero);
        const GroupPoint xj = coordinate(u.group(), sx, j);
        if (is_identity(xj)) {
            const RationalInterval c = conv_at(uj, zero, trunc);
            const BigRational a2 = a * a;
            states[j - 1].push_back({false, false, {one, one}});
            states[j - 1].push_back({true, true, {a2 * (c.lo - u0 * u0), a2 * (c.hi - u0 * u0)}});
        } else {
            const BigRational ux = uj.value(xj);
            const RationalInterval c = conv_at(uj, xj, trunc);
            const BigRational single = a * ux;
            const BigRational a2 = a * a;
            const BigRational cross = BigRational(2) * u0 * ux;
            states[j - 1].push_back({false, true, {single, single}});
            states[j - 1].push_back({true, false, {single, single}});
            states[j - 1].push_back({true, true, {a2 * (c.lo - cross), a2 * (c.hi - cross)}});
        }
    }

    BigRational lo(0);
    BigRational hi(0);
    std::vector<std::size_t> choice(K, 0);
    for (;;) {
        Subset s1 = 0;
        Subset s2 = 0;
        RationalInterval term(one, one);
        for (std::size_t j = 0; j < K; ++j) {
            const State& st = states[j][choice[j]];
            if (st.in_s1) s1 |= Subset(1) << j;
            if (st.in_s2) s2 |= Subset(1) << j;
            term = mul_nonneg(term, st.factor);
        }
        const BigRational coeff = node.coeffs.a(s1) * node.coeffs.a(s2);
        lo += coeff * term.lo;
        hi += coeff * term.hi;
        std::size_t j = 0;
        while (j < K && ++choice[j] == states[j].size()) choice[j++] = 0;
        if (j == K) break;
    }
    const BigRational s2 = u.scale() * u.scale();
    return {s2 * lo, s2 * hi};
}

}  // namespace

RationalsConvParts rationals_conv_parts(const WeightFn& u, const GroupPoint& x, const Truncation& trunc)
{
    const auto* node = std::get_if<RationalsNode>(&u.node().data);
    if (!node) throw std::invalid_argument("rationals_conv_parts needs a rationals weight");
    const PhiSequence& phi = node->phi;
    const GroupDescriptor& g = u.group();
    const BigRational q = x.expect<RationalPoint>("rationals conv_at").value;
    const int n = layer_of(g, x);
    const int N = trunc.layers;
    if (N < n) throw std::invalid_argument("conv_at: point lies beyond the truncation layer");
    const long B = trunc.range;
    const BigInt Q = even_floor(q);
    if (BigInt(B) < Q + 2) throw std::invalid_argument("conv_at: range cutoff B must be at least floor|x| + 2");

    const BigInt tN = g.chain.term(N);
    if (!tN.fits_slong_p()) throw std::invalid_argument("conv_at: t_N too large for enumeration");
    const long t = tN.get_si();
    const long kmax = B * t;
    if (kmax > 50'000'000) throw std::invalid_argument("conv_at: truncation set too large");
    const long a = (q * BigRational(tN)).num().get_si();  // x = a / t_N

    // phi_{layer(m/t)} depends only on gcd(m, t).
    std::map<long, BigRational> phi_by_gcd;
    auto phi_of = [&](long m) -> const BigRational& {
        const long d = std::gcd(m < 0 ? -m : m, t);
        auto it = phi_by_gcd.find(d);
        if (it != phi_by_gcd.end()) return it->second;
        const int layer = layer_of(g, rational_point(BigRational(BigInt(m), tN)));
        return phi_by_gcd.emplace(d, phi.term(layer)).first->second;
    };
    auto sigma_floor = [&](long m) {
        long f = (m < 0 ? -m : m) / t;
        if (f < 1) f = 1;
        return BigRational(BigInt(1), BigInt(f) * BigInt(f));
    };

    BigRational partial(0);
    for (long k = -kmax; k <= kmax; ++k) {
        const long m = a - k;
        partial += phi_of(k) * sigma_floor(k) * phi_of(m) * sigma_floor(m);
    }

    const BigRational one(1);
    const BigRational s2 = u.scale() * u.scale();
    RationalsConvParts out;
    out.partial = s2 * partial;
    out.layer_tail = s2 * BigRational(2) * (one + constants::zeta2().hi) * phi.rationals_square_tail(N);
    const BigRational D(BigInt(BigInt(B) - Q - 1));
    const BigRational Bq(B);
    out.range_tail = s2 * phi.max_term() * BigRational(2) * phi.mass() / (Bq * Bq) * (one / (D * D) + one / D);
    return out;
}

RationalInterval conv_at(const WeightFn& u, const GroupPoint& x, const Truncation& trunc)
{
    if (!belongs(u.group(), x)) throw GroupMismatch("conv_at: point is not in the weight's group");
    if (const auto* n = std::get_if<NestedNode>(&u.node().data)) return nested_conv(u, *n, x, trunc);
    if (std::holds_alternative<RationalsNode>(u.node().data)) {
        const auto parts = rationals_conv_parts(u, x, trunc);
        return {parts.partial, parts.partial + parts.layer_tail + parts.range_tail};
    }
    if (const auto* s = std::get_if<SumNode>(&u.node().data)) return sum_conv(u, *s, x, trunc);
    throw std::invalid_argument("conv_at: no closed-form tail available for a " + u.construction() + " weight");
}

}  // namespace lpw
