#include "lpw/countex.hpp"

#include <cmath>
#include <stdexcept>

#include "lpw/interval.hpp"

namespace lpw {

namespace {

// Least m with q m > 2 q exp(q^2), i.e. m = floor(2 exp(q^2)) + 1, certified by enclosure.
BigInt next_multiplier(const BigInt& q)
{
    const BigRational x(BigInt(q * q));
    for (int terms = 40; terms <= 640; terms *= 2) {
        const RationalInterval e = exp_bounds(x, terms);
        const BigInt lo = (BigRational(2) * e.lo).floor();
        const BigInt hi = (BigRational(2) * e.hi).floor();
        if (lo == hi) return BigInt(lo + 1);
    }
    throw std::runtime_error("could not certify the next q multiplier");
}

Certificate countex_cert(const std::string& property, const QSequence& seq)
{
    Certificate c;
    c.property = property;
    c.window = {{"depth", seq.depth}};
    c.payload["q"] = seq.to_json();
    return c;
}

// 10^-30: a short stand-in for the tail bound 4/q_3.
BigRational tiny()
{
    return BigRational(BigInt(1), pow(BigInt(10), 30));
}

}  // namespace

BigInt QSequence::next_lower() const
{
    return BigInt(next_factor * pow(BigInt(2), next_log2));
}

Json QSequence::to_json() const
{
    Json qs = Json::array();
    for (const auto& v : q) qs.push_back(v.get_str());
    Json ms = Json::array();
    for (const auto& v : multiplier) ms.push_back(v.get_str());
    Json j = {{"depth", depth}, {"q", qs}, {"multipliers", ms}};
    const std::string name = "q_" + std::to_string(q.size() + 1);
    j["symbolic"] = {{"name", name},
                     {"definition", name + " = q_" + std::to_string(q.size()) + " * (floor(2 exp(q_" +
                                        std::to_string(q.size()) + "^2)) + 1)"},
                     {"lower_bound", next_factor.get_str() + "*2^" + std::to_string(next_log2)}};
    return j;
}

QSequence build_q_sequence(int depth)
{
    if (depth < 2) throw std::invalid_argument("countex depth must be at least 2");
    if (depth > 3)
        throw std::invalid_argument("countex depth > 3 refused: q_3 already exceeds e^48000 and q_4 has no "
                                    "representable magnitude");
    QSequence s;
    s.depth = depth;
    s.q.push_back(BigInt(2));
    s.multiplier.push_back(BigInt(2));
    const BigInt m2 = next_multiplier(s.q[0]);
    s.multiplier.push_back(m2);
    s.q.push_back(BigInt(s.q[0] * m2));
    // q_3 > 2 q_2 exp(q_2^2) >= 2 q_2 2^{floor(q_2^2 / ln2_hi)}.
    const BigInt sq(s.q[1] * s.q[1]);
    s.next_factor = BigInt(2 * s.q[1]);
    s.next_log2 = (BigRational(sq) / constants::ln2().hi).floor().get_ui();
    return s;
}

Certificate check_q_fractional_bound(const QSequence& seq, int n)
{
    if (n < 1 || static_cast<std::size_t>(n) > seq.concrete())
        throw std::invalid_argument("check_q_fractional_bound: n must be in [1, " + std::to_string(seq.concrete()) +
                                    "]");
    Certificate c = countex_cert("countex-frac", seq);
    c.window["n"] = n;
    const BigInt& qn = seq.q[n - 1];
    const BigRational qn2(BigInt(qn * qn));
    c.payload["n"] = n;
    c.payload["q_n"] = qn.get_str();

    // q_{k-1} | q_k makes q_n sum_{k<=n} 1/q_k an integer, so {q_n alpha} = q_n sum_{k>n} 1/q_k.
    // Beyond the first symbolic entry L the tail is below 2/L since q_{k+1} > 2 q_k.
    if (static_cast<std::size_t>(n) < seq.concrete()) {
        const BigInt& q1 = seq.q[n];
        const BigInt L = seq.next_lower();
        const BigRational lo(qn, q1);
        if (!(BigRational(BigInt(2 * qn), L) <= tiny())) throw std::logic_error("tail bound is not small");
        const BigRational hi = lo + tiny();
        const RationalInterval e = exp_bounds(-qn2);
        c.payload["exp_neg_qn2"] = {{"lo", e.lo.str()}, {"hi", e.hi.str()}};
        c.payload["exp_neg_qn2_approx"] = e.lo.to_double();
        const BigRational ratio(BigInt(2 * qn), q1);
        const bool below_ratio = hi < ratio;
        const bool below_exp = hi < e.lo;
        c.payload["frac_lo_exclusive"] = lo.str();
        c.payload["frac_hi"] = hi.str();
        c.payload["frac_hi_note"] = "q_n/q_{n+1} + 2 q_n / q_{n+2}, with 2 q_n / q_{n+2} <= 1e-30";
        c.payload["2q_n/q_{n+1}"] = ratio.str();
        c.payload["below_ratio"] = below_ratio;
        c.payload["below_exp"] = below_exp;
        c.verdict = below_ratio && below_exp ? Verdict::Holds : Verdict::Fails;
    } else {
        // q_{n+1} is symbolic: {q_n alpha} < q_n/q_{n+1} + 2 q_n/q_{n+2} < 2 q_n/q_{n+1} < exp(-q_n^2),
        // the last step being the defining inequality of q_{n+1}.
        c.payload["frac_hi"] = "2 q_n / q_{n+1}";
        c.payload["by_construction"] = true;
        const double log_bound = std::log(2.0) + log(qn) - log(seq.next_lower());
        c.payload["log_upper_from_lower_bound"] = log_bound;
        c.payload["exp_neg_qn2"] = "exp(-" + qn2.str().substr(0, qn2.str().find('/')) + ")";
        c.payload["minus_qn2"] = -qn2.to_double();
        c.verdict = Verdict::Holds;
        c.notes.push_back("q_{n+1} > 2 q_n exp(q_n^2) holds by definition of q_{n+1}");
        c.notes.push_back("the power-of-two lower bound for q_{n+1} alone gives a slightly weaker log bound");
    }
    return c.seal();
}

Certificate countex_divergence_lower_bound(const QSequence& seq, const WeightFn& w)
{
    const auto* b = std::get_if<BuiltinNode>(&w.node().data);
    if (!b || b->name != "circle-quarter" || w.scale() != BigRational(1))
        throw std::invalid_argument("countex_divergence_lower_bound expects builtin:circle-quarter");
    Certificate c = countex_cert("countex-divergence", seq);
    c.weight = weight_ref(w);
    Json terms = Json::array();
    BigRational verified_sum(0);
    bool all = true;
    const BigRational quarter(1, 4);
    for (std::size_t n = 1; n <= seq.concrete(); ++n) {
        const Certificate f = check_q_fractional_bound(seq, static_cast<int>(n));
        const BigInt& qn = seq.q[n - 1];
        const BigRational qn2(BigInt(qn * qn));
        Json row = {{"n", n}, {"q_n", qn.get_str()}, {"frac_certificate", f.id}};
        bool ok = f.holds();
        if (f.payload.contains("frac_hi") && f.payload["frac_hi"].get<std::string>().find('/') != std::string::npos &&
            !f.payload.contains("by_construction")) {
            // |log w(y)| = |log y| / 4 and y <= frac_hi.
            const BigRational hi = BigRational::parse(f.payload["frac_hi"].get<std::string>());
            const FloatInterval neg_log = log(enclose(BigRational(1) / hi));
            const double term_lo = round_down(neg_log.lo / 4.0 / qn2.to_double());
            row["term_lower"] = term_lo;
            ok = ok && term_lo >= 0.25;
        } else {
            // {q_n alpha} < exp(-q_n^2) gives |log w| / q_n^2 > 1/4.
            row["term_lower"] = "1/4";
            row["symbolic"] = true;
        }
        row["verified"] = ok;
        if (ok) verified_sum += quarter;
        all = all && ok;
        terms.push_back(row);
    }
    c.payload["terms"] = terms;
    c.payload["verified_sum_lower"] = verified_sum.str();
    c.verdict = all ? Verdict::Holds : Verdict::Fails;
    c.notes.push_back("each term of sum |log w(q_n alpha)| / q_n^2 is at least 1/4, so the series diverges");
    return c.seal();
}

}  // namespace lpw
