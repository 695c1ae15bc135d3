#include "lpw/domar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpw/certify.hpp"

namespace lpw {

namespace {

struct Growth {
    DomarClass cls = DomarClass::Inconclusive;
    // Convergent: log+ w(nx) <= a + d log n.
    double a = 0.0;
    double d = 0.0;
    // Divergent: log+ w(nx) >= c n / rho(n).
    double c = 0.0;
    std::string rho;
    std::string reason;
};

double up(double v, int k = 4)
{
    for (int i = 0; i < k; ++i) v = round_up(v);
    return v;
}

double down(double v, int k = 4)
{
    for (int i = 0; i < k; ++i) v = round_down(v);
    return v;
}

double rho_at(const std::string& rho, double n, double ax)
{
    if (rho == "log(e+n|x|)") return std::log(std::numbers::e + n * ax);
    return 1.0;
}

Growth builtin_growth(const WeightFn& w, const std::string& name, const GroupPoint& x)
{
    Growth g;
    if (name == "circle-quarter") {
        g.cls = DomarClass::Convergent;
        g.reason = "w <= 1 on the circle";
        return g;
    }
    if (name == "circle-inv-sqrt") {
        g.reason = "no growth certificate for t^(-1/2) orbits";
        return g;
    }
    const double t = x.expect<RealPoint>("domar").x.at(0);
    const double ax = std::fabs(t);
    const double ls = w.scale().log();
    if (name == "one" || ax == 0.0) {
        g.cls = DomarClass::Convergent;
        g.a = std::max(0.0, up(ls));
        g.reason = "constant orbit";
        return g;
    }
    if (name == "poly2") {
        // log(1 + n^2 t^2) <= log(1 + t^2) + 2 log n.
        g.cls = DomarClass::Convergent;
        g.a = std::max(0.0, up(ls + std::log1p(t * t)));
        g.d = 2.0;
        g.reason = "log(1+n^2 t^2) <= log(1+t^2) + 2 log n";
        return g;
    }
    if (name == "poly2-char" && t < 0.0) {
        // (1+s^2) e^{-s} is decreasing on s >= 0, so w(nx) <= 1.
        g.cls = DomarClass::Convergent;
        g.a = std::max(0.0, up(ls));
        g.reason = "(1+s^2)e^(-s) <= 1 for s >= 0";
        return g;
    }
    if (ls < 0.0) {
        g.reason = "scaled growth family: lower bound not derived";
        return g;
    }
    g.cls = DomarClass::Divergent;
    g.c = down(ax);
    if (name == "poly2-exp-log") {
        g.rho = "log(e+n|x|)";
        g.reason = "log+ w(nx) >= n|x| / log(e+n|x|)";
    } else {
        g.rho = "1";
        g.reason = "log+ w(nx) >= n|x|";
    }
    return g;
}

Growth growth(const WeightFn& w, const GroupPoint& x)
{
    if (const auto* b = std::get_if<BuiltinNode>(&w.node().data)) return builtin_growth(w, b->name, x);
    if (auto s = w.sup_upper(); s && *s <= BigRational(1)) {
        Growth g;
        g.cls = DomarClass::Convergent;
        g.reason = "sup w <= 1";
        return g;
    }
    if (const auto* a = std::get_if<AlgebraNode>(&w.node().data)) {
        // w = s u^{-1/q} and 1/u(nx) <= C n^d.
        if (auto db = poly_decay_bound(a->u, x)) {
            const double inv_q = (BigRational(1) / a->q()).to_double();
            Growth g;
            g.cls = DomarClass::Convergent;
            g.a = std::max(0.0, up(w.scale().log() + inv_q * db->C.log()));
            g.d = up(inv_q * db->d);
            g.reason = "log w(nx) <= log s + (log C + d log n)/q from the decay bound of u";
            return g;
        }
    }
    Growth g;
    g.reason = "no growth certificate for this construction";
    return g;
}

}  // namespace

const char* to_string(DomarClass c)
{
    switch (c) {
    case DomarClass::Convergent: return "Convergent";
    case DomarClass::Divergent: return "Divergent";
    default: return "Inconclusive";
    }
}

std::vector<DomarTerm> domar_partial(const WeightFn& w, const GroupPoint& x, long N)
{
    if (N < 1) throw std::invalid_argument("domar_partial needs N >= 1");
    std::vector<DomarTerm> out;
    out.reserve(static_cast<std::size_t>(N));
    double partial = 0.0;
    std::optional<BigRational> exact = BigRational(0);
    for (long n = 1; n <= N; ++n) {
        const GroupPoint y = nmul(n, x);
        DomarTerm t;
        t.n = n;
        const BigRational n2(BigInt(BigInt(n) * BigInt(n)));
        if (auto l = w.exact_log(y)) {
            t.exact_log_plus = l->sign() > 0 ? *l : BigRational(0);
            t.log_plus = t.exact_log_plus->to_double();
            if (exact) *exact += *t.exact_log_plus / n2;
        } else {
            t.log_plus = std::max(0.0, w.log_eval(y));
            exact.reset();
        }
        partial += t.log_plus / (static_cast<double>(n) * static_cast<double>(n));
        t.exact_partial = exact;
        t.partial = exact ? exact->to_double() : partial;
        out.push_back(std::move(t));
    }
    return out;
}

Certificate domar_classify(const WeightFn& w, const GroupPoint& x, long n_check)
{
    Certificate c;
    c.property = "domar";
    c.weight = weight_ref(w);
    c.window = {{"orbit_of", to_json(x)}, {"N", n_check}};
    const Growth g = growth(w, x);
    const auto terms = domar_partial(w, x, n_check);
    const DomarTerm& last = terms.back();
    c.payload["class"] = to_string(g.cls);
    c.payload["reason"] = g.reason;
    c.payload["partial_N"] = last.partial;
    if (last.exact_partial && last.exact_partial->str().size() <= 64) c.payload["partial_N_exact"] = last.exact_partial->str();
    switch (g.cls) {
    case DomarClass::Convergent: {
        const double cap = up(g.a * constants::zeta2().hi.to_double() +
                              g.d * constants::sum_log_over_sq().hi.to_double());
        c.payload["a"] = g.a;
        c.payload["d"] = g.d;
        c.payload["cap"] = cap;
        c.verdict = Verdict::Holds;
        for (const auto& t : terms) {
            const double bound = g.a + g.d * std::log(static_cast<double>(t.n));
            if (t.log_plus > up(bound) + 1e-12 * std::max(1.0, bound) || t.partial > cap) {
                c.verdict = Verdict::Inconclusive;
                c.witness = {{"n", t.n}, {"log_plus", t.log_plus}, {"partial", t.partial}};
                c.notes.push_back("growth bound violated numerically");
                break;
            }
        }
        break;
    }
    case DomarClass::Divergent: {
        c.payload["c"] = g.c;
        c.payload["rho"] = g.rho;
        c.verdict = Verdict::Fails;
        const double ax = g.c;
        for (const auto& t : terms) {
            const double n = static_cast<double>(t.n);
            const double lower = g.c * n / rho_at(g.rho, n, ax);
            if (t.log_plus < lower * (1.0 - 1e-12)) {
                c.verdict = Verdict::Inconclusive;
                c.witness = {{"n", t.n}, {"log_plus", t.log_plus}, {"lower", lower}};
                c.notes.push_back("growth lower bound violated numerically");
                break;
            }
        }
        c.notes.push_back(g.rho == "1" ? "comparison with the harmonic series"
                                       : "comparison with sum 1/(n log n)");
        break;
    }
    default:
        c.verdict = Verdict::Inconclusive;
        c.rigorous = false;
        break;
    }
    return c.seal();
}

DomarClass domar_class(const Certificate& c)
{
    const std::string s = c.payload.at("class").get<std::string>();
    if (s == "Convergent") return DomarClass::Convergent;
    if (s == "Divergent") return DomarClass::Divergent;
    return DomarClass::Inconclusive;
}

}  // namespace lpw
