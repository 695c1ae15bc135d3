#include "lpw/weight.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpw/sigma.hpp"

namespace lpw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct BuiltinInfo {
    const char* name;
    bool circle;
    double inf;  // inf over the group, before scaling
    bool bounded;
};

constexpr BuiltinInfo kBuiltins[] = {
    {"one", false, 1.0, true},
    {"poly2", false, 1.0, false},
    {"exp", false, 1.0, false},
    {"poly2-exp", false, 1.0, false},
    {"poly2-exp-log", false, 1.0, false},
    {"poly2-char", false, 0.0, false},
    {"circle-quarter", true, 0.0, true},
    {"circle-inv-sqrt", true, 1.0, false},
};

const BuiltinInfo& builtin_info(const std::string& name)
{
    for (const auto& b : kBuiltins)
        if (name == b.name) return b;
    throw std::invalid_argument("unknown builtin weight: " + name);
}

double real_coord(const GroupPoint& x)
{
    const auto& r = x.expect<RealPoint>("builtin weight");
    if (r.x.size() != 1) throw GroupMismatch("builtin weights live on R^1");
    return r.x[0];
}

// log of the unscaled builtin value.
double builtin_log(const std::string& name, const GroupPoint& x)
{
    if (name == "circle-quarter" || name == "circle-inv-sqrt") {
        const double t = x.expect<CirclePoint>("circle weight").t.to_double();
        if (t == 0.0) return name == "circle-quarter" ? -HUGE_VAL : HUGE_VAL;
        return (name == "circle-quarter" ? 0.25 : -0.5) * std::log(t);
    }
    const double t = real_coord(x);
    const double a = std::fabs(t);
    if (name == "one") return 0.0;
    if (name == "poly2") return std::log1p(t * t);
    if (name == "exp") return a;
    if (name == "poly2-exp") return std::log1p(t * t) + a;
    if (name == "poly2-exp-log") return std::log1p(t * t) + a / std::log(std::numbers::e + a);
    if (name == "poly2-char") return t + std::log1p(t * t);
    throw std::invalid_argument("unknown builtin weight: " + name);
}

BigRational pi_hi() { return constants::pi().hi; }
BigRational pi_lo() { return constants::pi().lo; }

// Exact a-th root of a nonnegative rational, if it exists.
std::optional<BigRational> exact_root(const BigRational& v, unsigned long a)
{
    if (v.sign() < 0) return std::nullopt;
    BigInt n;
    BigInt d;
    if (mpz_root(n.get_mpz_t(), v.num().get_mpz_t(), a) == 0) return std::nullopt;
    if (mpz_root(d.get_mpz_t(), v.den().get_mpz_t(), a) == 0) return std::nullopt;
    return BigRational(n, d);
}

}  // namespace

std::optional<BigRational> algebra_value(const BigRational& u, const BigRational& p)
{
    if (u.sign() <= 0) return std::nullopt;
    // w = u^{-(p-1)/p}; with p = a/b this is (u^{-(a-b)})^{1/a}.
    const BigInt a = p.num();
    const BigInt b = p.den();
    if (a > 64 || (a - b) > 64) return std::nullopt;
    const BigRational inner = pow(u, -BigInt(a - b).get_si());
    return exact_root(inner, a.get_ui());
}

// ---- WeightFn --------------------------------------------------------------

WeightFn::WeightFn(std::shared_ptr<const WeightNode> node, BigRational scale) : node_(std::move(node)), scale_(std::move(scale))
{
    if (!node_) throw std::invalid_argument("WeightFn: null node");
    if (scale_.sign() <= 0) throw std::invalid_argument("WeightFn: scale must be positive");
}

const GroupDescriptor& WeightFn::group() const
{
    return node_->group;
}

std::string WeightFn::construction() const
{
    return std::visit(overloaded{
                          [](const NestedNode&) { return std::string("nested-finite"); },
                          [](const RationalsNode&) { return std::string("rationals"); },
                          [](const SumNode&) { return std::string("direct-sum"); },
                          [](const EuclideanNode&) { return std::string("euclidean"); },
                          [](const ProductNode&) { return std::string("product"); },
                          [](const AlgebraNode&) { return std::string("algebra"); },
                          [](const BuiltinNode&) { return std::string("builtin"); },
                      },
                      node_->data);
}

bool WeightFn::exact() const
{
    return std::visit(overloaded{
                          [](const NestedNode&) { return true; },
                          [](const RationalsNode&) { return true; },
                          [](const SumNode& s) {
                              for (const auto& u : s.summands)
                                  if (!u.exact()) return false;
                              return true;
                          },
                          [](const EuclideanNode&) { return false; },
                          [](const ProductNode&) { return false; },
                          [](const AlgebraNode&) { return false; },
                          [](const BuiltinNode& b) { return b.name == "one" || b.name == "poly2"; },
                      },
                      node_->data);
}

bool WeightFn::is_algebra() const
{
    return std::holds_alternative<AlgebraNode>(node_->data);
}

BigRational WeightFn::value(const GroupPoint& x) const
{
    const GroupDescriptor& g = node_->group;
    const BigRational raw = std::visit(
        overloaded{
            [&](const NestedNode& n) -> BigRational { return n.phi.term(layer_of(g, x)); },
            [&](const RationalsNode& n) -> BigRational {
                const auto& q = x.expect<RationalPoint>("rationals weight");
                return n.phi.term(layer_of(g, x)) * sigma(even_floor(q.value));
            },
            [&](const SumNode& n) -> BigRational {
                const auto& s = x.expect<SumPoint>("direct-sum weight");
                BigRational v = n.coeffs.a(support(s));
                for (const auto& [j, xj] : s.coords) {
                    if (j > n.summands.size()) throw GroupMismatch("sum coordinate index out of range");
                    v *= n.alphas[j - 1] * n.summands[j - 1].value(*xj);
                }
                return v;
            },
            [&](const BuiltinNode& b) -> BigRational {
                if (b.name == "one") return BigRational(1);
                if (b.name == "poly2") {
                    const BigRational t = BigRational::from_double(real_coord(x));
                    return BigRational(1) + t * t;
                }
                throw std::domain_error("builtin weight " + b.name + " has no exact values");
            },
            [&](const auto&) -> BigRational { throw std::domain_error(construction() + " weight has no exact values"); },
        },
        node_->data);
    return scale_ * raw;
}

std::optional<BigRational> WeightFn::try_value(const GroupPoint& x) const
{
    if (exact()) return value(x);
    if (const auto* a = std::get_if<AlgebraNode>(&node_->data)) {
        if (!a->u.exact()) return std::nullopt;
        auto v = algebra_value(a->u.value(x), a->p);
        if (v) return scale_ * *v;
    }
    return std::nullopt;
}

double WeightFn::log_eval(const GroupPoint& x) const
{
    const double ls = scale_.log();
    return std::visit(overloaded{
                          [&](const BuiltinNode& b) { return ls + builtin_log(b.name, x); },
                          [&](const AlgebraNode& a) {
                              const BigRational inv_q = BigRational(1) / a.q();
                              return ls - inv_q.to_double() * a.u.log_eval(x);
                          },
                          [&](const auto&) {
                              if (exact()) {
                                  const BigRational v = value(x);
                                  return v.log();
                              }
                              return std::log(eval(x));
                          },
                      },
                      node_->data);
}

double WeightFn::eval(const GroupPoint& x) const
{
    return std::visit(overloaded{
                          [&](const EuclideanNode& e) {
                              const auto& r = x.expect<RealPoint>("euclidean weight");
                              if (r.x.size() != static_cast<std::size_t>(e.d)) throw GroupMismatch("dimension mismatch");
                              double v = scale_.to_double();
                              if (e.normalized) v *= std::pow(2.0 * std::numbers::pi, -e.d);
                              for (double xi : r.x) v /= 1.0 + xi * xi;
                              return v;
                          },
                          [&](const ProductNode& p) {
                              const auto& pp = x.expect<ProductPoint>("product weight");
                              return scale_.to_double() * p.r.eval(GroupPoint(pp.r)) * p.h.eval(*pp.h);
                          },
                          [&](const AlgebraNode&) { return std::exp(log_eval(x)); },
                          [&](const BuiltinNode& b) {
                              if (b.name == "one" || b.name == "poly2") return value(x).to_double();
                              return std::exp(log_eval(x));
                          },
                          [&](const auto&) { return value(x).to_double(); },
                      },
                      node_->data);
}

std::optional<BigRational> WeightFn::exact_log(const GroupPoint& x) const
{
    if (const auto* b = std::get_if<BuiltinNode>(&node_->data)) {
        if (scale_ == BigRational(1) && b->name == "exp") return BigRational::from_double(std::fabs(real_coord(x)));
        if (scale_ == BigRational(1) && b->name == "one") return BigRational(0);
    }
    if (auto v = try_value(x); v && *v == BigRational(1)) return BigRational(0);
    return std::nullopt;
}

std::optional<PowerForm> WeightFn::power_form(const GroupPoint& x) const
{
    if (exact()) return PowerForm{BigRational(1), value(x), BigRational(1)};
    if (const auto* a = std::get_if<AlgebraNode>(&node_->data)) {
        if (!a->u.exact()) return std::nullopt;
        return PowerForm{scale_, a->u.value(x), -(BigRational(1) / a->q())};
    }
    if (const auto* b = std::get_if<BuiltinNode>(&node_->data)) {
        const auto& t = x.expect<CirclePoint>("circle weight").t;
        if (b->name == "circle-quarter") return PowerForm{scale_, t, BigRational(1, 4)};
        if (b->name == "circle-inv-sqrt" && t.sign() > 0) return PowerForm{scale_, t, BigRational(-1, 2)};
    }
    return std::nullopt;
}

std::optional<BigRational> WeightFn::raw_b_bound() const
{
    return std::visit(overloaded{
                          [](const NestedNode& n) -> std::optional<BigRational> {
                              if (!n.phi.monotone()) return std::nullopt;
                              return BigRational(2) * n.phi.mass();
                          },
                          [](const RationalsNode& n) -> std::optional<BigRational> {
                              if (!n.phi.monotone()) return std::nullopt;
                              return BigRational(2) * n.C() * n.phi.mass();
                          },
                          [](const SumNode&) -> std::optional<BigRational> { return BigRational(1); },
                          [](const EuclideanNode& e) -> std::optional<BigRational> {
                              if (e.normalized) return BigRational(1);
                              return pow(BigRational(2) * pi_hi(), e.d);
                          },
                          [](const ProductNode& p) -> std::optional<BigRational> {
                              auto r = p.r.b_bound();
                              auto h = p.h.b_bound();
                              if (!r || !h) return std::nullopt;
                              return *r * *h;
                          },
                          [](const auto&) -> std::optional<BigRational> { return std::nullopt; },
                      },
                      node_->data);
}

std::optional<BigRational> WeightFn::b_bound() const
{
    auto b = raw_b_bound();
    if (!b) return std::nullopt;
    return scale_ * *b;
}

bool WeightFn::b_certified() const
{
    auto b = b_bound();
    return b && *b <= BigRational(1);
}

std::optional<BigRational> WeightFn::sup_upper() const
{
    auto raw = std::visit(
        overloaded{
            [](const NestedNode& n) -> std::optional<BigRational> { return n.phi.max_term(); },
            [](const RationalsNode& n) -> std::optional<BigRational> { return n.phi.max_term(); },
            [](const SumNode& s) -> std::optional<BigRational> {
                BigRational v = s.coeffs.eps1;
                for (std::size_t j = 0; j < s.summands.size(); ++j) {
                    auto sj = s.summands[j].sup_upper();
                    if (!sj) return std::nullopt;
                    v *= std::max(BigRational(1), s.alphas[j] * *sj);
                }
                return v;
            },
            [](const EuclideanNode& e) -> std::optional<BigRational> {
                if (!e.normalized) return BigRational(1);
                return pow(BigRational(2) * pi_lo(), -e.d);
            },
            [](const ProductNode& p) -> std::optional<BigRational> {
                auto r = p.r.sup_upper();
                auto h = p.h.sup_upper();
                if (!r || !h) return std::nullopt;
                return *r * *h;
            },
            [](const AlgebraNode&) -> std::optional<BigRational> { return std::nullopt; },
            [](const BuiltinNode& b) -> std::optional<BigRational> {
                if (b.name == "one" || b.name == "circle-quarter") return BigRational(1);
                return std::nullopt;
            },
        },
        node_->data);
    if (!raw) return std::nullopt;
    return scale_ * *raw;
}

WeightFn::InfBound WeightFn::global_inf() const
{
    InfBound out;
    if (const auto* a = std::get_if<AlgebraNode>(&node_->data)) {
        auto sup = a->u.sup_upper();
        if (!sup) return out;
        // w >= scale * (sup u)^{-1/q}, rounded down a few ulps.
        const double inv_q = (BigRational(1) / a->q()).to_double();
        double v = scale_.to_double() * std::exp(-inv_q * sup->log());
        for (int i = 0; i < 4; ++i) v = round_down(v);
        out.lower = std::max(0.0, v);
        out.known = true;
        return out;
    }
    if (const auto* b = std::get_if<BuiltinNode>(&node_->data)) {
        const auto& info = builtin_info(b->name);
        out.known = true;
        out.is_zero = info.inf == 0.0;
        double v = scale_.to_double() * info.inf;
        out.lower = v == 0.0 ? 0.0 : round_down(v);
        return out;
    }
    // The lemma weights decay along the chain (or at infinity), so inf u = 0.
    out.known = true;
    out.is_zero = true;
    return out;
}

WeightFn WeightFn::scaled(const BigRational& factor) const
{
    return WeightFn(node_, scale_ * factor);
}

WeightFn WeightFn::with_certificate(std::string id) const
{
    WeightFn w = *this;
    w.certs_.push_back(std::move(id));
    return w;
}

Json WeightFn::provenance() const
{
    Json params;
    params["group"] = to_json(node_->group);
    std::visit(overloaded{
                   [&](const NestedNode& n) {
                       params["phi"] = n.phi.to_json();
                       params["mass"] = n.phi.mass().str();
                   },
                   [&](const RationalsNode& n) {
                       params["phi"] = n.phi.to_json();
                       params["mass"] = n.phi.mass().str();
                       params["C2"] = {n.c2.lo.str(), n.c2.hi.str()};
                       params["C"] = n.C().str();
                   },
                   [&](const SumNode& s) {
                       Json sums = Json::array();
                       for (const auto& u : s.summands) sums.push_back(u.provenance());
                       params["summands"] = sums;
                       params["eps1"] = s.coeffs.eps1.str();
                       Json al = Json::array();
                       for (const auto& a : s.alphas) al.push_back(a.str());
                       params["alphas"] = al;
                   },
                   [&](const EuclideanNode& e) {
                       params["d"] = e.d;
                       params["normalized"] = e.normalized;
                       params["normalization"] = e.normalized ? "(2pi)^-" + std::to_string(e.d) : "1";
                   },
                   [&](const ProductNode& p) {
                       params["uR"] = p.r.provenance();
                       params["uH"] = p.h.provenance();
                   },
                   [&](const AlgebraNode& a) {
                       params["p"] = a.p.str();
                       params["q"] = a.q().str();
                       params["u"] = a.u.provenance();
                   },
                   [&](const BuiltinNode& b) { params["name"] = b.name; },
               },
               node_->data);
    if (auto b = raw_b_bound()) params["lemma_bound"] = b->str();

    Json j;
    j["schema"] = "lpw.weight/1";
    j["construction"] = construction();
    j["params"] = params;
    j["scale"] = scale_.str();
    j["exact"] = exact();
    j["certificates"] = certs_;
    return j;
}

WeightFn WeightFn::from_provenance(const Json& j)
{
    if (j.contains("schema") && j.at("schema").get<std::string>() != "lpw.weight/1")
        throw std::invalid_argument("unsupported weight schema: " + j.at("schema").get<std::string>());
    const std::string c = j.at("construction").get<std::string>();
    const Json& p = j.at("params");
    const GroupDescriptor g = group_from_json(p.at("group"));
    std::optional<WeightFn> w;
    if (c == "nested-finite") {
        w = nested_finite_weight(PhiSequence::from_json(g, p.at("phi")));
    } else if (c == "rationals") {
        const auto& c2 = p.at("C2");
        w = rationals_weight(PhiSequence::from_json(g, p.at("phi")),
                             RationalInterval(rational_from_json(c2.at(0)), rational_from_json(c2.at(1))));
    } else if (c == "direct-sum") {
        std::vector<WeightFn> summands;
        for (const auto& s : p.at("summands")) summands.push_back(from_provenance(s));
        std::vector<BigRational> alphas;
        for (const auto& a : p.at("alphas")) alphas.push_back(rational_from_json(a));
        w = direct_sum_weight(std::move(summands), std::move(alphas), SubsetCoeffs{rational_from_json(p.at("eps1"))});
    } else if (c == "euclidean") {
        w = euclidean_weight(p.at("d").get<int>(), p.at("normalized").get<bool>());
    } else if (c == "product") {
        w = product_weight(from_provenance(p.at("uR")), from_provenance(p.at("uH")));
    } else if (c == "algebra") {
        w = algebra_weight(from_provenance(p.at("u")), rational_from_json(p.at("p")));
    } else if (c == "builtin") {
        w = builtin_weight(p.at("name").get<std::string>());
    } else {
        throw std::invalid_argument("unknown construction: " + c);
    }
    WeightFn out(w->node_ptr(), rational_from_json(j.at("scale")));
    if (j.contains("certificates"))
        for (const auto& id : j.at("certificates")) out = out.with_certificate(id.get<std::string>());
    return out;
}

// ---- constructions ----------------------------------------------------------

WeightFn nested_finite_weight(const PhiSequence& phi)
{
    if (phi.group().kind != GroupKind::Pruefer)
        throw std::invalid_argument("nested_finite_weight needs a union of finite subgroups (Pruefer group)");
    return WeightFn(std::make_shared<WeightNode>(WeightNode{phi.group(), NestedNode{phi}}), BigRational(1));
}

WeightFn pruefer_weight(std::uint64_t p)
{
    return nested_finite_weight(PhiSequence::default_for(GroupDescriptor::pruefer(p)));
}

WeightFn rationals_weight(const PhiSequence& phi, std::optional<RationalInterval> c2)
{
    if (phi.group().kind != GroupKind::Rationals) throw std::invalid_argument("rationals_weight needs the group Q");
    const RationalInterval c = c2 ? *c2 : default_sigma_constant().c2_exact();
    return WeightFn(std::make_shared<WeightNode>(WeightNode{phi.group(), RationalsNode{phi, c}}), BigRational(1));
}

WeightFn rationals_weight()
{
    return rationals_weight(PhiSequence::default_for(GroupDescriptor::rationals()));
}

std::vector<BigRational> zero_values(const std::vector<WeightFn>& summands)
{
    std::vector<BigRational> z;
    for (const auto& u : summands) z.push_back(u.value(identity(u.group())));
    return z;
}

WeightFn direct_sum_weight(std::vector<WeightFn> summands, std::vector<BigRational> alphas, SubsetCoeffs coeffs)
{
    if (summands.empty()) throw std::invalid_argument("direct sum needs at least one summand");
    if (alphas.size() != summands.size()) throw std::invalid_argument("need one alpha per summand");
    std::vector<GroupDescriptor> groups;
    for (std::size_t j = 0; j < summands.size(); ++j) {
        const auto& u = summands[j];
        if (!u.is_discrete() || !u.exact())
            throw std::invalid_argument("summand " + std::to_string(j + 1) + " must be an exact weight on a discrete group");
        if (!u.b_certified())
            throw std::invalid_argument("summand " + std::to_string(j + 1) + " lacks a (b)-certificate; scale it first");
        groups.push_back(u.group());
    }
    const AlphaCheck ac = check_alphas(alphas, zero_values(summands));
    if (!ac.all()) throw std::invalid_argument("alpha constraints fail");
    const CoeffCheck cc = check_coeffs(coeffs, static_cast<int>(std::min<std::size_t>(summands.size(), 16)));
    if (!cc.all()) throw std::invalid_argument("subset coefficient constraints fail at " + subset_str(cc.witness_s));
    auto node = std::make_shared<WeightNode>(
        WeightNode{GroupDescriptor::direct_sum(std::move(groups)), SumNode{std::move(summands), std::move(alphas), coeffs}});
    return WeightFn(std::move(node), BigRational(1));
}

WeightFn direct_sum_weight(std::vector<WeightFn> summands)
{
    auto alphas = default_alphas(zero_values(summands));
    return direct_sum_weight(std::move(summands), std::move(alphas), SubsetCoeffs::defaults());
}

WeightFn euclidean_weight(int d, bool normalize)
{
    if (d < 1) throw std::invalid_argument("euclidean_weight needs d >= 1");
    return WeightFn(std::make_shared<WeightNode>(WeightNode{GroupDescriptor::real(d), EuclideanNode{d, normalize}}),
                    BigRational(1));
}

WeightFn product_weight(const WeightFn& uR, const WeightFn& uH)
{
    const auto* e = std::get_if<EuclideanNode>(&uR.node().data);
    if (!e) throw GroupMismatch("product_weight: first factor must be a euclidean weight");
    if (!uH.is_discrete()) throw GroupMismatch("product_weight: second factor must live on a discrete group");
    return WeightFn(std::make_shared<WeightNode>(WeightNode{GroupDescriptor::product(e->d, uH.group()), ProductNode{uR, uH}}),
                    BigRational(1));
}

WeightFn algebra_weight(const WeightFn& u, const BigRational& p)
{
    if (!(p > BigRational(1))) throw std::invalid_argument("algebra_weight needs p > 1");
    if (!u.b_certified()) throw std::invalid_argument("algebra_weight needs u with a (b)-certificate");
    return WeightFn(std::make_shared<WeightNode>(WeightNode{u.group(), AlgebraNode{u, p}}), BigRational(1));
}

WeightFn builtin_weight(const std::string& name)
{
    const auto& info = builtin_info(name);
    const GroupDescriptor g = info.circle ? GroupDescriptor::circle() : GroupDescriptor::real(1);
    return WeightFn(std::make_shared<WeightNode>(WeightNode{g, BuiltinNode{name}}), BigRational(1));
}

std::vector<std::string> builtin_names()
{
    std::vector<std::string> out;
    for (const auto& b : kBuiltins) out.emplace_back(b.name);
    return out;
}

WeightFn scale_for_b(const WeightFn& u, const BigRational& bound)
{
    if (bound.sign() <= 0) throw std::invalid_argument("scale_for_b: bound must be positive");
    const auto b = u.b_bound();
    if (!b) throw std::invalid_argument("scale_for_b: no certified bound u*u <= B u for a " + u.construction() + " weight");
    if (bound < BigRational(1) && *b <= BigRational(1)) return u;
    if (bound < *b) throw std::invalid_argument("scale_for_b: bound " + bound.str() + " is below the certified " + b->str());
    return u.scaled(BigRational(1) / bound);
}

WeightFn auto_scale(const WeightFn& u)
{
    const auto b = u.b_bound();
    if (!b) throw std::invalid_argument("auto_scale: no certified bound for a " + u.construction() + " weight");
    if (*b <= BigRational(1)) return u;
    return scale_for_b(u, *b);
}

}  // namespace lpw
