#include "lpw/group.hpp"

#include <algorithm>
#include <map>

namespace lpw {

namespace {

constexpr int kChainCache = 24;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BigInt pow_ui(std::uint64_t p, unsigned n)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, n);
    return r;
}

GroupPoint canonical_pruefer(std::uint64_t p, BigInt k, unsigned n)
{
    const BigInt modulus = pow_ui(p, n);
    mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), modulus.get_mpz_t());
    if (k == 0) return PrueferPoint{p, BigInt(0), 0};
    while (n > 0 && mpz_divisible_ui_p(k.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(k.get_mpz_t(), k.get_mpz_t(), p);
        --n;
    }
    return PrueferPoint{p, std::move(k), n};
}

}  // namespace

// ---- Chain ---------------------------------------------------------------

Chain::Chain() : Chain(std::vector<BigInt>{}) {}

Chain::Chain(std::vector<BigInt> prefix) : prefix_(std::move(prefix))
{
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (prefix_[i] <= 0) throw std::invalid_argument("chain terms must be positive");
        if (i > 0) {
            if (prefix_[i] <= prefix_[i - 1]) throw std::invalid_argument("chain must be strictly increasing");
            if (mpz_divisible_p(prefix_[i].get_mpz_t(), prefix_[i - 1].get_mpz_t()) == 0)
                throw std::invalid_argument("chain must be a divisibility chain");
        }
    }
    cache_.reserve(kChainCache);
    for (int n = 1; n <= kChainCache; ++n) {
        if (static_cast<std::size_t>(n) <= prefix_.size()) {
            cache_.push_back(prefix_[n - 1]);
        } else {
            const BigInt prev = n == 1 ? BigInt(1) : cache_.back();
            cache_.push_back(prev * n);
        }
    }
}

Chain Chain::explicit_prefix(std::vector<BigInt> prefix)
{
    return Chain(std::move(prefix));
}

const BigInt& Chain::term(int n) const
{
    if (n < 1) throw std::out_of_range("chain index must be >= 1");
    if (n > kChainCache) throw std::out_of_range("chain index beyond supported depth");
    return cache_[n - 1];
}

std::string Chain::name() const
{
    if (prefix_.empty()) return "factorial";
    std::string s = "explicit:";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) s += ",";
        s += prefix_[i].get_str();
    }
    return s;
}

// ---- GroupDescriptor -----------------------------------------------------

const char* to_string(GroupKind kind)
{
    switch (kind) {
    case GroupKind::Pruefer: return "pruefer";
    case GroupKind::Rationals: return "rationals";
    case GroupKind::DirectSum: return "sum";
    case GroupKind::Circle: return "circle";
    case GroupKind::Real: return "real";
    case GroupKind::Product: return "product";
    }
    return "?";
}

bool is_prime(std::uint64_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

GroupDescriptor GroupDescriptor::pruefer(std::uint64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("Pruefer group needs a prime p, got " + std::to_string(p));
    GroupDescriptor g;
    g.kind = GroupKind::Pruefer;
    g.p = p;
    return g;
}

GroupDescriptor GroupDescriptor::rationals(Chain chain)
{
    GroupDescriptor g;
    g.kind = GroupKind::Rationals;
    g.chain = std::move(chain);
    return g;
}

GroupDescriptor GroupDescriptor::direct_sum(std::vector<GroupDescriptor> summands)
{
    if (summands.empty()) throw std::invalid_argument("direct sum needs at least one summand");
    for (const auto& s : summands)
        if (!s.is_discrete()) throw std::invalid_argument("direct sum summands must be discrete groups");
    GroupDescriptor g;
    g.kind = GroupKind::DirectSum;
    g.factors = std::move(summands);
    return g;
}

GroupDescriptor GroupDescriptor::circle()
{
    GroupDescriptor g;
    g.kind = GroupKind::Circle;
    return g;
}

GroupDescriptor GroupDescriptor::real(int d)
{
    if (d < 0) throw std::invalid_argument("dimension must be nonnegative");
    GroupDescriptor g;
    g.kind = GroupKind::Real;
    g.dim = d;
    return g;
}

GroupDescriptor GroupDescriptor::product(int d, GroupDescriptor h)
{
    if (d < 0) throw std::invalid_argument("dimension must be nonnegative");
    if (!h.is_discrete()) throw std::invalid_argument("product factor H must be discrete");
    GroupDescriptor g;
    g.kind = GroupKind::Product;
    g.dim = d;
    g.factors.push_back(std::move(h));
    return g;
}

bool GroupDescriptor::is_discrete() const
{
    return kind == GroupKind::Pruefer || kind == GroupKind::Rationals || kind == GroupKind::DirectSum;
}

BigInt GroupDescriptor::layer_size(int n) const
{
    if (n < 1) throw std::out_of_range("layer index must be >= 1");
    switch (kind) {
    case GroupKind::Pruefer: return pow_ui(p, static_cast<unsigned>(n));
    case GroupKind::Rationals: return chain.term(n);
    default: throw std::invalid_argument(std::string("no subgroup chain on group ") + to_string(kind));
    }
}

std::string GroupDescriptor::name() const
{
    switch (kind) {
    case GroupKind::Pruefer: return "pruefer:" + std::to_string(p);
    case GroupKind::Rationals: return "rationals:" + chain.name();
    case GroupKind::DirectSum: {
        std::string s = "sum(";
        for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].name();
        return s + ")";
    }
    case GroupKind::Circle: return "circle";
    case GroupKind::Real: return "real:" + std::to_string(dim);
    case GroupKind::Product: return "product(real:" + std::to_string(dim) + "," + factors.at(0).name() + ")";
    }
    return "?";
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b)
{
    return a.kind == b.kind && a.p == b.p && a.chain == b.chain && a.dim == b.dim && a.factors == b.factors;
}

// ---- Points --------------------------------------------------------------

BigRational PrueferPoint::value() const
{
    return BigRational(k, pow_ui(p, n));
}

bool operator==(const GroupPoint& a, const GroupPoint& b)
{
    if (a.v_.index() != b.v_.index()) return false;
    return std::visit(
        overloaded{
            [&](const PrueferPoint& x) {
                const auto& y = std::get<PrueferPoint>(b.v_);
                return x.p == y.p && x.n == y.n && x.k == y.k;
            },
            [&](const RationalPoint& x) { return x.value == std::get<RationalPoint>(b.v_).value; },
            [&](const SumPoint& x) {
                const auto& y = std::get<SumPoint>(b.v_);
                if (x.coords.size() != y.coords.size()) return false;
                for (std::size_t i = 0; i < x.coords.size(); ++i)
                    if (x.coords[i].first != y.coords[i].first || !(*x.coords[i].second == *y.coords[i].second))
                        return false;
                return true;
            },
            [&](const CirclePoint& x) { return x.t == std::get<CirclePoint>(b.v_).t; },
            [&](const RealPoint& x) { return x.x == std::get<RealPoint>(b.v_).x; },
            [&](const ProductPoint& x) {
                const auto& y = std::get<ProductPoint>(b.v_);
                return x.r.x == y.r.x && *x.h == *y.h;
            },
        },
        a.v_);
}

GroupPoint pruefer_point(std::uint64_t p, const BigRational& value)
{
    if (!is_prime(p)) throw std::invalid_argument("Pruefer point needs a prime p");
    BigInt den = value.den();
    unsigned n = 0;
    while (den != 1) {
        if (mpz_divisible_ui_p(den.get_mpz_t(), p) == 0)
            throw GroupMismatch(value.str() + " is not an element of Z(" + std::to_string(p) + "^inf)");
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        ++n;
    }
    return canonical_pruefer(p, value.num(), n);
}

GroupPoint rational_point(const BigRational& value)
{
    return RationalPoint{value};
}

GroupPoint circle_point(const BigRational& t)
{
    return CirclePoint{t.frac()};
}

GroupPoint real_point(std::vector<double> x)
{
    for (double& v : x)
        if (v == 0.0) v = 0.0;  // fold -0.0 so equality stays structural
    return RealPoint{std::move(x)};
}

GroupPoint sum_point(std::vector<std::pair<std::size_t, GroupPoint>> coords)
{
    std::map<std::size_t, GroupPoint> acc;
    for (auto& [j, v] : coords) {
        if (j == 0) throw std::invalid_argument("direct-sum indices are 1-based");
        if (auto it = acc.find(j); it != acc.end()) {
            it->second = add(it->second, v);
        } else {
            acc.emplace(j, std::move(v));
        }
    }
    SumPoint s;
    for (auto& [j, v] : acc)
        if (!is_identity(v)) s.coords.emplace_back(j, std::make_shared<const GroupPoint>(std::move(v)));
    return s;
}

GroupPoint product_point(std::vector<double> r, GroupPoint h)
{
    auto rp = real_point(std::move(r));
    return ProductPoint{std::get<RealPoint>(rp.get()), std::make_shared<const GroupPoint>(std::move(h))};
}

GroupPoint identity(const GroupDescriptor& g)
{
    switch (g.kind) {
    case GroupKind::Pruefer: return PrueferPoint{g.p, BigInt(0), 0};
    case GroupKind::Rationals: return RationalPoint{BigRational(0)};
    case GroupKind::DirectSum: return SumPoint{};
    case GroupKind::Circle: return CirclePoint{BigRational(0)};
    case GroupKind::Real: return RealPoint{std::vector<double>(static_cast<std::size_t>(g.dim), 0.0)};
    case GroupKind::Product: return product_point(std::vector<double>(static_cast<std::size_t>(g.dim), 0.0), identity(g.factors.at(0)));
    }
    throw std::logic_error("identity: unknown group");
}

bool is_identity(const GroupPoint& x)
{
    return std::visit(overloaded{
                          [](const PrueferPoint& p) { return p.k == 0; },
                          [](const RationalPoint& p) { return p.value.is_zero(); },
                          [](const SumPoint& p) { return p.coords.empty(); },
                          [](const CirclePoint& p) { return p.t.is_zero(); },
                          [](const RealPoint& p) {
                              return std::all_of(p.x.begin(), p.x.end(), [](double v) { return v == 0.0; });
                          },
                          [](const ProductPoint& p) {
                              return std::all_of(p.r.x.begin(), p.r.x.end(), [](double v) { return v == 0.0; }) &&
                                     is_identity(*p.h);
                          },
                      },
                      x.get());
}

bool belongs(const GroupDescriptor& g, const GroupPoint& x)
{
    switch (g.kind) {
    case GroupKind::Pruefer: {
        const auto* p = x.as<PrueferPoint>();
        return p && p->p == g.p;
    }
    case GroupKind::Rationals: return x.as<RationalPoint>() != nullptr;
    case GroupKind::Circle: {
        const auto* c = x.as<CirclePoint>();
        return c && c->t.sign() >= 0 && c->t < BigRational(1);
    }
    case GroupKind::Real: {
        const auto* r = x.as<RealPoint>();
        return r && r->x.size() == static_cast<std::size_t>(g.dim);
    }
    case GroupKind::DirectSum: {
        const auto* s = x.as<SumPoint>();
        if (!s) return false;
        for (const auto& [j, v] : s->coords)
            if (j < 1 || j > g.factors.size() || !belongs(g.factors[j - 1], *v) || is_identity(*v)) return false;
        return true;
    }
    case GroupKind::Product: {
        const auto* pp = x.as<ProductPoint>();
        return pp && pp->r.x.size() == static_cast<std::size_t>(g.dim) && belongs(g.factors.at(0), *pp->h);
    }
    }
    return false;
}

GroupPoint add(const GroupPoint& x, const GroupPoint& y)
{
    if (x.get().index() != y.get().index()) throw GroupMismatch("add: points from different groups");
    return std::visit(
        overloaded{
            [&](const PrueferPoint& a) -> GroupPoint {
                const auto& b = std::get<PrueferPoint>(y.get());
                if (a.p != b.p) throw GroupMismatch("add: Pruefer points with different primes");
                const unsigned n = std::max(a.n, b.n);
                BigInt k = a.k * pow_ui(a.p, n - a.n) + b.k * pow_ui(b.p, n - b.n);
                return canonical_pruefer(a.p, std::move(k), n);
            },
            [&](const RationalPoint& a) -> GroupPoint {
                return RationalPoint{a.value + std::get<RationalPoint>(y.get()).value};
            },
            [&](const SumPoint& a) -> GroupPoint {
                const auto& b = std::get<SumPoint>(y.get());
                SumPoint out;
                std::size_t i = 0;
                std::size_t k = 0;
                while (i < a.coords.size() || k < b.coords.size()) {
                    if (k == b.coords.size() || (i < a.coords.size() && a.coords[i].first < b.coords[k].first)) {
                        out.coords.push_back(a.coords[i++]);
                    } else if (i == a.coords.size() || b.coords[k].first < a.coords[i].first) {
                        out.coords.push_back(b.coords[k++]);
                    } else {
                        GroupPoint s = add(*a.coords[i].second, *b.coords[k].second);
                        if (!is_identity(s))
                            out.coords.emplace_back(a.coords[i].first, std::make_shared<const GroupPoint>(std::move(s)));
                        ++i;
                        ++k;
                    }
                }
                return out;
            },
            [&](const CirclePoint& a) -> GroupPoint {
                return circle_point(a.t + std::get<CirclePoint>(y.get()).t);
            },
            [&](const RealPoint& a) -> GroupPoint {
                const auto& b = std::get<RealPoint>(y.get());
                if (a.x.size() != b.x.size()) throw GroupMismatch("add: real points of different dimension");
                std::vector<double> r(a.x.size());
                for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.x[i] + b.x[i];
                return real_point(std::move(r));
            },
            [&](const ProductPoint& a) -> GroupPoint {
                const auto& b = std::get<ProductPoint>(y.get());
                const GroupPoint r = add(GroupPoint(a.r), GroupPoint(b.r));
                return product_point(std::get<RealPoint>(r.get()).x, add(*a.h, *b.h));
            },
        },
        x.get());
}

GroupPoint neg(const GroupPoint& x)
{
    return std::visit(
        overloaded{
            [](const PrueferPoint& a) -> GroupPoint { return canonical_pruefer(a.p, -a.k, a.n); },
            [](const RationalPoint& a) -> GroupPoint { return RationalPoint{-a.value}; },
            [](const SumPoint& a) -> GroupPoint {
                SumPoint out;
                for (const auto& [j, v] : a.coords) out.coords.emplace_back(j, std::make_shared<const GroupPoint>(neg(*v)));
                return out;
            },
            [](const CirclePoint& a) -> GroupPoint { return circle_point(-a.t); },
            [](const RealPoint& a) -> GroupPoint {
                std::vector<double> r(a.x.size());
                for (std::size_t i = 0; i < r.size(); ++i) r[i] = -a.x[i];
                return real_point(std::move(r));
            },
            [](const ProductPoint& a) -> GroupPoint {
                const GroupPoint r = neg(GroupPoint(a.r));
                return product_point(std::get<RealPoint>(r.get()).x, neg(*a.h));
            },
        },
        x.get());
}

GroupPoint sub(const GroupPoint& x, const GroupPoint& y)
{
    return add(x, neg(y));
}

GroupPoint nmul(long n, const GroupPoint& x)
{
    const BigRational factor(n);
    return std::visit(
        overloaded{
            [&](const PrueferPoint& a) -> GroupPoint { return canonical_pruefer(a.p, a.k * n, a.n); },
            [&](const RationalPoint& a) -> GroupPoint { return RationalPoint{a.value * factor}; },
            [&](const SumPoint& a) -> GroupPoint {
                SumPoint out;
                for (const auto& [j, v] : a.coords) {
                    GroupPoint m = nmul(n, *v);
                    if (!is_identity(m)) out.coords.emplace_back(j, std::make_shared<const GroupPoint>(std::move(m)));
                }
                return out;
            },
            [&](const CirclePoint& a) -> GroupPoint { return circle_point(a.t * factor); },
            [&](const RealPoint& a) -> GroupPoint {
                std::vector<double> r(a.x.size());
                for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<double>(n) * a.x[i];
                return real_point(std::move(r));
            },
            [&](const ProductPoint& a) -> GroupPoint {
                const GroupPoint r = nmul(n, GroupPoint(a.r));
                return product_point(std::get<RealPoint>(r.get()).x, nmul(n, *a.h));
            },
        },
        x.get());
}

int layer_of(const GroupDescriptor& g, const GroupPoint& x)
{
    switch (g.kind) {
    case GroupKind::Pruefer: {
        const auto& p = x.expect<PrueferPoint>("layer_of");
        if (p.p != g.p) throw GroupMismatch("layer_of: prime mismatch");
        return std::max(1, static_cast<int>(p.n));
    }
    case GroupKind::Rationals: {
        const BigInt den = x.expect<RationalPoint>("layer_of").value.den();
        // Every d divides t_n once n >= K + d, so the scan terminates.
        for (int n = 1;; ++n) {
            if (mpz_divisible_p(g.chain.term(n).get_mpz_t(), den.get_mpz_t()) != 0) return n;
        }
    }
    default: throw std::invalid_argument(std::string("layer_of: no subgroup chain on group ") + to_string(g.kind));
    }
}

BigInt even_floor(const BigRational& x)
{
    return x.abs().floor();
}

std::vector<std::size_t> support(const SumPoint& x)
{
    std::vector<std::size_t> s;
    s.reserve(x.coords.size());
    for (const auto& c : x.coords) s.push_back(c.first);
    return s;
}

GroupPoint coordinate(const GroupDescriptor& g, const SumPoint& x, std::size_t j)
{
    for (const auto& [i, v] : x.coords)
        if (i == j) return *v;
    return identity(g.factors.at(j - 1));
}

}  // namespace lpw
