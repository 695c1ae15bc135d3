#include "lpw/phi.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpw {

namespace {

BigRational size_of(const GroupDescriptor& g, int n)
{
    return BigRational(g.layer_size(n));
}

}  // namespace

PhiSequence::PhiSequence(GroupDescriptor group, std::vector<BigRational> prefix, PhiTail tail, bool allow_nonmonotone)
    : group_(std::move(group)), prefix_(std::move(prefix)), tail_(std::move(tail))
{
    if (!group_.has_chain()) throw std::invalid_argument("phi sequence needs a group with a subgroup chain");
    if (tail_.c.sign() <= 0 || tail_.r.sign() <= 0) throw std::invalid_argument("phi tail needs c > 0 and r > 0");
    for (const auto& v : prefix_)
        if (v.sign() <= 0) throw std::invalid_argument("phi values must be positive");

    const BigRational rho = tail_ratio();
    const BigRational one(1);
    if (group_.kind == GroupKind::Pruefer) {
        const BigRational x = rho * BigRational(static_cast<long>(group_.p));
        if (!(x < one)) throw std::invalid_argument("phi mass diverges: tail ratio times p must be < 1");
    } else {
        if (tail_.kind == PhiTail::Kind::Geometric)
            throw std::invalid_argument("phi mass on Q is not certifiable for a geometric tail; use a normalized tail");
        if (!(tail_.r < one)) throw std::invalid_argument("phi mass diverges: normalized tail needs r < 1");
    }

    for (int n = 1; n <= tail_start(); ++n)
        if (term(n + 1) > term(n)) monotone_ = false;
    if (tail_.kind == PhiTail::Kind::Geometric && rho > one) monotone_ = false;
    if (!monotone_ && !allow_nonmonotone) throw std::invalid_argument("phi sequence must be nonincreasing");

    const int K = static_cast<int>(prefix_.size());
    mass_ = BigRational(0);
    for (int n = 1; n <= K; ++n) mass_ += prefix_[n - 1] * size_of(group_, n);
    if (group_.kind == GroupKind::Pruefer) {
        const BigRational x = rho * BigRational(static_cast<long>(group_.p));
        mass_ += tail_.c * pow(x, K + 1) / (one - x);
    } else {
        mass_ += tail_.c * pow(tail_.r, K + 1) / (one - tail_.r);
    }
}

PhiSequence PhiSequence::default_for(const GroupDescriptor& group)
{
    return PhiSequence(group, {}, PhiTail{PhiTail::Kind::Normalized, BigRational(1), BigRational(1, 2)});
}

PhiSequence PhiSequence::geometric(const GroupDescriptor& group, BigRational c, BigRational r)
{
    return PhiSequence(group, {}, PhiTail{PhiTail::Kind::Geometric, std::move(c), std::move(r)});
}

BigRational PhiSequence::tail_ratio() const
{
    if (tail_.kind == PhiTail::Kind::Normalized && group_.kind == GroupKind::Pruefer)
        return tail_.r / BigRational(static_cast<long>(group_.p));
    return tail_.r;
}

BigRational PhiSequence::term(int n) const
{
    if (n < 1) throw std::out_of_range("phi index must be >= 1");
    if (n <= static_cast<int>(prefix_.size())) return prefix_[n - 1];
    const BigRational v = tail_.c * pow(tail_.r, n);
    return tail_.kind == PhiTail::Kind::Normalized ? v / size_of(group_, n) : v;
}

BigRational PhiSequence::max_term() const
{
    BigRational m = term(tail_start());
    for (const auto& v : prefix_) m = std::max(m, v);
    if (tail_.kind == PhiTail::Kind::Geometric && tail_.r > BigRational(1))
        throw std::domain_error("phi sequence is unbounded");
    return m;
}

BigRational PhiSequence::min_term_upto(int L) const
{
    BigRational m = term(1);
    for (int n = 2; n <= L; ++n) m = std::min(m, term(n));
    return m;
}

BigRational PhiSequence::pruefer_square_tail(int J) const
{
    if (group_.kind != GroupKind::Pruefer) throw std::invalid_argument("pruefer_square_tail on a non-Pruefer chain");
    const BigRational p(static_cast<long>(group_.p));
    const int K = static_cast<int>(prefix_.size());
    auto layer_count = [&](int j) { return j == 1 ? p : pow(p, j) - pow(p, j - 1); };

    BigRational sum(0);
    int j = std::max(J, 0) + 1;
    for (; j <= K; ++j) sum += layer_count(j) * prefix_[j - 1] * prefix_[j - 1];
    const BigRational rho = tail_ratio();
    const BigRational c2 = tail_.c * tail_.c;
    if (j == 1) {
        sum += p * c2 * rho * rho;
        j = 2;
    }
    const BigRational x = p * rho * rho;
    sum += (BigRational(1) - BigRational(1) / p) * c2 * pow(x, j) / (BigRational(1) - x);
    return sum;
}

BigRational PhiSequence::rationals_square_tail(int J) const
{
    if (group_.kind != GroupKind::Rationals) throw std::invalid_argument("rationals_square_tail on a non-rational chain");
    const int K = static_cast<int>(prefix_.size());
    BigRational sum(0);
    int j = std::max(J, 0) + 1;
    for (; j <= K; ++j) sum += prefix_[j - 1] * prefix_[j - 1] * size_of(group_, j);
    // c^2 r^{2j} / t_j with t_j >= t_m for j >= m.
    const BigRational r2 = tail_.r * tail_.r;
    sum += tail_.c * tail_.c * pow(r2, j) / ((BigRational(1) - r2) * size_of(group_, j));
    return sum;
}

Json PhiSequence::to_json() const
{
    Json j;
    Json pre = Json::array();
    for (const auto& v : prefix_) pre.push_back(v.str());
    j["prefix"] = pre;
    j["tail"] = {{"kind", tail_.kind == PhiTail::Kind::Geometric ? "geometric" : "normalized"},
                 {"c", tail_.c.str()},
                 {"r", tail_.r.str()}};
    j["monotone"] = monotone_;
    j["mass"] = mass_.str();
    return j;
}

PhiSequence PhiSequence::from_json(const GroupDescriptor& group, const Json& j)
{
    std::vector<BigRational> prefix;
    for (const auto& v : j.at("prefix")) prefix.push_back(rational_from_json(v));
    const Json& t = j.at("tail");
    PhiTail tail;
    const std::string kind = t.at("kind").get<std::string>();
    if (kind == "geometric") {
        tail.kind = PhiTail::Kind::Geometric;
    } else if (kind == "normalized") {
        tail.kind = PhiTail::Kind::Normalized;
    } else {
        throw std::invalid_argument("unknown phi tail kind: " + kind);
    }
    tail.c = rational_from_json(t.at("c"));
    tail.r = rational_from_json(t.at("r"));
    const bool allow = j.contains("monotone") && !j.at("monotone").get<bool>();
    return PhiSequence(group, std::move(prefix), std::move(tail), allow);
}

PhiTail parse_phi_tail(std::string_view text)
{
    const std::string s(text);
    const auto a = s.find(':');
    const auto b = a == std::string::npos ? a : s.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("phi tail must look like kind:c:r, got " + s);
    PhiTail t;
    const std::string kind = s.substr(0, a);
    if (kind == "geometric") {
        t.kind = PhiTail::Kind::Geometric;
    } else if (kind == "normalized") {
        t.kind = PhiTail::Kind::Normalized;
    } else {
        throw std::invalid_argument("unknown phi tail kind: " + kind);
    }
    t.c = BigRational::parse(s.substr(a + 1, b - a - 1));
    t.r = BigRational::parse(s.substr(b + 1));
    return t;
}

std::vector<BigRational> parse_rational_list(std::string_view text)
{
    std::vector<BigRational> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(BigRational::parse(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(BigRational::parse(cur));
    return out;
}

}  // namespace lpw
