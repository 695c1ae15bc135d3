#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpw/coeffs.hpp"
#include "lpw/group.hpp"
#include "lpw/group_json.hpp"
#include "lpw/interval.hpp"
#include "lpw/phi.hpp"

namespace lpw {

struct WeightNode;

/// w(x) = factor * base^exponent with exact base; lets inequalities between
/// irrational weight values be decided in exact arithmetic.
struct PowerForm {
    BigRational factor;
    BigRational base;
    BigRational exponent;
};

/// Immutable weight on a group. The value is scale * (node value); the node
/// records which construction produced it and with which parameters.
class WeightFn {
public:
    WeightFn(std::shared_ptr<const WeightNode> node, BigRational scale);

    const WeightNode& node() const { return *node_; }
    const std::shared_ptr<const WeightNode>& node_ptr() const { return node_; }
    const GroupDescriptor& group() const;
    const BigRational& scale() const { return scale_; }
    std::string construction() const;

    /// Values are exact rationals.
    bool exact() const;
    bool is_algebra() const;
    bool is_discrete() const { return group().is_discrete(); }

    BigRational value(const GroupPoint& x) const;
    /// Exact value when one exists (e.g. u^{-1/q} with a perfect root).
    std::optional<BigRational> try_value(const GroupPoint& x) const;
    double eval(const GroupPoint& x) const;
    /// log w(x) without forming w(x), for fast-growing formula weights.
    double log_eval(const GroupPoint& x) const;
    /// log w(x) when it is an exact rational.
    std::optional<BigRational> exact_log(const GroupPoint& x) const;
    std::optional<PowerForm> power_form(const GroupPoint& x) const;

    /// B0 with (v*v) <= B0 v for the unscaled node value v, when a lemma provides one.
    std::optional<BigRational> raw_b_bound() const;
    /// Bound for this weight: u*u <= scale * B0 * u.
    std::optional<BigRational> b_bound() const;
    bool b_certified() const;

    /// Certified upper bound for sup u, if the construction is bounded.
    std::optional<BigRational> sup_upper() const;
    /// Certified lower bound for inf w over the whole group, and whether inf w = 0.
    struct InfBound {
        double lower = 0.0;
        bool is_zero = false;
        bool known = false;
    };
    InfBound global_inf() const;

    WeightFn scaled(const BigRational& factor) const;
    WeightFn with_certificate(std::string id) const;
    const std::vector<std::string>& certificates() const { return certs_; }

    Json provenance() const;
    static WeightFn from_provenance(const Json& j);

private:
    std::shared_ptr<const WeightNode> node_;
    BigRational scale_;
    std::vector<std::string> certs_;
};

struct NestedNode {
    PhiSequence phi;
};

struct RationalsNode {
    PhiSequence phi;
    RationalInterval c2;
    BigRational C() const { return BigRational(8) * c2.hi; }
};

struct SumNode {
    std::vector<WeightFn> summands;
    std::vector<BigRational> alphas;
    SubsetCoeffs coeffs;
};

struct EuclideanNode {
    int d = 1;
    bool normalized = true;
};

struct ProductNode {
    WeightFn r;
    WeightFn h;
};

struct AlgebraNode {
    WeightFn u;
    BigRational p;
    BigRational q() const { return p / (p - BigRational(1)); }
};

struct BuiltinNode {
    std::string name;
};

struct WeightNode {
    GroupDescriptor group;
    std::variant<NestedNode, RationalsNode, SumNode, EuclideanNode, ProductNode, AlgebraNode, BuiltinNode> data;
};

// ---- constructions --------------------------------------------------------

WeightFn nested_finite_weight(const PhiSequence& phi);
WeightFn pruefer_weight(std::uint64_t p);
WeightFn rationals_weight(const PhiSequence& phi, std::optional<RationalInterval> c2 = std::nullopt);
WeightFn rationals_weight();
WeightFn direct_sum_weight(std::vector<WeightFn> summands, std::vector<BigRational> alphas, SubsetCoeffs coeffs);
/// Summands as given, default alphas and coefficients.
WeightFn direct_sum_weight(std::vector<WeightFn> summands);
WeightFn euclidean_weight(int d, bool normalize = true);
WeightFn product_weight(const WeightFn& uR, const WeightFn& uH);
WeightFn algebra_weight(const WeightFn& u, const BigRational& p);
WeightFn builtin_weight(const std::string& name);
std::vector<std::string> builtin_names();

/// u / bound, given a certified u*u <= bound * u.
WeightFn scale_for_b(const WeightFn& u, const BigRational& bound);
/// scale_for_b with the lemma bound of u; u itself when (b) already holds.
WeightFn auto_scale(const WeightFn& u);

/// Exact u^{-(p-1)/p} when the root is rational.
std::optional<BigRational> algebra_value(const BigRational& u, const BigRational& p);

/// Values u_j(0) of the summands, used by default_alphas.
std::vector<BigRational> zero_values(const std::vector<WeightFn>& summands);

}  // namespace lpw
