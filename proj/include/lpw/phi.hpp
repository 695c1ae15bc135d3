#pragma once

#include <optional>
#include <vector>

#include "lpw/group.hpp"
#include "lpw/group_json.hpp"

namespace lpw {

/// Closed-form tail of a phi sequence beyond its explicit prefix.
///   Geometric:  phi_n = c r^n
///   Normalized: phi_n = c r^n / |G_n|   (|G_n| = p^n or t_n)
struct PhiTail {
    enum class Kind { Geometric, Normalized };
    Kind kind = Kind::Normalized;
    BigRational c{1};
    BigRational r{BigRational(1, 2)};
};

/// Layer values phi_1, phi_2, ... attached to a group with a subgroup chain.
/// The mass sum phi_n |G_n| is exact whenever the tail is summable in closed form.
class PhiSequence {
public:
    PhiSequence(GroupDescriptor group, std::vector<BigRational> prefix, PhiTail tail, bool allow_nonmonotone = false);

    /// (2p)^{-n} on Z(p^inf), 1/(n! 2^n) on Q with the factorial chain.
    static PhiSequence default_for(const GroupDescriptor& group);
    /// phi_n = c r^n with no prefix.
    static PhiSequence geometric(const GroupDescriptor& group, BigRational c, BigRational r);

    const GroupDescriptor& group() const { return group_; }
    const std::vector<BigRational>& prefix() const { return prefix_; }
    const PhiTail& tail() const { return tail_; }
    bool monotone() const { return monotone_; }

    BigRational term(int n) const;
    /// Exact sum_n phi_n |G_n| (for Q: sum_n phi_n t_n).
    const BigRational& mass() const { return mass_; }
    /// max_n phi_n.
    BigRational max_term() const;
    /// min_{n <= L} phi_n.
    BigRational min_term_upto(int L) const;

    /// Upper bound for sum_{j > J} |U_j| phi_j^2 on Z(p^inf) (exact for these tails).
    BigRational pruefer_square_tail(int J) const;
    /// Upper bound for sum_{j > J} phi_j^2 t_j on Q.
    BigRational rationals_square_tail(int J) const;

    Json to_json() const;
    static PhiSequence from_json(const GroupDescriptor& group, const Json& j);

private:
    int tail_start() const { return static_cast<int>(prefix_.size()) + 1; }
    BigRational tail_ratio() const;  // rho with tail phi_n = c rho^n / (1 or t_n)

    GroupDescriptor group_;
    std::vector<BigRational> prefix_;
    PhiTail tail_;
    bool monotone_ = true;
    BigRational mass_;
};

/// "geometric:c:r" or "normalized:c:r".
PhiTail parse_phi_tail(std::string_view text);
std::vector<BigRational> parse_rational_list(std::string_view text);

}  // namespace lpw
