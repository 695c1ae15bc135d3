#pragma once

// Discrete abelian groups the weight constructions live on, plus the
// circle and R^d used by the continuous examples. Points are immutable
// values kept in canonical form, so equality is structural.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpw/rational.hpp"

namespace lpw {

/// Raised when points from different groups are combined.
class GroupMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Strictly increasing divisibility chain t_1 | t_2 | ... with Q = union of Z/t_n.
/// An explicit prefix t_1..t_K is continued by t_n = t_{n-1} * n, so the
/// default (empty prefix) is t_n = n!.
class Chain {
public:
    Chain();
    static Chain factorial() { return Chain(); }
    static Chain explicit_prefix(std::vector<BigInt> prefix);

    const BigInt& term(int n) const;
    const std::vector<BigInt>& prefix() const { return prefix_; }
    bool is_factorial() const { return prefix_.empty(); }
    std::string name() const;

    friend bool operator==(const Chain& a, const Chain& b) { return a.prefix_ == b.prefix_; }

private:
    explicit Chain(std::vector<BigInt> prefix);
    std::vector<BigInt> prefix_;
    std::vector<BigInt> cache_;
};

enum class GroupKind { Pruefer, Rationals, DirectSum, Circle, Real, Product };

const char* to_string(GroupKind kind);

struct GroupDescriptor {
    GroupKind kind = GroupKind::Real;
    std::uint64_t p = 0;                  // Pruefer
    Chain chain;                          // Rationals
    std::vector<GroupDescriptor> factors; // DirectSum summands; Product: {H}
    int dim = 0;                          // Real, Product

    static GroupDescriptor pruefer(std::uint64_t p);
    static GroupDescriptor rationals(Chain chain = Chain::factorial());
    static GroupDescriptor direct_sum(std::vector<GroupDescriptor> summands);
    static GroupDescriptor circle();
    static GroupDescriptor real(int d);
    static GroupDescriptor product(int d, GroupDescriptor h);

    bool has_chain() const { return kind == GroupKind::Pruefer || kind == GroupKind::Rationals; }
    bool is_discrete() const;
    /// |G_n| for Pruefer (p^n); t_n for the rationals, i.e. points of Q_n per unit interval.
    BigInt layer_size(int n) const;
    std::string name() const;

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);
};

bool is_prime(std::uint64_t p);

class GroupPoint;
using PointPtr = std::shared_ptr<const GroupPoint>;

/// k/p^n modulo 1 with gcd(k, p) = 1 unless k = 0 (then n = 0).
struct PrueferPoint {
    std::uint64_t p = 2;
    BigInt k;
    unsigned n = 0;
    BigRational value() const;
};

struct RationalPoint {
    BigRational value;
};

/// Finitely supported point of a direct sum; coordinates sorted by 1-based
/// summand index and never equal to the identity.
struct SumPoint {
    std::vector<std::pair<std::size_t, PointPtr>> coords;
};

/// t in [0, 1) with addition modulo 1.
struct CirclePoint {
    BigRational t;
};

struct RealPoint {
    std::vector<double> x;
};

struct ProductPoint {
    RealPoint r;
    PointPtr h;
};

class GroupPoint {
public:
    using Variant = std::variant<PrueferPoint, RationalPoint, SumPoint, CirclePoint, RealPoint, ProductPoint>;

    GroupPoint() : v_(RealPoint{}) {}
    GroupPoint(PrueferPoint p) : v_(std::move(p)) {}   // NOLINT(google-explicit-constructor)
    GroupPoint(RationalPoint p) : v_(std::move(p)) {}  // NOLINT
    GroupPoint(SumPoint p) : v_(std::move(p)) {}       // NOLINT
    GroupPoint(CirclePoint p) : v_(std::move(p)) {}    // NOLINT
    GroupPoint(RealPoint p) : v_(std::move(p)) {}      // NOLINT
    GroupPoint(ProductPoint p) : v_(std::move(p)) {}   // NOLINT

    const Variant& get() const { return v_; }
    template <class T>
    const T* as() const { return std::get_if<T>(&v_); }
    template <class T>
    const T& expect(const char* what) const
    {
        if (const T* p = as<T>()) return *p;
        throw GroupMismatch(std::string(what) + ": unexpected point variant");
    }

    friend bool operator==(const GroupPoint& a, const GroupPoint& b);

private:
    Variant v_;
};

// Canonicalizing constructors.
GroupPoint pruefer_point(std::uint64_t p, const BigRational& value);
GroupPoint rational_point(const BigRational& value);
GroupPoint circle_point(const BigRational& t);
GroupPoint real_point(std::vector<double> x);
GroupPoint sum_point(std::vector<std::pair<std::size_t, GroupPoint>> coords);
GroupPoint product_point(std::vector<double> r, GroupPoint h);

GroupPoint identity(const GroupDescriptor& g);
bool is_identity(const GroupPoint& x);
bool belongs(const GroupDescriptor& g, const GroupPoint& x);

GroupPoint add(const GroupPoint& x, const GroupPoint& y);
GroupPoint neg(const GroupPoint& x);
GroupPoint sub(const GroupPoint& x, const GroupPoint& y);
/// n-fold sum; nmul(0, x) is the identity of x's group.
GroupPoint nmul(long n, const GroupPoint& x);

/// Unique n with x in G_n \ G_{n-1} (G_0 empty, so the identity is in layer 1).
int layer_of(const GroupDescriptor& g, const GroupPoint& x);

/// floor(|x|): even extension of the integer part.
BigInt even_floor(const BigRational& x);

/// Support s(x) of a direct-sum point.
std::vector<std::size_t> support(const SumPoint& x);
/// Coordinate j of a direct-sum point (identity of summand j when absent).
GroupPoint coordinate(const GroupDescriptor& g, const SumPoint& x, std::size_t j);

}  // namespace lpw
