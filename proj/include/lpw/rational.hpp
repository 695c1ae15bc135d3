#pragma once

// Exact arbitrary-precision scalars. Every exact weight value, bound and
// certificate payload in the library is a BigRational.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lpw {

using BigInt = mpz_class;

/// Rational number in lowest terms with a positive denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
    BigRational(int value) : v_(static_cast<long>(value)) {}  // NOLINT
    explicit BigRational(const BigInt& value) : v_(value) {}
    BigRational(const BigInt& num, const BigInt& den);
    explicit BigRational(mpq_class value);

    /// Accepts "a/b", "a" and plain decimals such as "-0.25" or "1e-3".
    static BigRational parse(std::string_view text);
    /// Exact binary value of a finite double.
    static BigRational from_double(double value);

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    /// Always "num/den", including "0/1" and "5/1".
    std::string str() const;
    double to_double() const { return v_.get_d(); }
    /// Natural logarithm of a positive value; safe for huge numerators and denominators.
    double log() const;

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    BigRational abs() const;
    BigInt floor() const;
    BigInt ceil() const;
    /// x - floor(x), in [0, 1).
    BigRational frac() const;

    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

    friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

BigRational pow(const BigRational& base, long exponent);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt factorial(unsigned long n);
std::string to_string(const BigInt& value);
BigInt parse_bigint(std::string_view text);

/// Natural log of a positive big integer without overflow.
double log(const BigInt& value);

}  // namespace lpw
