#pragma once
// Independent reference computations. They share only the big-number type
// with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

#include "lpw/rational.hpp"

namespace oracle {

using lpw::BigInt;
using lpw::BigRational;

inline BigInt ipow(std::uint64_t p, unsigned n)
{
    BigInt r = 1;
    for (unsigned i = 0; i < n; ++i) r *= p;
    return r;
}

/// Smallest n with k/p^N in the subgroup of order p^n.
inline unsigned pruefer_order_exponent(std::uint64_t p, BigInt k, unsigned N)
{
    k %= ipow(p, N);
    if (k < 0) k += ipow(p, N);
    if (k == 0) return 0;
    unsigned n = N;
    while (n > 0 && k % p == 0) {
        k /= p;
        --n;
    }
    return n;
}

/// u(k/p^N) for a layer function phi, layer(0) = 1.
inline BigRational pruefer_u(std::uint64_t p, const BigInt& k, unsigned N, const std::function<BigRational(int)>& phi)
{
    const unsigned n = pruefer_order_exponent(p, k, N);
    return phi(n == 0 ? 1 : static_cast<int>(n));
}

/// sum over y in G_N of u(y) u(x - y), x = k/p^N.
inline BigRational pruefer_conv_brute(std::uint64_t p, unsigned N, const BigInt& k,
                                      const std::function<BigRational(int)>& phi)
{
    const BigInt size = ipow(p, N);
    BigRational s(0);
    for (BigInt j = 0; j < size; ++j) s += pruefer_u(p, j, N, phi) * pruefer_u(p, BigInt(k - j), N, phi);
    return s;
}

/// (u*u)(0) for phi_n = (2p)^-n: 1/(4p) + (1 - 1/p) r^2 / (1 - r), r = 1/(4p).
inline BigRational pruefer_conv_zero(std::uint64_t p)
{
    const BigRational r(BigInt(1), BigInt(4 * p));
    return r + (BigRational(1) - BigRational(BigInt(1), BigInt(p))) * r * r / (BigRational(1) - r);
}

inline double sigma_f0() { return 1.0 + std::pow(std::numbers::pi, 4) / 45.0; }
/// m^2 sum_n sigma(n) sigma(m - n) = 2 + 4 zeta(2) - 6/m^2 for |m| >= 2.
inline double sigma_f(long m)
{
    return 2.0 + 4.0 * std::numbers::pi * std::numbers::pi / 6.0 - 6.0 / (double(m) * double(m));
}

inline double cauchy_conv(double t) { return 2.0 * std::numbers::pi / (4.0 + t * t); }
inline double cauchy_ratio(double t) { return cauchy_conv(t) * (1.0 + t * t); }
inline double beta_half_half() { return std::numbers::pi; }

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
