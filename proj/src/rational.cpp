#include "lpw/rational.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lpw {

BigRational::BigRational(const BigInt& num, const BigInt& den) : v_(num, den)
{
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    v_.canonicalize();
}

BigRational::BigRational(mpq_class value) : v_(std::move(value))
{
    v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const BigInt n = parse_bigint(s.substr(0, slash));
        const BigInt d = parse_bigint(s.substr(slash + 1));
        return BigRational(n, d);
    }
    if (s.find_first_of(".eE") == std::string::npos) return BigRational(parse_bigint(s));

    // Decimal literal: mantissa digits with optional exponent, converted exactly.
    std::string mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        try {
            exponent = std::stol(s.substr(e + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in rational literal: " + s);
        }
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        mantissa.erase(mantissa.begin());
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad rational literal: " + s);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
    BigRational value(BigInt(digits, 10));
    const long shift = exponent - frac_digits;
    const BigInt ten_pow = pow(BigInt(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
    value = shift < 0 ? value / BigRational(ten_pow) : value * BigRational(ten_pow);
    return negative ? -value : value;
}

BigRational BigRational::from_double(double value)
{
    if (!std::isfinite(value)) throw std::domain_error("BigRational::from_double: non-finite value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return BigRational(std::move(q));
}

std::string BigRational::str() const
{
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

double BigRational::log() const
{
    if (sgn(v_) <= 0) throw std::domain_error("BigRational::log of non-positive value");
    return lpw::log(BigInt(v_.get_num())) - lpw::log(BigInt(v_.get_den()));
}

BigRational BigRational::abs() const
{
    return BigRational(mpq_class(::abs(v_)));
}

BigInt BigRational::floor() const
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

BigInt BigRational::ceil() const
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

BigRational BigRational::frac() const
{
    return *this - BigRational(floor());
}

BigRational& BigRational::operator/=(const BigRational& o)
{
    if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
    v_ /= o.v_;
    return *this;
}

BigRational pow(const BigRational& base, long exponent)
{
    if (exponent < 0) {
        if (base.is_zero()) throw std::domain_error("pow: zero to a negative power");
        return BigRational(1) / pow(base, -exponent);
    }
    BigInt n;
    BigInt d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return BigRational(n, d);
}

BigInt pow(const BigInt& base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt factorial(unsigned long n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::string to_string(const BigInt& value)
{
    return value.get_str();
}

BigInt parse_bigint(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s[0] == '+') s.erase(s.begin());
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + std::string(text));
    return r;
}

double log(const BigInt& value)
{
    if (sgn(value) <= 0) throw std::domain_error("log of non-positive integer");
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

}  // namespace lpw
