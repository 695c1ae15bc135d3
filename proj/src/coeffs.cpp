#include "lpw/coeffs.hpp"

#include <bit>
#include <stdexcept>

#include "lpw/interval.hpp"

namespace lpw {

BigRational SubsetCoeffs::a(Subset s) const
{
    if (s == 0) return eps1;
    BigInt total = 0;
    for (unsigned j = 1; j <= 64; ++j)
        if (s & (Subset(1) << (j - 1))) total += factorial(j);
    return eps1 / BigRational(total);
}

BigRational SubsetCoeffs::a(const std::vector<std::size_t>& indices) const
{
    Subset s = 0;
    for (std::size_t j : indices) {
        if (j < 1 || j > 64) throw std::out_of_range("subset index must be in 1..64");
        s |= Subset(1) << (j - 1);
    }
    return a(s);
}

CoeffCheck check_coeffs(const SubsetCoeffs& coeffs, int k)
{
    if (k < 0 || k > 16) throw std::out_of_range("coefficient enumeration supports k <= 16");
    const Subset n = Subset(1) << k;
    std::vector<BigRational> a(n);
    for (Subset s = 0; s < n; ++s) a[s] = coeffs.a(s);

    CoeffCheck out;
    const BigRational one(1);
    for (Subset s = 0; s < n; ++s) {
        if (a[s].sign() <= 0 || a[s] > one) {
            if (out.aone) out.witness_s = s;
            out.aone = false;
        }
    }
    for (Subset s = 0; s < n && out.aunion; ++s) {
        for (Subset v = 0; v < n; ++v) {
            if (a[s | v] > a[s]) {
                out.aunion = false;
                out.witness_s = s;
                out.witness_v = v;
                break;
            }
        }
    }
    const BigRational quarter(1, 4);
    for (Subset s = 0; s < n; ++s) {
        BigRational sum(0);
        // Enumerate v subset of s, including the empty set and s itself.
        for (Subset v = s;; v = (v - 1) & s) {
            sum += a[v] * a[s & ~v];
            if (v == 0) break;
        }
        sum /= a[s];
        if (sum > out.worst_subset_sum) {
            out.worst_subset_sum = sum;
            out.worst_subset = s;
        }
        if (sum > quarter && out.asubset) {
            out.asubset = false;
            if (out.aone && out.aunion) out.witness_s = s;
        }
    }
    return out;
}

std::vector<BigRational> default_alphas(const std::vector<BigRational>& zero_values)
{
    std::vector<BigRational> alphas;
    BigRational three_pow(1);
    for (const auto& z : zero_values) {
        three_pow *= BigRational(3);
        const BigRational denom = z > BigRational(1) ? z : BigRational(1);
        alphas.push_back(BigRational(1) / (three_pow * denom));
    }
    return alphas;
}

AlphaCheck check_alphas(const std::vector<BigRational>& alphas, const std::vector<BigRational>& zero_values)
{
    if (alphas.size() != zero_values.size()) throw std::invalid_argument("alpha list and summand list differ in length");
    AlphaCheck c;
    c.product_one_plus = BigRational(1);
    c.product_zero = BigRational(1);
    c.alpha_sum = BigRational(0);
    const BigRational one(1);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        const auto& a = alphas[j];
        if (a.sign() <= 0 || !(a < one)) c.alphaone = false;
        c.product_one_plus *= one + a;
        c.product_zero *= one + a * a * zero_values[j];
        c.alpha_sum += a;
    }
    const BigRational two(2);
    c.kj = c.product_one_plus < two;
    c.zero = c.product_zero < two;
    c.log_sum = c.alpha_sum < constants::ln2().lo;
    return c;
}

std::string subset_str(Subset s)
{
    std::string out = "{";
    bool first = true;
    for (unsigned j = 1; j <= 64; ++j) {
        if (s & (Subset(1) << (j - 1))) {
            out += (first ? "" : ",") + std::to_string(j);
            first = false;
        }
    }
    return out + "}";
}

}  // namespace lpw
