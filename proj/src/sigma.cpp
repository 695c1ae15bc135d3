#include "lpw/sigma.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace lpw {

namespace {

double bar(long n)
{
    const long a = n < 0 ? -n : n;
    return static_cast<double>(a < 1 ? 1 : a);
}

}  // namespace

BigRational sigma(const BigInt& n)
{
    BigInt a = abs(n);
    if (a < 1) a = 1;
    return BigRational(BigInt(1), a * a);
}

FloatInterval sigma_ratio_at(long m, long K)
{
    if (m < 0) m = -m;  // f is even
    if (K <= m) throw std::invalid_argument("sigma_ratio_at needs K > |m|");
    const double mb2 = bar(m) * bar(m);
    double lo = 0.0;
    double hi = 0.0;
    for (long n = -K; n <= K; ++n) {
        // All three squares are exact integers below 2^53, so only the division rounds.
        const double den = bar(n) * bar(n) * bar(m - n) * bar(m - n);
        const double q = mb2 / den;
        lo = round_down(lo + round_down(q));
        hi = round_up(hi + round_up(q));
    }
    const FloatInterval k(static_cast<double>(K), static_cast<double>(K));
    const FloatInterval km(static_cast<double>(K - m), static_cast<double>(K - m));
    const FloatInterval one(1.0, 1.0);
    const FloatInterval three(3.0, 3.0);
    const FloatInterval tail = FloatInterval(mb2, mb2) * (one / (km * km * k) + one / (three * k * k * k));
    return {lo, round_up(hi + tail.hi)};
}

FloatInterval sigma_envelope(long m_from)
{
    if (m_from < 2) throw std::invalid_argument("sigma_envelope needs m >= 2");
    const FloatInterval zeta2 = enclose(constants::zeta2().hi);
    const FloatInterval two(2.0, 2.0);
    const FloatInterval s1 = FloatInterval(1.0, 1.0) + two * zeta2;
    const FloatInterval mf(static_cast<double>(m_from), static_cast<double>(m_from));
    const FloatInterval g = two * s1 + (FloatInterval(12.0, 12.0) + FloatInterval(8.0, 8.0) * log(mf / two)) / mf;
    return g;
}

RationalInterval SigmaConstant::c2_exact() const
{
    return {BigRational::from_double(c2.lo), BigRational::from_double(c2.hi)};
}

Json SigmaConstant::to_json() const
{
    const RationalInterval c = c2_exact();
    Json j;
    j["M"] = M;
    j["K"] = K;
    j["C2"] = {c.lo.str(), c.hi.str()};
    j["C2_float"] = {c2.lo, c2.hi};
    j["f0"] = {f0.lo, f0.hi};
    j["argmax"] = argmax;
    j["envelope_beyond_M"] = envelope.hi;
    return j;
}

SigmaConstant sigma_subconvolutive_constant(long M)
{
    if (M < 100) throw std::invalid_argument("sigma_subconvolutive_constant needs M >= 100");
    SigmaConstant out;
    out.M = M;
    out.K = 4 * M;
    double best_lo = 0.0;
    double best_hi = 0.0;
    for (long m = 0; m <= M; ++m) {
        const FloatInterval f = sigma_ratio_at(m, out.K);
        if (m == 0) out.f0 = f;
        if (f.lo > best_lo) {
            best_lo = f.lo;
            out.argmax = m;
        }
        best_hi = std::max(best_hi, f.hi);
    }
    out.envelope = sigma_envelope(M + 1);
    out.c2 = FloatInterval(best_lo, std::max(best_hi, out.envelope.hi));
    return out;
}

const SigmaConstant& default_sigma_constant()
{
    static std::once_flag once;
    static SigmaConstant value;
    std::call_once(once, [] { value = sigma_subconvolutive_constant(1000); });
    return value;
}

}  // namespace lpw
