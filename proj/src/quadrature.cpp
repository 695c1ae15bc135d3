#include "lpw/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lpw {

double QuadratureSpec::default_tolerance()
{
    if (const char* env = std::getenv("LPW_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return 1e-9;
}

Json QuadratureSpec::to_json() const
{
    return {{"h", h}, {"T", T}, {"tol", tol}, {"singular", singular}, {"rule", "gauss-kronrod-31"}};
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double h)
{
    if (!(h > 0.0)) throw std::invalid_argument("quadrature step must be positive");
    QuadResult r;
    if (b <= a) return r;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * w;
        const double hi = i + 1 == panels ? b : a + (i + 1) * w;
        double err = 0.0;
        r.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err);
        r.error += err;
    }
    r.panels = panels;
    return r;
}

}  // namespace lpw
