#include "fracdisp/special.hpp"

#include <cmath>

namespace fracdisp {

cplx i_pow(double a) { return std::polar(1.0, 0.5 * M_PI * a); }

cplx minus_i_pow(double a) { return std::polar(1.0, -0.5 * M_PI * a); }

cplx minus_it_pow(double a, double t) { return std::polar(std::pow(t, a), -0.5 * M_PI * a); }

double gamma_reciprocal(double x) {
    if (x > 0.0) return std::exp(-std::lgamma(x));
    if (x == std::floor(x)) return 0.0; // pole of Gamma
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
    return std::exp(std::lgamma(1.0 - x)) * std::sin(M_PI * x) / M_PI;
}

double beta_function(double x, double y) {
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double bessel_j0_fast(double x) {
    const double ax = std::fabs(x);
    if (ax < 8.0) {
        const double y = x * x;
        const double p1 = 57568490574.0 + y * (-13362590354.0 + y * (651619640.7 +
                          y * (-11214424.18 + y * (77392.33017 + y * (-184.9052456)))));
        const double p2 = 57568490411.0 + y * (1029532985.0 + y * (9494680.718 +
                          y * (59272.64853 + y * (267.8532712 + y))));
        return p1 / p2;
    }
    const double z = 8.0 / ax;
    const double y = z * z;
    const double xx = ax - 0.785398164;
    const double p1 = 1.0 + y * (-0.1098628627e-2 + y * (0.2734510407e-4 +
                      y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
    const double p2 = -0.1562499995e-1 + y * (0.1430488765e-3 + y * (-0.6911147651e-5 +
                      y * (0.7621095161e-6 + y * (-0.934935152e-7))));
    return std::sqrt(0.636619772 / ax) * (std::cos(xx) * p1 - z * std::sin(xx) * p2);
}

} // namespace fracdisp
