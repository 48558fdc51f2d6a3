#include "fracdisp/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdisp/errors.hpp"

namespace fracdisp::mlf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double arg_abs(cplx z) { return std::abs(std::arg(z)); }

} // namespace

void MlfParams::validate() const {
    // The series accepts alpha = 1 (it collapses to the exponential); the
    // representation-integral routes additionally require alpha < 1.
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0,1]");
    if (!(beta_index < 1.0 + alpha)) throw DomainError("beta_index must be < 1 + alpha");
    if (!(series_tol > 0.0)) throw DomainError("series_tol must be positive");
    if (max_terms < 10) throw DomainError("max_terms must be at least 10");
}

double RayArgument::tau() const { return t * std::pow(xi_mag, delta); }

cplx RayArgument::z(double alpha) const {
    return minus_it_pow(alpha, t) * std::pow(xi_mag, beta_space);
}

RayArgument make_ray_argument(double t, double xi_mag, double beta_space, double alpha) {
    if (t < 0.0) throw DomainError("negative time on the ray");
    if (xi_mag < 0.0) throw DomainError("negative frequency magnitude");
    if (!(beta_space > 0.0)) throw DomainError("beta_space must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    return RayArgument{t, xi_mag, beta_space, beta_space / alpha};
}

// ---------------------------------------------------------------------------
// Series route.

SeriesEval mlf_series_probe(const MlfParams& params, cplx z) {
    params.validate();
    const double a = params.alpha, b = params.beta_index;

    SeriesEval out;
    cplx term = cplx(gamma_reciprocal(b), 0.0);
    cplx sum = term;
    double abs_sum = std::abs(term);
    const double az = std::abs(z);

    if (az == 0.0) {
        out.value = sum;
        out.terms = 1;
        out.converged = true;
        out.rounding_bound = kEps * abs_sum;
        return out;
    }

    for (int n = 0; n < params.max_terms; ++n) {
        // term_{n+1} = term_n * z * Gamma(a n + b) / Gamma(a(n+1) + b)
        const double lg_ratio = std::lgamma(a * n + b) - std::lgamma(a * (n + 1) + b);
        term *= z * std::exp(lg_ratio);
        sum += term;
        abs_sum += std::abs(term);

        const double ratio = az * std::exp(std::lgamma(a * (n + 1) + b) -
                                           std::lgamma(a * (n + 2) + b));
        if (ratio < 0.5) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (tail <= params.series_tol) {
                out.value = sum;
                out.truncation_bound = tail;
                out.rounding_bound = kEps * abs_sum * 4.0;
                out.terms = n + 2;
                out.converged = true;
                return out;
            }
        }
    }
    out.value = sum;
    out.truncation_bound = std::abs(term); // last term as a crude lower estimate
    out.rounding_bound = kEps * abs_sum * 4.0;
    out.terms = params.max_terms + 1;
    out.converged = false;
    return out;
}

cplx mlf_series(const MlfParams& params, cplx z) {
    const SeriesEval eval = mlf_series_probe(params, z);
    if (!eval.converged)
        throw NonConvergent("Mittag-Leffler series did not meet series_tol within max_terms");
    return eval.value;
}

// ---------------------------------------------------------------------------
// Representation integral.  After the substitution u = r^{1/alpha} the
// integrand reads
//   (1/pi) u^{alpha-beta} e^{-u} N(u) / D(u),
//   N(u) = u^alpha sin(pi(1-beta)) - z sin(pi(1-beta+alpha)),
//   D(u) = u^{2 alpha} - 2 u^alpha z cos(pi alpha) + z^2,
// and the endpoint power u^{alpha-beta} is integrable because beta < 1+alpha.

namespace {

struct RayIntegrand {
    double alpha, beta;
    cplx z;
    double s1, s2, c; // sin(pi(1-beta)), sin(pi(1-beta+alpha)), cos(pi alpha)

    RayIntegrand(double a, double b, cplx z_) : alpha(a), beta(b), z(z_) {
        s1 = std::sin(M_PI * (1.0 - b));
        s2 = std::sin(M_PI * (1.0 - b + a));
        c = std::cos(M_PI * a);
    }

    // integrand without the u^{alpha-beta} power factor
    cplx smooth(double u) const {
        const double ua = std::pow(u, alpha);
        const cplx num = ua * s1 - z * s2;
        const cplx den = (ua * ua - 2.0 * ua * c * z) + z * z;
        return std::exp(-u) * num / (den * M_PI);
    }

    cplx full(double u) const { return std::pow(u, alpha - beta) * smooth(u); }
};

double ray_cutoff(double alpha, double beta, double az, double tol) {
    // For u^alpha >= 2|z| the denominator obeys |D| >= u^{2 alpha}/4, so the
    // integrand is below (6/pi) u^{-beta} e^{-u} and the tail beyond R is
    // below (6/pi) e^{-R} max(1, R^{-beta}).
    double R = std::max(50.0, 1.1 * std::pow(2.0 * az, 1.0 / alpha));
    while ((6.0 / M_PI) * std::exp(-R) * std::max(1.0, std::pow(R, -beta)) > tol) R *= 1.5;
    return R;
}

} // namespace

quad::QuadratureSpec make_ray_quadrature(const MlfParams& params, cplx z, double tol) {
    params.validate();
    const double R = ray_cutoff(params.alpha, params.beta_index, std::abs(z), tol);
    auto spec = quad::QuadratureSpec::geometric(0.25, R, 32, 8, std::sqrt(2.0));
    spec.substitution = quad::Substitution::PowerLaw;
    spec.tail_bound = (6.0 / M_PI) * std::exp(-R) * std::max(1.0, std::pow(R, -params.beta_index));
    spec.validate(tol);
    return spec;
}

namespace {

// Integrates the representation integral over the panel scheme.  The first
// panel absorbs the u^{alpha-beta} power exactly via u = a s^{1/(1+alpha-beta)}.
cplx ray_correction_integral(const MlfParams& params, cplx z, const quad::QuadratureSpec& spec) {
    const RayIntegrand f(params.alpha, params.beta_index, z);
    const double mu = params.alpha - params.beta_index;
    const double a0 = spec.panel_edges[1];
    const double p = mu + 1.0;

    cplx acc = quad::gauss_panel(
        [&](double s) { return f.smooth(a0 * std::pow(s, 1.0 / p)); }, 0.0, 1.0,
        spec.nodes_per_panel);
    acc *= std::pow(a0, p) / p;

    for (std::size_t k = 1; k + 1 < spec.panel_edges.size(); ++k)
        acc += quad::gauss_panel([&](double u) { return f.full(u); }, spec.panel_edges[k],
                                 spec.panel_edges[k + 1], spec.nodes_per_panel);
    return acc;
}

cplx sector_term(const MlfParams& params, cplx z) {
    const double a = params.alpha, b = params.beta_index;
    const cplx z_inv_alpha = std::pow(z, 1.0 / a);
    return std::pow(z, (1.0 - b) / a) * std::exp(z_inv_alpha) / a;
}

} // namespace

cplx mlf_integral_ray(const MlfParams& params, cplx z, const quad::QuadratureSpec& spec) {
    params.validate();
    if (!(params.alpha < 1.0)) throw DomainError("representation integral requires alpha < 1");
    if (z == cplx(0.0, 0.0)) throw DomainError("representation integral requires z != 0");
    if (arg_abs(z) >= params.alpha * M_PI)
        throw DomainError("|arg z| must be strictly below alpha*pi for the sector form");
    return sector_term(params, z) + ray_correction_integral(params, z, spec);
}

cplx mlf_integral_ray(const MlfParams& params, cplx z, double tol) {
    if (z == cplx(0.0, 0.0)) throw DomainError("representation integral requires z != 0");
    return mlf_integral_ray(params, z, make_ray_quadrature(params, z, tol));
}

cplx mlf_integral_outside_sector(const MlfParams& params, cplx z, double tol) {
    params.validate();
    if (!(params.alpha < 1.0)) throw DomainError("representation integral requires alpha < 1");
    if (z == cplx(0.0, 0.0)) throw DomainError("representation integral requires z != 0");
    const double az = arg_abs(z);
    if (az <= params.alpha * M_PI)
        throw DomainError("|arg z| must exceed alpha*pi for the exterior form");
    return ray_correction_integral(params, z, make_ray_quadrature(params, z, tol));
}

cplx mlf_auto(const MlfParams& params, cplx z, double tol) {
    params.validate();
    if (z == cplx(0.0, 0.0)) return cplx(gamma_reciprocal(params.beta_index), 0.0);
    const SeriesEval probe = mlf_series_probe(params, z);
    if (probe.converged && probe.certified_error() <= std::max(params.series_tol, tol))
        return probe.value;
    const double az = arg_abs(z);
    if (az < params.alpha * M_PI) return mlf_integral_ray(params, z, tol);
    if (az > params.alpha * M_PI) return mlf_integral_outside_sector(params, z, tol);
    throw DomainError("z on the sector boundary |arg z| = alpha*pi");
}

// ---------------------------------------------------------------------------
// Heat-kernel decomposition.

cplx heat_integral_weight(double alpha, WeightKind kind, double r) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    if (!(r > 0.0)) throw DomainError("heat integrand needs r > 0");
    const double ra = std::pow(r, alpha);
    const cplx den = i_pow(alpha) * ra * ra - 2.0 * ra * std::cos(M_PI * alpha) + minus_i_pow(alpha);
    if (std::abs(den) < 1e-14)
        throw SingularDenominator("heat-integral denominator vanished; branch convention broken");
    const double weight = (kind == WeightKind::E1) ? std::pow(r, alpha - 1.0) : ra;
    return weight / den;
}

namespace {

// In u = r^alpha the denominator is the quadratic
//   Q(u) = i^a u^2 - 2 u cos(a pi) + (-i)^a
// whose roots sit at e^{i a pi/2} and e^{-3 i a pi/2}, off the positive axis.
struct HeatIntegrand {
    double alpha, inv_alpha, tau;
    cplx ia, mia;
    double c;

    HeatIntegrand(double a, double tau_) : alpha(a), inv_alpha(1.0 / a), tau(tau_) {
        ia = i_pow(a);
        mia = minus_i_pow(a);
        c = std::cos(M_PI * a);
    }

    cplx q(double u) const { return ia * u * u - 2.0 * c * u + mia; }
    cplx e1(double u) const { return std::exp(-std::pow(u, inv_alpha) * tau) / q(u); }
    cplx ea(double u) const {
        return std::pow(u, inv_alpha) * std::exp(-std::pow(u, inv_alpha) * tau) / q(u);
    }
};

// Cutoff with certified tail for the two u-space heat integrals.
double heat_cutoff(double alpha, WeightKind kind, double tau, double tol) {
    const double c = std::abs(std::cos(M_PI * alpha));
    double R = std::max(4.0 * c + 2.0, 64.0);
    for (int i = 0; i < 200; ++i) {
        double bound;
        if (kind == WeightKind::E1) {
            bound = 2.0 / R * std::exp(-std::pow(R, 1.0 / alpha) * tau);
        } else {
            if (tau <= 0.0) throw DomainError("Ea heat integral requires tau > 0");
            const double Y = std::pow(R, 1.0 / alpha);
            bound = 2.0 * alpha * std::pow(Y, -alpha) * std::exp(-Y * tau) / tau;
        }
        if (bound <= tol) return R;
        R *= 2.0;
    }
    throw QuadratureError("heat-integral cutoff search failed");
}

quad::QuadratureSpec heat_quadrature(double alpha, WeightKind kind, double tau, double tol) {
    const double R = heat_cutoff(alpha, kind, tau, tol);
    // Decay scale u ~ tau^{-alpha}; refine geometrically below it.
    const double u_char = (tau > 1.0) ? std::pow(tau, -alpha) : 1.0;
    const double lo = std::min(u_char, 1.0);
    auto spec = quad::QuadratureSpec::geometric(lo, R, 24, 12, std::sqrt(2.0));
    spec.substitution = quad::Substitution::PowerLaw;
    if (kind == WeightKind::E1)
        spec.tail_bound = 2.0 / R * std::exp(-std::pow(R, 1.0 / alpha) * tau);
    else
        spec.tail_bound = 2.0 * alpha * std::pow(std::pow(R, 1.0 / alpha), -alpha) *
                          std::exp(-std::pow(R, 1.0 / alpha) * tau) / tau;
    spec.validate(tol);
    return spec;
}

} // namespace

cplx operator_symbol_e1(double alpha, double tau, double tol) {
    if (tau < 0.0) throw DomainError("negative phase variable");
    if (tau == 0.0) return cplx(1.0, 0.0);
    const HeatIntegrand f(alpha, tau);
    const auto spec = heat_quadrature(alpha, WeightKind::E1, tau, tol);
    const cplx h1 = quad::integrate(spec, [&](double u) { return f.e1(u); });
    const double s = std::sin(M_PI * alpha) / (M_PI * alpha);
    return std::exp(cplx(0.0, -tau)) / alpha - s * h1;
}

cplx operator_symbol_ea(double alpha, double tau, double tol) {
    if (tau < 0.0) throw DomainError("negative phase variable");
    if (tau == 0.0) return cplx(gamma_reciprocal(alpha), 0.0);
    const HeatIntegrand f(alpha, tau);
    const auto spec = heat_quadrature(alpha, WeightKind::Ea, tau, tol);
    const cplx ha = quad::integrate(spec, [&](double u) { return f.ea(u); });
    const double s = std::sin(M_PI * alpha) / (M_PI * alpha);
    const double t1ma = std::pow(tau, 1.0 - alpha);
    const cplx schrodinger = minus_i_pow(1.0 - alpha) * t1ma * std::exp(cplx(0.0, -tau)) / alpha;
    // The heat term carries the extra phase i^alpha that the substitution
    // r = (rho tau)^alpha produces from the denominator prefactor; dropping
    // it breaks E_{a,a}(0) = 1/Gamma(a).
    return schrodinger + s * i_pow(alpha) * t1ma * ha;
}

std::pair<cplx, cplx> mlf_operator_symbols(const RayArgument& arg, const MlfParams& params,
                                           double tol) {
    params.validate();
    const double tau = arg.tau();
    return {operator_symbol_e1(params.alpha, tau, tol),
            operator_symbol_ea(params.alpha, tau, tol)};
}

// ---------------------------------------------------------------------------
// Laplace identity.

double laplace_identity_residual(double alpha, double beta_index, cplx a_coef, cplx s,
                                 double tol) {
    MlfParams params{alpha, beta_index, 1e-13, 600};
    params.validate();
    if (!(s.real() > 0.0)) throw DomainError("Laplace identity requires Re(s) > 0");
    // |s^-alpha a| < 1 makes the transformed series geometric; for real
    // a <= 0 the transform converges for every Re(s) > 0 and the identity
    // extends by analytic continuation, so that region is accepted too.
    const bool left_half = (a_coef.real() <= 0.0 && a_coef.imag() == 0.0);
    if (!(std::abs(std::pow(s, -alpha) * a_coef) < 1.0) && !left_half)
        throw DomainError("Laplace identity requires |s^-alpha a| < 1 or real a <= 0");
    if (!left_half && !(std::pow(std::abs(a_coef), 1.0 / alpha) < s.real()))
        throw DomainError("no certified tail bound for this (a, s) pair");

    auto integrand_smooth = [&](double t) {
        return std::exp(-s * t) * mlf_auto(params, a_coef * std::pow(t, alpha), tol * 1e-2);
    };

    // |E_{a,b}(a t^a)| stays below this bound on the integration range.
    const double m_bound = left_half
                               ? std::max(1.0, gamma_reciprocal(beta_index)) * 1.5
                               : 2.0 / (1.0 - std::pow(std::abs(a_coef), 1.0 / alpha) / s.real());
    double T = 1.0;
    const double sr = s.real();
    auto tail_bound = [&](double T_) {
        const double power = (beta_index >= 1.0) ? std::pow(T_, beta_index - 1.0) * 2.0
                                                 : std::pow(T_, beta_index - 1.0);
        return m_bound * power * std::exp(-sr * T_) / sr;
    };
    while (tail_bound(T) > 0.25 * tol) T *= 1.5;

    // Endpoint power t^{beta-1} absorbed exactly on [0, t0].
    const double t0 = std::min(0.5, T * 0.25);
    cplx lhs = quad::gauss_panel(
                   [&](double sigma) {
                       const double t = t0 * std::pow(sigma, 1.0 / beta_index);
                       return integrand_smooth(t);
                   },
                   0.0, 1.0, 48) *
               std::pow(t0, beta_index) / beta_index;
    const auto body = quad::adaptive_gk(
        [&](double t) { return std::pow(t, beta_index - 1.0) * integrand_smooth(t); }, t0, T,
        0.1 * tol, 1e-12);
    lhs += body.value;

    const cplx rhs = std::pow(s, alpha - beta_index) / (std::pow(s, alpha) - a_coef);
    return std::abs(lhs - rhs);
}

} // namespace fracdisp::mlf
