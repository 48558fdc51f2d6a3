#ifndef FRACDISP_MLF_HPP
#define FRACDISP_MLF_HPP

#include <complex>
#include <utility>

#include "fracdisp/quadrature.hpp"
#include "fracdisp/special.hpp"

namespace fracdisp::mlf {

using fracdisp::cplx;

// Two-parameter Mittag-Leffler evaluation E_{a,b}(z) on the rays needed by
// the solution operators.  `alpha` is the fractional order in (0,1);
// `beta_index` is the second index (1 or alpha in this project, any value
// below 1 + alpha accepted).
struct MlfParams {
    double alpha = 0.5;
    double beta_index = 1.0;
    double series_tol = 1e-12;
    int max_terms = 400;

    void validate() const; // throws DomainError on a bad tuple
};

// Argument z = (-it)^alpha |xi|^beta on the fixed branch
// (-i)^alpha = exp(-i alpha pi/2), so arg z = -alpha pi/2.
struct RayArgument {
    double t = 0.0;        // >= 0
    double xi_mag = 0.0;   // |xi| >= 0
    double beta_space = 1.0;
    double delta = 0.0;    // beta_space / alpha, kept consistent by the factory

    // Scalar phase variable t |xi|^delta; both operator symbols are
    // functions of this alone.
    double tau() const;
    cplx z(double alpha) const; // (-it)^alpha |xi|^beta
};

RayArgument make_ray_argument(double t, double xi_mag, double beta_space, double alpha);

// ---------------------------------------------------------------------------
// Power series route.

struct SeriesEval {
    cplx value;
    double truncation_bound = 0.0; // certified bound on the dropped tail
    double rounding_bound = 0.0;   // cancellation estimate: eps * sum |terms|
    int terms = 0;
    bool converged = false;

    double certified_error() const { return truncation_bound + rounding_bound; }
};

// Never throws; reports the partial sum with certified truncation and
// rounding bounds.  The rounding bound is what makes the series usable as an
// oracle: far out on the ray the terms cancel catastrophically and the
// truncation bound alone would be misleading.
SeriesEval mlf_series_probe(const MlfParams& params, cplx z);

// Throws NonConvergent if the truncation bound cannot be brought below
// series_tol within max_terms.
cplx mlf_series(const MlfParams& params, cplx z);

// ---------------------------------------------------------------------------
// Integral representation route (valid for |arg z| < alpha*pi, z != 0).

// Panel scheme for the substituted representation integral.
quad::QuadratureSpec make_ray_quadrature(const MlfParams& params, cplx z, double tol);

cplx mlf_integral_ray(const MlfParams& params, cplx z, const quad::QuadratureSpec& spec);
cplx mlf_integral_ray(const MlfParams& params, cplx z, double tol = 1e-10);

// Same correction integral without the exponential sector term; valid on
// alpha*pi < |arg z| <= pi.  Needed to evaluate the Laplace-transform
// identity, whose argument sits on the negative real axis.
cplx mlf_integral_outside_sector(const MlfParams& params, cplx z, double tol = 1e-10);

// Routed evaluation: series where it certifies series_tol, otherwise the
// integral representation for the sector containing z.
cplx mlf_auto(const MlfParams& params, cplx z, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Heat-kernel decomposition route for the two operator symbols.

enum class WeightKind { E1, Ea }; // r^{alpha-1} or r^alpha integrand weight

// Integrand weight of the heat-integral at radius r > 0:
//   r^{alpha-1} / (i^a r^{2a} - 2 r^a cos(a pi) + (-i)^a)   (E1)
//   r^{alpha}   / (same denominator)                        (Ea)
// Throws SingularDenominator if the denominator collapses, which can only
// happen if the branch convention is broken.
cplx heat_integral_weight(double alpha, WeightKind kind, double r);

// E_{a,1}((-it)^a |xi|^b) and E_{a,a}((-it)^a |xi|^b) through the
// Schrodinger-kernel + heat-integral split, exact constants kept.
std::pair<cplx, cplx> mlf_operator_symbols(const RayArgument& arg, const MlfParams& params,
                                           double tol = 1e-10);

// Scalar versions in the phase variable tau = t |xi|^delta.
cplx operator_symbol_e1(double alpha, double tau, double tol = 1e-10);
cplx operator_symbol_ea(double alpha, double tau, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Laplace-transform identity residual.

// | int_0^inf e^{-st} t^{b-1} E_{a,b}(a_coef t^a) dt - s^{a-b}/(s^a - a_coef) |
// with the left side computed by adaptive quadrature on [0, T] plus a
// certified tail bound.  Requires Re(s) > 0 and |s^{-a} a_coef| < 1; the
// certified tail additionally needs a_coef on the closed left half line or
// |a_coef|^{1/a} < Re(s).
double laplace_identity_residual(double alpha, double beta_index, cplx a_coef, cplx s,
                                 double tol = 1e-9);

} // namespace fracdisp::mlf

#endif
