#ifndef FRACDISP_KERNELS_HPP
#define FRACDISP_KERNELS_HPP

#include <complex>
#include <vector>

#include "fracdisp/fit.hpp"

namespace fracdisp::kernels {

using cplx = std::complex<double>;

// Oscillatory dispersive kernel int_{|xi| <= cutoff} e^{i(|xi|^varpi + x.xi)}
// |xi|^eta dxi, evaluated radially in one, two or three dimensions.
struct KernelQuery {
    double varpi = 3.0;     // phase power, >= 2
    double eta = 0.0;       // |xi|^eta weight, >= 0
    int dim = 1;
    std::vector<double> x_points; // scan positions (radial; sign irrelevant)
    double freq_cutoff = 32.0;    // starting cutoff, certified by doubling
    int dyadic_levels = 6;        // doubling budget for the certificate
    double tolerance = 1e-4;      // declared relative tolerance

    // eta/d <= varpi/2 - 1 is where the uniform sup bound is claimed.
    bool in_bounded_regime() const { return eta / dim <= 0.5 * varpi - 1.0 && eta >= 0.0; }
    void validate() const;
};

// Kernel value at one position; the cutoff is doubled until the value moves
// by less than the declared tolerance (NotConverged otherwise).  The phase
// may carry a time factor: exp(i (t |xi|^varpi + x.xi)).
cplx oscillatory_kernel(const KernelQuery& q, double x, double t = 1.0);

// max over q.x_points of |oscillatory_kernel|; refinement-stable per the
// kernel certificate.
double kernel_sup_scan(const KernelQuery& q);

// sup_x of the t-phase kernel for each t, fitted against the self-similar
// decay exponent -(d+eta)/varpi.  Scan positions stretch with t^{1/varpi}.
verify::FitResult scaled_kernel_decay(const KernelQuery& q, const std::vector<double>& t_list,
                                      double slope_tolerance = 0.05);

// Fractional heat profile (2 pi)^{-d/2} int e^{i x.xi} |xi|^theta e^{-|xi|^delta} dxi.
cplx heat_kernel_profile(double delta, double theta, double x, int dim);

// Profile at time t through the exact scaling t^{-(theta+d)/delta} S_theta(t^{-1/delta} x).
cplx scaled_heat_profile(double delta, double theta, double t, double x, int dim);

// Direct quadrature of the time-t heat profile without using the scaling
// identity; the two routes cross-validate each other.
cplx heat_profile_direct(double delta, double theta, double t, double x, int dim);

} // namespace fracdisp::kernels

#endif
