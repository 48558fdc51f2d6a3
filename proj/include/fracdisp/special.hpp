#ifndef FRACDISP_SPECIAL_HPP
#define FRACDISP_SPECIAL_HPP

#include <complex>

namespace fracdisp {

using cplx = std::complex<double>;

// Fixed branch convention used throughout: principal powers along the ray
// arg z = -a*pi/2, so
//   i^a     = exp(+i a pi/2),
//   (-i)^a  = exp(-i a pi/2),
//   (-it)^a = t^a exp(-i a pi/2)  for t >= 0,
//   i^{-a}  = (-i)^a.
cplx i_pow(double a);
cplx minus_i_pow(double a);
cplx minus_it_pow(double a, double t);

// 1/Gamma(x) for real x; zero at the poles x = 0, -1, -2, ...
double gamma_reciprocal(double x);

// Euler Beta B(x, y), x, y > 0.
double beta_function(double x, double y);

// Bessel J0 by series (small argument) and the classic rational asymptotic
// fit (large argument); absolute error below 2e-8 which is plenty for the
// radial kernel quadratures.  Cross-checked against std::cyl_bessel_j in the
// test suite.
double bessel_j0_fast(double x);

} // namespace fracdisp

#endif
