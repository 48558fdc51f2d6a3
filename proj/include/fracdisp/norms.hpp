#ifndef FRACDISP_NORMS_HPP
#define FRACDISP_NORMS_HPP

#include <array>
#include <limits>

#include "fracdisp/grid.hpp"
#include "fracdisp/params.hpp"
#include "fracdisp/trajectory.hpp"

namespace fracdisp::norms {

using spectral::Field;
using solver::Trajectory;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Discrete L^p norm with the field's own measure (h^d in physical space,
// (pi/L)^d in frequency space); grid maximum for p = infinity.
double lp_norm(const Field& f, double p);

enum class SobolevKind { Homogeneous, Inhomogeneous };

// L2 norm of |k|^s f-hat (homogeneous) or (1+|k|^2)^{s/2} f-hat.
double sobolev_norm(const Field& f, double s, SobolevKind kind);

enum class NormOrder { SpaceOuter, TimeOuter }; // L^p_x L^q_T vs L^q_T L^p_x

struct MixedNormSpec {
    NormOrder order = NormOrder::SpaceOuter;
    double p = 2.0; // spatial exponent (or infinity)
    double q = 2.0; // temporal exponent (or infinity)
    double derivative_order = 0.0;
    SobolevKind derivative_kind = SobolevKind::Homogeneous;

    void validate() const;
};

// Applies the derivative multiplier snapshot-wise, then composes the inner
// and outer norms in the declared order.  Time integrals use the
// trajectory's own grid with trapezoid weights; no re-interpolation.
double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec);

// sup over the grid times t > 0 of t^kappa ||w(t)||_p.
double weighted_sup_norm(const Trajectory& traj, double kappa, double p);

// The five regularity functionals of the one-dimensional beta < 2 regime:
//   l1 = ||<D>^sigma w||_{Linf_x L2_T}
//   l2 = ||<D>^s w||_{Linf_T L2_x}
//   l3 = ||w||_{L^{2(p-2)}_x Linf_T}
//   l4 = ||<D>^{theta(s+delta-beta)} w||_{L^{2(p-2)/(1-theta)}_x L^{2/theta}_T}
//   l5 = ||<D>^{(1-theta)(s+delta-beta)} w||_{L^{2(p-2)/theta}_x L^{2/(1-theta)}_T}
std::array<double, 5> lambda_functionals(const Trajectory& traj, double s, double theta,
                                         const FracParams& params);

} // namespace fracdisp::norms

#endif
