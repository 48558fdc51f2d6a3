#include "fracdisp/norms.hpp"

#include <algorithm>
#include <cmath>

#include "fracdisp/errors.hpp"
#include "fracdisp/spectral.hpp"
#include "fracdisp/threading.hpp"

namespace fracdisp::norms {

using spectral::cplx;
using spectral::Space;

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw DomainError("Lp norm requires p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values) acc += std::norm(v);
    } else {
        for (const auto& v : f.values) acc += std::pow(std::abs(v), p);
    }
    return std::pow(acc * f.measure(), 1.0 / p);
}

double sobolev_norm(const Field& f, double s, SobolevKind kind) {
    const Field fhat = spectral::to_frequency(f);
    const spectral::Grid& g = *fhat.grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < fhat.values.size(); ++i) {
        const double k = g.freq_mag(i);
        const double m = (kind == SobolevKind::Homogeneous)
                             ? ((k == 0.0 && s != 0.0) ? 0.0 : std::pow(k, s))
                             : std::pow(1.0 + k * k, 0.5 * s);
        acc += m * m * std::norm(fhat.values[i]);
    }
    return std::sqrt(acc * fhat.measure());
}

void MixedNormSpec::validate() const {
    if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("mixed norm exponents must be >= 1");
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& times) {
    std::vector<double> w(times.size(), 0.0);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double h = times[i + 1] - times[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

Field with_derivative(const Field& f, double s, SobolevKind kind) {
    if (s == 0.0) return spectral::to_physical(f);
    if (kind == SobolevKind::Homogeneous)
        return spectral::to_physical(spectral::fractional_laplacian(f, s));
    return spectral::to_physical(spectral::apply_radial(
        f, [s](double k) { return cplx(std::pow(1.0 + k * k, 0.5 * s), 0.0); }));
}

} // namespace

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec) {
    spec.validate();
    traj.validate();
    if (traj.times.size() < 2) throw DomainError("mixed norm needs at least two times");

    const std::size_t nt = traj.times.size();
    const std::size_t nx = traj.fields.front().values.size();
    const double measure = traj.fields.front().measure();
    const auto tw = trapezoid_weights(traj.times);

    std::vector<std::vector<cplx>> snap(nt);
    parallel_for(nt, [&](std::size_t i) {
        snap[i] = with_derivative(traj.fields[i], spec.derivative_order, spec.derivative_kind)
                      .values;
    });

    if (spec.order == NormOrder::SpaceOuter) {
        // inner: L^q over time at fixed x; outer: L^p over x
        double outer = 0.0;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            double inner;
            if (std::isinf(spec.q)) {
                inner = 0.0;
                for (std::size_t it = 0; it < nt; ++it)
                    inner = std::max(inner, std::abs(snap[it][ix]));
            } else {
                double acc = 0.0;
                for (std::size_t it = 0; it < nt; ++it)
                    acc += tw[it] * std::pow(std::abs(snap[it][ix]), spec.q);
                inner = std::pow(acc, 1.0 / spec.q);
            }
            if (std::isinf(spec.p)) outer = std::max(outer, inner);
            else outer += std::pow(inner, spec.p) * measure;
        }
        return std::isinf(spec.p) ? outer : std::pow(outer, 1.0 / spec.p);
    }

    // inner: L^p over x per snapshot; outer: L^q over time
    double outer = 0.0;
    for (std::size_t it = 0; it < nt; ++it) {
        double inner;
        if (std::isinf(spec.p)) {
            inner = 0.0;
            for (std::size_t ix = 0; ix < nx; ++ix) inner = std::max(inner, std::abs(snap[it][ix]));
        } else {
            double acc = 0.0;
            for (std::size_t ix = 0; ix < nx; ++ix)
                acc += std::pow(std::abs(snap[it][ix]), spec.p);
            inner = std::pow(acc * measure, 1.0 / spec.p);
        }
        if (std::isinf(spec.q)) outer = std::max(outer, inner);
        else outer += tw[it] * std::pow(inner, spec.q);
    }
    return std::isinf(spec.q) ? outer : std::pow(outer, 1.0 / spec.q);
}

double weighted_sup_norm(const Trajectory& traj, double kappa, double p) {
    traj.validate();
    double sup = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t <= 0.0) continue; // the weight vanishes at t = 0; sup is over t > 0
        sup = std::max(sup, std::pow(t, kappa) * lp_norm(traj.fields[i], p));
    }
    return sup;
}

std::array<double, 5> lambda_functionals(const Trajectory& traj, double s, double theta,
                                         const FracParams& params) {
    params.validate();
    if (params.dim != 1) throw DomainError("lambda functionals are one-dimensional");
    const double delta = params.delta();
    const double p = params.nonlin_p;
    const double sigma = s + (3.0 * delta - 1.0) / 4.0 - params.beta / 2.0;
    const double dloss = s + delta - params.beta;

    MixedNormSpec spec;
    spec.derivative_kind = SobolevKind::Inhomogeneous;

    std::array<double, 5> lambda{};
    spec.order = NormOrder::SpaceOuter;
    spec.p = kInf;
    spec.q = 2.0;
    spec.derivative_order = sigma;
    lambda[0] = mixed_norm(traj, spec);

    spec.order = NormOrder::TimeOuter;
    spec.q = kInf;
    spec.p = 2.0;
    spec.derivative_order = s;
    lambda[1] = mixed_norm(traj, spec);

    spec.order = NormOrder::SpaceOuter;
    spec.p = 2.0 * (p - 2.0);
    spec.q = kInf;
    spec.derivative_order = 0.0;
    lambda[2] = mixed_norm(traj, spec);

    spec.p = 2.0 * (p - 2.0) / (1.0 - theta);
    spec.q = 2.0 / theta;
    spec.derivative_order = theta * dloss;
    lambda[3] = mixed_norm(traj, spec);

    spec.p = 2.0 * (p - 2.0) / theta;
    spec.q = 2.0 / (1.0 - theta);
    spec.derivative_order = (1.0 - theta) * dloss;
    lambda[4] = mixed_norm(traj, spec);
    return lambda;
}

} // namespace fracdisp::norms
