#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fracdisp/errors.hpp"
#include "fracdisp/kernels.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/special.hpp"

using namespace fracdisp;
using namespace fracdisp::kernels;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// Independent oscillatory quadrature for int_0^inf e^{i xi^3} dxi: adaptive
// rule on [0, R] plus the first integration-by-parts tail term at R.
cplx airy_point_oracle() {
    const double R = 60.0;
    const auto body = quad::adaptive_gk(
        [](double xi) { return std::exp(cplx(0.0, xi * xi * xi)); }, 0.0, R, 1e-10, 1e-10, 60);
    const cplx tail = -std::exp(cplx(0.0, R * R * R)) / (cplx(0.0, 3.0) * R * R);
    return body.value + tail;
}

} // namespace

TEST_CASE("Fresnel kernel matches the closed form") {
    KernelQuery q;
    q.varpi = 2.0;
    q.eta = 0.0;
    q.dim = 1;
    q.freq_cutoff = 128.0;
    // sharp truncation of the Fresnel phase only fades like 1/R, so the
    // certificate tolerance has to respect that
    q.tolerance = 1e-3;
    // int e^{i(xi^2 + x xi)} dxi = sqrt(pi) e^{i pi/4} e^{-i x^2/4}
    for (double x : {0.0, 1.0, 3.5}) {
        const cplx expected = std::sqrt(M_PI) * std::polar(1.0, 0.25 * M_PI) *
                              std::exp(cplx(0.0, -0.25 * x * x));
        const cplx got = oscillatory_kernel(q, x);
        CHECK(std::abs(got - expected) / std::abs(expected) < 5e-3);
    }
}

TEST_CASE("cubic-phase kernel at the origin: oracle and closed form") {
    KernelQuery q;
    q.varpi = 3.0;
    q.eta = 0.0;
    q.dim = 1;
    q.freq_cutoff = 24.0;
    q.tolerance = 5e-5;
    const cplx got = oscillatory_kernel(q, 0.0);
    const cplx oracle = 2.0 * airy_point_oracle();
    CHECK(std::abs(got - oracle) / std::abs(oracle) < 1e-4);
    // closed form: 2 Gamma(4/3) e^{i pi/6}
    const cplx closed = 2.0 * std::exp(std::lgamma(4.0 / 3.0)) * std::polar(1.0, M_PI / 6.0);
    CHECK(std::abs(got - closed) / std::abs(closed) < 1e-4);
}

TEST_CASE("kernel is even in x") {
    KernelQuery q;
    q.varpi = 3.0;
    q.dim = 1;
    q.freq_cutoff = 16.0;
    q.tolerance = 1e-4;
    for (double x : {0.7, 2.2}) {
        const cplx a = oscillatory_kernel(q, x);
        const cplx b = oscillatory_kernel(q, -x);
        CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    }
}

TEST_CASE("sup scans are finite and refinement-stable in the bounded regime") {
    struct Case {
        double varpi, eta;
        int dim;
    };
    for (const Case c : {Case{3.0, 0.0, 1}, Case{4.0, 1.0, 1}, Case{3.0, 0.0, 2}}) {
        KernelQuery q;
        q.varpi = c.varpi;
        q.eta = c.eta;
        q.dim = c.dim;
        q.x_points = linspace(0.0, 12.0, 25); // even kernel: scan x >= 0
        q.freq_cutoff = 8.0;
        q.tolerance = 2e-3;
        CHECK(q.in_bounded_regime());
        const double sup = kernel_sup_scan(q);
        CHECK(std::isfinite(sup));
        CHECK(sup > 0.0);

        KernelQuery q_fine = q;
        q_fine.freq_cutoff *= 2.0;
        q_fine.tolerance *= 0.25;
        const double sup_fine = kernel_sup_scan(q_fine);
        CHECK(std::abs(sup_fine - sup) / sup <= 0.01);
    }
}

TEST_CASE("eta = 0 and eta = 1 scans both finite at varpi = 4 (boundary case)") {
    KernelQuery q;
    q.varpi = 4.0;
    q.dim = 1;
    q.x_points = linspace(0.0, 50.0, 51);
    q.freq_cutoff = 8.0;
    q.tolerance = 2e-3;
    q.eta = 1.0; // eta/d = varpi/2 - 1 exactly
    const double sup1 = kernel_sup_scan(q);
    q.eta = 0.0;
    const double sup0 = kernel_sup_scan(q);
    CHECK(std::isfinite(sup0));
    CHECK(std::isfinite(sup1));
}

TEST_CASE("scaled kernel decay fits the self-similar exponent") {
    std::vector<double> ts;
    for (double t = 1.0; t <= 32.01; t *= 2.0) ts.push_back(t);

    {
        KernelQuery q;
        q.varpi = 3.0;
        q.dim = 1;
        q.x_points = linspace(0.0, 10.0, 41);
        q.freq_cutoff = 16.0;
        q.tolerance = 1e-3;
        const auto fit = scaled_kernel_decay(q, ts, 0.05);
        CHECK(fit.target == doctest::Approx(-1.0 / 3.0));
        CHECK(fit.pass);
    }
    {
        KernelQuery q;
        q.varpi = 4.0;
        q.eta = 1.0;
        q.dim = 1;
        q.x_points = linspace(0.0, 10.0, 41);
        q.freq_cutoff = 8.0;
        q.tolerance = 1e-3;
        const auto fit = scaled_kernel_decay(q, ts, 0.05);
        CHECK(fit.target == doctest::Approx(-0.5));
        CHECK(fit.pass);
    }
    {
        // Fresnel case scales exactly
        KernelQuery q;
        q.varpi = 2.0;
        q.dim = 1;
        q.x_points = linspace(0.0, 8.0, 17);
        q.freq_cutoff = 96.0;
        q.tolerance = 2e-3;
        const auto fit = scaled_kernel_decay(q, ts, 0.02);
        CHECK(fit.target == doctest::Approx(-0.5));
        CHECK(fit.pass);
    }
}

TEST_CASE("two-dimensional scaled decay") {
    std::vector<double> ts;
    for (double t = 1.0; t <= 16.01; t *= 2.0) ts.push_back(t);
    KernelQuery q;
    q.varpi = 3.0;
    q.dim = 2;
    q.x_points = linspace(0.0, 8.0, 21);
    q.freq_cutoff = 12.0;
    q.tolerance = 2e-3;
    const auto fit = scaled_kernel_decay(q, ts, 0.05);
    CHECK(fit.target == doctest::Approx(-2.0 / 3.0));
    CHECK(fit.pass);
}

TEST_CASE("heat profiles match closed forms") {
    // delta = 2: (2 pi)^{-1/2} sqrt(pi) e^{-x^2/4}
    for (double x : {0.0, 0.8, 2.5}) {
        const cplx got = heat_kernel_profile(2.0, 0.0, x, 1);
        const double expected = std::sqrt(M_PI / (2.0 * M_PI)) * std::exp(-0.25 * x * x);
        CHECK(std::abs(got - cplx(expected, 0.0)) < 1e-10);
    }
    // delta = 1: Poisson profile (2 pi)^{-1/2} 2/(1+x^2)
    for (double x : {0.0, 1.0, 4.0}) {
        const cplx got = heat_kernel_profile(1.0, 0.0, x, 1);
        const double expected = 2.0 / (1.0 + x * x) / std::sqrt(2.0 * M_PI);
        CHECK(std::abs(got - cplx(expected, 0.0)) < 1e-6);
    }
    // large-x decay: theta = 0 leaves only the mild e^{-|xi|^delta} kink,
    // so the tail falls like |x|^{-(delta+1)}
    CHECK(std::abs(heat_kernel_profile(2.5, 0.0, 60.0, 1)) < 1e-4);
    // with theta > 0 the |xi|^theta kink slows the tail to |x|^{-(1+theta)};
    // only the trend is asserted
    const double far1 = std::abs(heat_kernel_profile(2.5, 0.5, 20.0, 1));
    const double far2 = std::abs(heat_kernel_profile(2.5, 0.5, 60.0, 1));
    const double far3 = std::abs(heat_kernel_profile(2.5, 0.5, 180.0, 1));
    CHECK(far2 < far1);
    CHECK(far3 < far2);
}

TEST_CASE("heat profile scaling identity cross-validates the direct route") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> ut(0.3, 5.0), ux(-4.0, 4.0);
    for (int i = 0; i < 10; ++i) {
        const double t = ut(rng), x = ux(rng);
        const cplx a = scaled_heat_profile(2.5, 0.5, t, x, 1);
        const cplx b = heat_profile_direct(2.5, 0.5, t, x, 1);
        CHECK(std::abs(a - b) <= 1e-8 * (std::abs(b) + 1e-8));
    }
}

TEST_CASE("fast J0 agrees with the standard library Bessel") {
    for (double x = 0.0; x < 120.0; x += 0.37) {
        CHECK(std::abs(bessel_j0_fast(x) - std::cyl_bessel_j(0.0, x)) < 2e-7);
    }
}

TEST_CASE("query validation and convergence failure") {
    KernelQuery q;
    q.varpi = 1.5;
    CHECK_THROWS_AS(q.validate(), DomainError);
    q.varpi = 3.0;
    q.dyadic_levels = 0;
    CHECK_THROWS_AS(q.validate(), DomainError);
    // hopeless tolerance must report NotConverged rather than a junk value
    KernelQuery q2;
    q2.varpi = 3.0;
    q2.dim = 1;
    q2.freq_cutoff = 2.0;
    q2.dyadic_levels = 2;
    q2.tolerance = 1e-14;
    CHECK_THROWS_AS((void)oscillatory_kernel(q2, 0.3), NotConverged);
}
