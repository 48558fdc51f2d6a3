#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fracdisp/errors.hpp"
#include "fracdisp/mlf.hpp"
#include "fracdisp/mlf_symbols.hpp"
#include "fracdisp/special.hpp"

using namespace fracdisp;
using namespace fracdisp::mlf;
using std::complex;

namespace {

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Independent closed form for alpha = 1/2, beta = 1 on the real axis:
// E_{1/2,1}(x) = e^{x^2} erfc(-x), evaluated in scaled form for large -x
// where e^{x^2} alone overflows.
double mlf_half_oracle(double x) {
    if (x > -5.0) return std::exp(x * x) * std::erfc(-x);
    const double y = -x; // erfcx(y) by the asymptotic series
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2.0 * k - 1.0) / (2.0 * y * y);
        sum += term;
    }
    return sum / (y * std::sqrt(M_PI));
}

} // namespace

TEST_CASE("series trivial values") {
    MlfParams p{0.8, 1.0, 1e-12, 200};
    CHECK(std::abs(mlf_series(p, {0.0, 0.0}) - cplx(1.0, 0.0)) < 1e-15);

    // alpha = 1 collapses the series to the exponential (series route only).
    MlfParams pexp{1.0, 1.0, 1e-12, 200};
    CHECK(std::abs(mlf_series(pexp, {1.0, 0.0}) - cplx(std::exp(1.0), 0.0)) < 1e-12);

    MlfParams ph{0.5, 1.0, 1e-12, 200};
    CHECK(std::abs(mlf_series(ph, {-1.0, 0.0}).real() - mlf_half_oracle(-1.0)) < 1e-10);
    CHECK(mlf_series(ph, {-1.0, 0.0}).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("series reports non-convergence instead of returning junk") {
    MlfParams p{0.6, 1.0, 1e-12, 10};
    CHECK_THROWS_AS((void)mlf_series(p, {40.0, 0.0}), NonConvergent);
    const SeriesEval probe = mlf_series_probe(p, {40.0, 0.0});
    CHECK_FALSE(probe.converged);
}

TEST_CASE("representation integral agrees with the series on the ray") {
    {
        MlfParams p{0.75, 1.0, 1e-13, 400};
        const cplx z = minus_it_pow(0.75, 1.0) * 1.0;
        CHECK(rel_diff(mlf_integral_ray(p, z), mlf_series(p, z)) < 1e-8);
    }
    {
        MlfParams p{0.6, 0.6, 1e-13, 400};
        const cplx z = minus_it_pow(0.6, 2.0) * std::pow(2.0, 1.5);
        CHECK(rel_diff(mlf_integral_ray(p, z), mlf_series(p, z)) < 1e-8);
    }
}

TEST_CASE("representation integral rejects the sector boundary") {
    MlfParams p{0.9, 1.0, 1e-12, 200};
    const cplx z = std::polar(2.0, 0.9 * M_PI); // arg z = alpha*pi exactly
    CHECK_THROWS_AS((void)mlf_integral_ray(p, z), DomainError);
    // Small |z| on the boundary still routes to the (certifiable) series;
    // a large one has no valid route left and must be rejected.
    CHECK(std::isfinite(mlf_auto(p, z, 1e-10).real()));
    CHECK_THROWS_AS((void)mlf_auto(p, std::polar(60.0, 0.9 * M_PI), 1e-10), DomainError);
}

TEST_CASE("exterior representation matches the erfc closed form") {
    MlfParams p{0.5, 1.0, 1e-13, 400};
    // |arg(-1)| = pi > alpha*pi = pi/2, so this exercises the exterior branch.
    const cplx v = mlf_integral_outside_sector(p, {-1.0, 0.0});
    CHECK(std::abs(v.real() - mlf_half_oracle(-1.0)) < 1e-9);
    CHECK(std::abs(v.imag()) < 1e-9);
    // Larger argument where the series would cancel catastrophically.
    const cplx v2 = mlf_auto(p, {-30.0, 0.0});
    CHECK(std::abs(v2.real() - mlf_half_oracle(-30.0)) / mlf_half_oracle(-30.0) < 1e-7);
}

TEST_CASE("heat integral weight: direct complex arithmetic checks") {
    // cos(pi/2) = 0, so at r = 1 the denominator is i^{1/2} + (-i)^{1/2} = sqrt(2).
    const cplx w = heat_integral_weight(0.5, WeightKind::E1, 1.0);
    CHECK(std::abs(w - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);

    // Large-r magnitude ~ r^{-alpha-1} for the E1 weight.
    const double alpha = 0.75;
    const double r1 = 1e4, r2 = 1e5;
    const double m1 = std::abs(heat_integral_weight(alpha, WeightKind::E1, r1));
    const double m2 = std::abs(heat_integral_weight(alpha, WeightKind::E1, r2));
    const double observed = std::log(m1 / m2) / std::log(r2 / r1);
    CHECK(observed == doctest::Approx(alpha + 1.0).epsilon(1e-3));

    const cplx wa = heat_integral_weight(0.6, WeightKind::Ea, 1.0);
    CHECK(std::isfinite(wa.real()));
    CHECK(std::abs(wa) > 0.0);
}

TEST_CASE("denominator stays away from zero on the sampled r-grid") {
    for (double alpha : {0.3, 0.5, 0.6, 0.75, 0.9}) {
        double min_abs = 1e300;
        for (int i = 0; i < 10000; ++i) {
            const double r = std::pow(10.0, -6.0 + 12.0 * i / 9999.0);
            const double ra = std::pow(r, alpha);
            const cplx den = i_pow(alpha) * ra * ra - 2.0 * ra * std::cos(M_PI * alpha) +
                             minus_i_pow(alpha);
            min_abs = std::min(min_abs, std::abs(den));
        }
        CHECK(min_abs > 0.0);
        // At r = 1 the modulus is exactly 2 cos(alpha pi/2) - 2 cos(alpha pi).
        const cplx d1 = i_pow(alpha) - 2.0 * std::cos(M_PI * alpha) + minus_i_pow(alpha);
        CHECK(std::abs(d1) ==
              doctest::Approx(2.0 * std::cos(0.5 * M_PI * alpha) - 2.0 * std::cos(M_PI * alpha))
                  .epsilon(1e-12));
        CHECK(std::abs(d1) > 0.0);
    }
}

TEST_CASE("operator symbols: exact special points") {
    MlfParams p{0.8, 1.0, 1e-12, 300};
    const auto at_t0 = mlf_operator_symbols(make_ray_argument(0.0, 3.0, 1.5, 0.8), p);
    CHECK(at_t0.first == cplx(1.0, 0.0));

    MlfParams p6{0.6, 0.6, 1e-12, 300};
    const auto zero_freq = mlf_operator_symbols(make_ray_argument(1.0, 0.0, 1.5, 0.6), p6);
    CHECK(std::abs(zero_freq.first - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(zero_freq.second - cplx(gamma_reciprocal(0.6), 0.0)) < 1e-14);
}

TEST_CASE("operator symbols match the series at a moderate argument") {
    const auto arg = make_ray_argument(1.0, 1.0, 1.5, 0.75);
    MlfParams p1{0.75, 1.0, 1e-13, 400};
    MlfParams pa{0.75, 0.75, 1e-13, 400};
    const auto sym = mlf_operator_symbols(arg, p1);
    const cplx z = arg.z(0.75);
    CHECK(rel_diff(sym.first, mlf_series(p1, z)) < 1e-7);
    CHECK(rel_diff(sym.second, mlf_series(pa, z)) < 1e-7);
}

TEST_CASE("route agreement across the declared parameter grid") {
    // z = (-it)^alpha rho^beta, beta_space = 1.5, capped at |z| <= 20.  The
    // series is the oracle wherever its certified error (truncation plus
    // cancellation) is below 1e-8; the two integral routes must agree with it
    // there and with each other everywhere.
    const double beta_space = 1.5;
    int oracle_points = 0;
    for (double alpha : {0.6, 0.75, 0.9}) {
        for (double beta_index : {1.0, alpha}) {
            MlfParams params{alpha, beta_index, 1e-13, 500};
            for (double t : {0.5, 1.0, 2.0}) {
                for (double rho : {0.5, 1.0, 2.0, 4.0}) {
                    const cplx z = minus_it_pow(alpha, t) * std::pow(rho, beta_space);
                    if (std::abs(z) > 20.0) continue;
                    const cplx integral = mlf_integral_ray(params, z, 1e-10);

                    // decomposition route through the operator symbols
                    cplx decomposition;
                    const double tau = t * std::pow(rho, beta_space / alpha);
                    if (beta_index == 1.0) decomposition = operator_symbol_e1(alpha, tau, 1e-11);
                    else decomposition = operator_symbol_ea(alpha, tau, 1e-11);

                    CHECK(rel_diff(integral, decomposition) < 1e-6);

                    const SeriesEval probe = mlf_series_probe(params, z);
                    if (probe.converged && probe.certified_error() < 1e-8 * std::abs(probe.value)) {
                        ++oracle_points;
                        CHECK(rel_diff(integral, probe.value) < 1e-6);
                        CHECK(rel_diff(decomposition, probe.value) < 1e-6);
                    }
                }
            }
        }
    }
    CHECK(oracle_points >= 40); // the certified subgrid must stay substantial
}

TEST_CASE("conjugate symmetry on every route") {
    MlfParams p{0.7, 1.0, 1e-13, 400};
    const cplx z = minus_it_pow(0.7, 1.3) * 1.7;
    CHECK(std::abs(mlf_series(p, std::conj(z)) - std::conj(mlf_series(p, z))) < 1e-12);
    CHECK(std::abs(mlf_integral_ray(p, std::conj(z)) - std::conj(mlf_integral_ray(p, z))) < 1e-10);
    const cplx zneg(-2.0, 0.0);
    CHECK(std::abs(mlf_integral_outside_sector(p, std::conj(zneg)) -
                   std::conj(mlf_integral_outside_sector(p, zneg))) < 1e-12);
}

TEST_CASE("Laplace identity residuals") {
    CHECK(laplace_identity_residual(0.7, 1.0, {-1.0, 0.0}, {2.0, 0.0}) <= 1e-5);
    CHECK(laplace_identity_residual(0.5, 0.5, {-2.0, 0.0}, {3.0, 0.0}) <= 1e-5);
    // a = 0 reduces to the plain Gamma-function Laplace pair.
    CHECK(laplace_identity_residual(0.6, 1.0, {0.0, 0.0}, {2.0, 0.0}) <= 1e-10);
    CHECK(laplace_identity_residual(0.6, 0.6, {0.0, 0.0}, {1.5, 0.0}) <= 1e-10);

    CHECK_THROWS_AS((void)laplace_identity_residual(0.7, 1.0, {-1.0, 0.0}, {-2.0, 0.0}),
                    DomainError);
    // Positive a outside the geometric region has no certified tail.
    CHECK_THROWS_AS((void)laplace_identity_residual(0.7, 1.0, {10.0, 0.0}, {1.0, 0.0}),
                    DomainError);
}

TEST_CASE("full Laplace residual grid stays below 1e-5") {
    for (double alpha : {0.5, 0.7})
        for (double a : {-1.0, -2.0})
            for (double s : {2.0, 3.0})
                CHECK(laplace_identity_residual(alpha, 1.0, {a, 0.0}, {s, 0.0}) <= 1e-5);
}

TEST_CASE("symbol table matches direct quadrature and series") {
    for (double alpha : {0.55, 0.75, 0.9}) {
        const auto table = SymbolTable::get(alpha);
        MlfParams p1{alpha, 1.0, 1e-13, 500};
        MlfParams pa{alpha, alpha, 1e-13, 500};
        for (double tau : {1e-6, 0.3, 1.0, 2.5, 17.0, 431.0, 9.2e4, 2.3e6, 5e7}) {
            const cplx z = minus_it_pow(alpha, 1.0) * std::pow(tau, alpha);
            const cplx direct1 = operator_symbol_e1(alpha, tau, 1e-12);
            const cplx directa = operator_symbol_ea(alpha, tau, 1e-12);
            CHECK(rel_diff(table->e1(tau), direct1) < 5e-8);
            CHECK(rel_diff(table->ea(tau), directa) < 5e-8);
            const SeriesEval probe = mlf_series_probe(p1, z);
            if (probe.converged && probe.certified_error() < 1e-9 * std::abs(probe.value))
                CHECK(rel_diff(table->e1(tau), probe.value) < 1e-7);
            const SeriesEval probea = mlf_series_probe(pa, z);
            if (probea.converged && probea.certified_error() < 1e-9 * std::abs(probea.value))
                CHECK(rel_diff(table->ea(tau), probea.value) < 1e-7);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MlfParams(0.5, 1.6, 1e-12, 100).validate(), DomainError); // beta >= 1+alpha
    CHECK_THROWS_AS(MlfParams(0.5, 1.0, 0.0, 100).validate(), DomainError);
    CHECK_THROWS_AS(MlfParams(0.5, 1.0, 1e-12, 5).validate(), DomainError);
    CHECK_THROWS_AS((void)make_ray_argument(-1.0, 1.0, 1.5, 0.5), DomainError);
}
