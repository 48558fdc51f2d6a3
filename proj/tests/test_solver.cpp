#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>

#include "fracdisp/errors.hpp"
#include "fracdisp/mlf.hpp"
#include "fracdisp/mlf_symbols.hpp"
#include "fracdisp/norms.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/solver.hpp"
#include "fracdisp/special.hpp"
#include "fracdisp/spectral.hpp"

using namespace fracdisp;
using namespace fracdisp::solver;
using spectral::cplx;
using spectral::Field;
using spectral::Grid;
using spectral::Space;

namespace {

std::shared_ptr<const Grid> grid1d(std::size_t n, double L) {
    return std::make_shared<Grid>(1, n, L);
}

Field gaussian(std::shared_ptr<const Grid> g, double sigma, double amp) {
    Field f = Field::zeros(g, Space::Physical);
    for (std::size_t m = 0; m < f.values.size(); ++m) {
        const double x = g->coord(m);
        f.values[m] = amp * std::exp(-0.5 * x * x / (sigma * sigma));
    }
    return f;
}

double rel_l2(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / (den + 1e-300));
}

const FracParams kGlobalParams{0.9, 2.5, 1, 7.0}; // p0 = 7, kappa = 9/70

} // namespace

TEST_CASE("memory table reproduces the fractional integral of 1 exactly") {
    for (auto kind : {TimeGrid::Uniform, TimeGrid::Graded}) {
        SolverConfig cfg;
        cfg.t_final = 2.0;
        cfg.n_steps = 48;
        cfg.time_grid = kind;
        const auto times = cfg.make_times(0.7);
        const auto table = MemoryKernelTable::build(times, 0.7);
        for (std::size_t n = 1; n < times.size(); ++n)
            CHECK(table.constant_reproduction_error(n) <= 1e-10);
    }
}

TEST_CASE("nonlinearity: zero, real constant, unimodular wave") {
    auto g = grid1d(64, 10.0);
    Field zero = Field::zeros(g, Space::Physical);
    CHECK(norms::lp_norm(nonlinearity(zero, 4.0), 2.0) == 0.0);

    Field c = Field::zeros(g, Space::Physical);
    for (auto& v : c.values) v = 1.7;
    const Field c3 = nonlinearity(c, 4.0);
    for (const auto& v : c3.values) CHECK(std::abs(v - cplx(1.7 * 1.7 * 1.7, 0.0)) < 1e-13);

    Field pw = Field::zeros(g, Space::Physical);
    for (std::size_t m = 0; m < pw.values.size(); ++m)
        pw.values[m] = std::polar(1.0, 3.0 * M_PI / 10.0 * g->coord(m));
    const Field pw3 = nonlinearity(pw, 4.0);
    CHECK(rel_l2(pw3, pw) < 1e-13);
}

TEST_CASE("linear evolution: initial snapshot and single-mode scaling") {
    FracParams params{0.75, 1.5, 1, 4.0};
    auto g = grid1d(256, 20.0);
    const Field w0 = gaussian(g, 1.0, 1.0);
    SolverConfig cfg;
    cfg.t_final = 2.0;
    cfg.n_steps = 16;
    const auto traj = linear_evolve(w0, cfg.make_times(params.alpha), params);
    CHECK(rel_l2(traj.fields.front(), w0) < 1e-13);

    // single mode: each snapshot scaled by E_{a,1}((-it)^a |k|^b)
    Field pw = Field::zeros(g, Space::Physical);
    const double k = g->freq(9);
    for (std::size_t m = 0; m < pw.values.size(); ++m)
        pw.values[m] = std::polar(1.0, k * g->coord(m));
    const auto traj_pw = linear_evolve(pw, cfg.make_times(params.alpha), params);
    mlf::MlfParams mp{params.alpha, 1.0, 1e-13, 400};
    for (std::size_t n = 0; n < traj_pw.times.size(); ++n) {
        const cplx z = minus_it_pow(params.alpha, traj_pw.times[n]) * std::pow(k, params.beta);
        Field expected = pw;
        const cplx scale = mlf_series(mp, z);
        for (auto& v : expected.values) v *= scale;
        CHECK(rel_l2(traj_pw.fields[n], expected) < 1e-7);
    }
}

TEST_CASE("duhamel: zero forcing gives the zero field") {
    FracParams params = kGlobalParams;
    auto g = grid1d(128, 15.0);
    Trajectory traj;
    traj.params = params;
    SolverConfig cfg;
    cfg.t_final = 1.0;
    cfg.n_steps = 16;
    traj.times = cfg.make_times(params.alpha);
    traj.fields.assign(traj.times.size(), Field::zeros(g, Space::Physical));
    const auto table = MemoryKernelTable::build(traj.times, params.alpha);
    const Field out = duhamel_integral(traj, traj.times.back(), table);
    CHECK(norms::lp_norm(out, 2.0) == 0.0);
}

TEST_CASE("duhamel: constant-in-time forcing has the closed form at xi = 0") {
    // w(s) = c constant: the integral collapses to
    // i^{-a} |c|^{p-2} c t^a / Gamma(a+1) at every grid point.
    FracParams params{0.8, 2.5, 1, 4.0};
    auto g = grid1d(64, 10.0);
    Trajectory traj;
    traj.params = params;
    SolverConfig cfg;
    cfg.t_final = 1.5;
    cfg.n_steps = 64;
    traj.times = cfg.make_times(params.alpha);
    const double c = 0.6;
    Field cf = Field::zeros(g, Space::Physical);
    for (auto& v : cf.values) v = c;
    traj.fields.assign(traj.times.size(), cf);
    const auto table = MemoryKernelTable::build(traj.times, params.alpha);
    const double t = traj.times.back();
    const Field out = duhamel_integral(traj, t, table);
    const cplx expected = minus_i_pow(params.alpha) * std::pow(c, 3.0) *
                          std::pow(t, params.alpha) * gamma_reciprocal(params.alpha + 1.0);
    for (const auto& v : out.values) CHECK(std::abs(v - expected) < 1e-9);
}

TEST_CASE("duhamel: smooth single-mode forcing matches an adaptive-quadrature oracle") {
    FracParams params{0.9, 2.5, 1, 4.0};
    const double alpha = params.alpha;
    auto g = grid1d(64, 10.0);
    const double k = g->freq(5);
    const double kdelta = std::pow(k, params.delta());

    SolverConfig cfg;
    cfg.t_final = 1.0;
    cfg.n_steps = 1024;
    Trajectory traj;
    traj.params = params;
    traj.times = cfg.make_times(alpha);
    // w(s, x) = A(s) e^{ikx} with smooth real A
    auto amplitude = [](double s) { return 0.4 * std::exp(-s) * (1.0 + 0.5 * s); };
    for (double s : traj.times) {
        Field f = Field::zeros(g, Space::Physical);
        for (std::size_t m = 0; m < f.values.size(); ++m)
            f.values[m] = amplitude(s) * std::polar(1.0, k * g->coord(m));
        traj.fields.push_back(f);
    }
    const auto table = MemoryKernelTable::build(traj.times, alpha);
    const double t = traj.times.back();
    const Field out = duhamel_integral(traj, t, table);

    // oracle: scalar integral in the u = (t-s)^alpha variable (the weight is
    // absorbed exactly, the rest is smooth)
    const auto symtab = mlf::SymbolTable::get(alpha);
    auto forcing = [&](double s) { return std::pow(amplitude(s), 3.0); };
    const auto oracle = quad::adaptive_gk(
        [&](double u) {
            const double lag = std::pow(u, 1.0 / alpha);
            return symtab->ea(lag * kdelta) * forcing(t - lag) / alpha;
        },
        0.0, std::pow(t, alpha), 1e-12, 1e-11);
    const cplx expected_mode = minus_i_pow(alpha) * oracle.value;

    // compare on the carrier mode in physical space
    Field expected = Field::zeros(g, Space::Physical);
    for (std::size_t m = 0; m < expected.values.size(); ++m)
        expected.values[m] = expected_mode * std::polar(1.0, k * g->coord(m));
    CHECK(rel_l2(out, expected) < 1e-6);
}

TEST_CASE("duhamel: panel halving converges at the product-rule order") {
    FracParams params{0.9, 2.5, 1, 4.0};
    const double alpha = params.alpha;
    auto g = grid1d(16, 10.0);
    const double k = g->freq(3);
    const double kdelta = std::pow(k, params.delta());
    auto amplitude = [](double s) { return 0.5 * std::cos(1.3 * s) + 0.7; };

    const auto symtab = mlf::SymbolTable::get(alpha);
    const double t = 1.0;
    const auto oracle = quad::adaptive_gk(
        [&](double u) {
            const double lag = std::pow(u, 1.0 / alpha);
            return symtab->ea(lag * kdelta) * std::pow(amplitude(t - lag), 3.0) / alpha;
        },
        0.0, 1.0, 1e-13, 1e-12);

    std::vector<double> errors;
    for (std::size_t steps : {64u, 128u, 256u, 512u}) {
        SolverConfig cfg;
        cfg.t_final = t;
        cfg.n_steps = steps;
        Trajectory traj;
        traj.params = params;
        traj.times = cfg.make_times(alpha);
        for (double s : traj.times) {
            Field f = Field::zeros(g, Space::Physical);
            for (std::size_t m = 0; m < f.values.size(); ++m)
                f.values[m] = amplitude(s) * std::polar(1.0, k * g->coord(m));
            traj.fields.push_back(f);
        }
        const auto table = MemoryKernelTable::build(traj.times, alpha);
        const Field out = duhamel_integral(traj, t, table);
        const cplx got = out.values[0] / std::polar(1.0, k * g->coord(0));
        errors.push_back(std::abs(got - minus_i_pow(alpha) * oracle.value));
    }
    // observed order: h^2 away from the memory-kernel corner, h^{2 alpha}
    // in it; demand at least 1.5 per halving for alpha = 0.9
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        CHECK(order >= 1.5);
    }
}

TEST_CASE("picard: zero datum fixed immediately; linear flag reproduces linear_evolve") {
    auto g = grid1d(128, 15.0);
    SolverConfig cfg;
    cfg.t_final = 1.0;
    cfg.n_steps = 16;
    cfg.norm = ConvergenceNorm::SupL2;

    const Field zero = Field::zeros(g, Space::Physical);
    const auto run0 = picard_solve(zero, cfg, kGlobalParams);
    CHECK(run0.diagnostics.converged);
    CHECK(run0.diagnostics.iterations == 1);
    CHECK(norms::lp_norm(run0.trajectory.fields.back(), 2.0) == 0.0);

    SolverConfig cfg_lin = cfg;
    cfg_lin.nonlinearity = false;
    const Field w0 = gaussian(g, 1.0, 0.5);
    const auto run_lin = picard_solve(w0, cfg_lin, kGlobalParams);
    CHECK(run_lin.diagnostics.iterations == 1);
    const auto ref = linear_evolve(w0, run_lin.trajectory.times, kGlobalParams);
    for (std::size_t n = 0; n < ref.times.size(); ++n)
        CHECK(rel_l2(run_lin.trajectory.fields[n], ref.fields[n]) < 1e-12);
}

TEST_CASE("picard: small-data global run contracts below one half") {
    auto g = grid1d(256, 30.0);
    const Field w0 = gaussian(g, 1.2, 1e-2);
    SolverConfig cfg;
    cfg.t_final = 2.0;
    cfg.n_steps = 32;
    cfg.picard_tol = 1e-12;
    cfg.norm = ConvergenceNorm::XKappa;
    const auto run = picard_solve(w0, cfg, kGlobalParams);
    CHECK(run.diagnostics.converged);
    CHECK(run.diagnostics.fixed_point_defect <= 2.0 * cfg.picard_tol);
    const auto& ratios = run.diagnostics.ratios;
    REQUIRE(ratios.size() >= 1);
    std::size_t checked = 0;
    for (std::size_t i = ratios.size() >= 3 ? ratios.size() - 3 : 0; i < ratios.size(); ++i) {
        CHECK(ratios[i] <= 0.5);
        ++checked;
    }
    CHECK(checked >= 1);
}

TEST_CASE("picard: regime gate and force override") {
    auto g = grid1d(64, 10.0);
    const Field w0 = gaussian(g, 1.0, 1e-3);
    FracParams bad{0.8, 2.5, 1, 4.0}; // (delta-beta)/d > delta/2 - 1
    SolverConfig cfg;
    cfg.t_final = 0.5;
    cfg.n_steps = 8;
    cfg.norm = ConvergenceNorm::XKappa;
    CHECK_THROWS_AS((void)picard_solve(w0, cfg, bad), DomainError);
    const auto run = picard_solve(w0, cfg, bad, true);
    CHECK(run.diagnostics.converged);
}

TEST_CASE("picard: blow-up scale data reports NotContracting") {
    auto g = grid1d(128, 10.0);
    const Field w0 = gaussian(g, 1.0, 40.0);
    SolverConfig cfg;
    cfg.t_final = 2.0;
    cfg.n_steps = 16;
    cfg.picard_max_iters = 30;
    cfg.norm = ConvergenceNorm::SupL2;
    CHECK_THROWS_AS((void)picard_solve(w0, cfg, kGlobalParams, true), NotContracting);
}

TEST_CASE("regime checkers: exact arithmetic from the derived formulas") {
    {
        const auto r = check_global_conditions(kGlobalParams);
        CHECK(r.pass);
        CHECK(r.constants.at("p0") == doctest::Approx(7.0).epsilon(1e-13));
        CHECK(r.constants.at("kappa") == doctest::Approx(9.0 / 70.0).epsilon(1e-13));
        CHECK(r.conditions[2].value == doctest::Approx(27.0 / 35.0).epsilon(1e-13));
        CHECK(r.constants.count("B_kappa") == 1);
        CHECK(r.constants.at("B_kappa") ==
              doctest::Approx(fracdisp::beta_function(0.9 - 9.0 / 35.0, 8.0 / 35.0)));
    }
    {
        FracParams p{0.8, 2.5, 1, 4.0};
        const auto r = check_global_conditions(p);
        CHECK_FALSE(r.pass); // (delta-beta)/d = 0.625 > delta/2 - 1 = 0.5625
    }
    {
        FracParams p{0.9, 2.0, 1, 4.0};
        CHECK_THROWS_AS((void)check_global_conditions(p), DegenerateParams);
    }
    {
        // three-dimensional local regime family
        FracParams p{0.5, 5.0, 3, 4.0};
        const auto r = check_local_conditions(p);
        CHECK(r.pass);
        CHECK(r.constants.at("p0") == doctest::Approx(24.0 / 7.0).epsilon(1e-13));
        CHECK(r.constants.at("nu") == doctest::Approx(0.125).epsilon(1e-13));
    }
    {
        const auto r = check_local_conditions(kGlobalParams);
        CHECK_FALSE(r.pass); // nu (p0-1) = 54/35 > alpha
        CHECK(r.constants.at("nu") == doctest::Approx(9.0 / 35.0).epsilon(1e-13));
    }
}

TEST_CASE("low-order regime checker hits the exact constants") {
    FracParams p{0.9, 1.25, 1, 4.0};
    const auto r = check_beta_lt2_conditions(p, 0.3, 0.5);
    CHECK(r.pass);
    CHECK(r.constants.at("varsigma") == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(r.constants.at("gamma") == doctest::Approx(7.0 / 36.0).epsilon(1e-12));
    CHECK(r.constants.at("nu_smooth") == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
    CHECK(r.constants.at("sigma") == doctest::Approx(0.3 + 57.0 / 72.0 - 0.625).epsilon(1e-12));
    CHECK(r.constants.at("theta_lo") == doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(r.constants.at("theta_hi") == doctest::Approx(0.5625).epsilon(1e-12));

    FracParams too_big{0.8, 1.5, 1, 4.0}; // delta = 1.875 >= 3/2
    CHECK_FALSE(check_beta_lt2_conditions(too_big, 0.3, 0.5).pass);

    FracParams odd_p{0.9, 1.25, 1, 3.0};
    CHECK_FALSE(check_beta_lt2_conditions(odd_p, 0.3, 0.5).pass);
}

TEST_CASE("caputo residual: zero trajectory and linear self-convergence") {
    FracParams params{0.9, 2.5, 1, 7.0};
    auto g = grid1d(64, 10.0);

    {
        Trajectory traj;
        traj.params = params;
        SolverConfig cfg;
        cfg.t_final = 1.0;
        cfg.n_steps = 48;
        traj.times = cfg.make_times(params.alpha);
        traj.fields.assign(traj.times.size(), Field::zeros(g, Space::Physical));
        CHECK(caputo_residual(traj) == 0.0);
    }

    // linear single-mode trajectory: L1 residual falls under step doubling
    Field pw = Field::zeros(g, Space::Physical);
    const double k = g->freq(4);
    for (std::size_t m = 0; m < pw.values.size(); ++m)
        pw.values[m] = 0.3 * std::polar(1.0, k * g->coord(m));
    std::vector<double> resid;
    for (std::size_t steps : {64u, 128u, 256u}) {
        SolverConfig cfg;
        cfg.t_final = 1.0;
        cfg.n_steps = steps;
        cfg.time_grid = TimeGrid::Graded;
        const auto traj = linear_evolve(pw, cfg.make_times(params.alpha), params);
        resid.push_back(caputo_residual(traj, false));
    }
    CHECK(resid[1] < resid[0]);
    CHECK(resid[2] < resid[1]);
    // graded-mesh L1 order ~ 2 - alpha; demand a meaningful fraction of it
    CHECK(std::log2(resid[0] / resid[2]) / 2.0 >= 0.7);
}

TEST_CASE("caputo residual decreases under refinement for a nonlinear run") {
    auto g = grid1d(128, 20.0);
    const Field w0 = gaussian(g, 1.2, 5e-2);
    std::vector<double> resid;
    for (std::size_t steps : {48u, 96u, 192u}) {
        SolverConfig cfg;
        cfg.t_final = 1.0;
        cfg.n_steps = steps;
        cfg.time_grid = TimeGrid::Graded;
        cfg.picard_tol = 1e-11;
        cfg.norm = ConvergenceNorm::XKappa;
        const auto run = picard_solve(w0, cfg, kGlobalParams);
        resid.push_back(caputo_residual(run.trajectory));
    }
    CHECK(resid[1] < resid[0]);
    CHECK(resid[2] < resid[1]);
}

TEST_CASE("time-grid refinement moves the final field by a vanishing amount") {
    auto g = grid1d(128, 20.0);
    const Field w0 = gaussian(g, 1.2, 5e-2);
    std::vector<Field> finals;
    for (std::size_t steps : {32u, 64u, 128u}) {
        SolverConfig cfg;
        cfg.t_final = 1.0;
        cfg.n_steps = steps;
        cfg.picard_tol = 1e-11;
        cfg.norm = ConvergenceNorm::XKappa;
        finals.push_back(picard_solve(w0, cfg, kGlobalParams).trajectory.fields.back());
    }
    const double d1 = rel_l2(finals[0], finals[2]);
    const double d2 = rel_l2(finals[1], finals[2]);
    CHECK(d2 < d1);
}
