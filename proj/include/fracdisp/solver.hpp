#ifndef FRACDISP_SOLVER_HPP
#define FRACDISP_SOLVER_HPP

#include <string>
#include <vector>

#include "fracdisp/grid.hpp"
#include "fracdisp/params.hpp"
#include "fracdisp/trajectory.hpp"

namespace fracdisp::solver {

using spectral::Field;

enum class TimeGrid { Uniform, Graded };
enum class ConvergenceNorm { XKappa, YNu, SupL2 };

struct SolverConfig {
    double t_final = 1.0;
    std::size_t n_steps = 64;
    TimeGrid time_grid = TimeGrid::Uniform;
    double grading_exponent = 0.0; // 0 picks the default 2/alpha
    double picard_tol = 1e-10;
    int picard_max_iters = 40;
    bool dealias = true;
    bool nonlinearity = true;
    ConvergenceNorm norm = ConvergenceNorm::SupL2;

    void validate() const;
    std::vector<double> make_times(double alpha) const; // t_0 = 0 included
};

// Product-integration weights for the weakly singular memory integral:
// exact moments of (t_n - s)^{alpha-1} against the piecewise-linear hat
// functions of the time grid.  node_weights[n][k] multiplies the sample at
// t_k when integrating up to t_n.
struct MemoryKernelTable {
    double alpha = 0.0;
    std::vector<double> times;
    std::vector<std::vector<double>> node_weights;

    static MemoryKernelTable build(const std::vector<double>& times, double alpha);

    // |sum_k w[n][k] - t_n^alpha / alpha| / (t_n^alpha / alpha): the table
    // applied to the constant 1 must reproduce the exact fractional integral.
    double constant_reproduction_error(std::size_t n) const;
};

// Pointwise |w|^{p-2} w, optionally followed by the two-thirds truncation.
Field nonlinearity(const Field& f, double p, bool dealias = false);

// Mild solution of the linear equation: fields[n] = E1-propagator at times[n].
Trajectory linear_evolve(const Field& w0, const std::vector<double>& times,
                         const FracParams& params);

// i^{-alpha} int_0^{t_out} (t_out - s)^{alpha-1} E_{a,a}(...) g(w(s)) ds for a
// t_out on the trajectory's grid; g-samples are interpolated linearly per
// panel while the singular weight is integrated exactly.
Field duhamel_integral(const Trajectory& traj_so_far, double t_out,
                       const MemoryKernelTable& table);

struct IterationDiagnostics {
    std::vector<double> distances; // successive-iterate distances
    std::vector<double> ratios;    // distances[m] / distances[m-1]
    int iterations = 0;
    bool converged = false;
    double fixed_point_defect = 0.0; // ||Psi(w) - w|| after convergence
    std::string norm_name;
};

struct PicardResult {
    Trajectory trajectory;
    IterationDiagnostics diagnostics;
};

// Picard iteration w^m = linear + Duhamel(w^{m-1}).  The regime condition
// matching the chosen norm must hold unless force = true; throws
// NotContracting when the distances grow three iterations in a row.
PicardResult picard_solve(const Field& w0, const SolverConfig& config, const FracParams& params,
                          bool force = false);

// Normalized equation residual of a computed trajectory at interior grid
// times, with the Caputo derivative discretized by the L1 rule on the
// trajectory's own grid.  `nonlinear` switches the g(w) term on or off to
// match how the trajectory was produced.
double caputo_residual(const Trajectory& traj, bool nonlinear = true);

} // namespace fracdisp::solver

#endif
