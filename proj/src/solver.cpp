#include "fracdisp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "fracdisp/errors.hpp"
#include "fracdisp/mlf_symbols.hpp"
#include "fracdisp/norms.hpp"
#include "fracdisp/special.hpp"
#include "fracdisp/spectral.hpp"
#include "fracdisp/threading.hpp"

namespace fracdisp::solver {

using spectral::cplx;
using spectral::Direction;
using spectral::Space;

void Trajectory::validate() const {
    if (times.size() != fields.size()) throw DomainError("trajectory length mismatch");
    if (times.empty()) throw DomainError("empty trajectory");
    if (times.front() != 0.0) throw DomainError("trajectory must start at t = 0");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw DomainError("trajectory times must increase");
}

void SolverConfig::validate() const {
    if (!(t_final > 0.0)) throw DomainError("t_final must be positive");
    if (n_steps < 8) throw DomainError("n_steps must be at least 8");
    if (!(picard_tol > 0.0)) throw DomainError("picard_tol must be positive");
    if (picard_max_iters < 1) throw DomainError("picard_max_iters must be positive");
}

std::vector<double> SolverConfig::make_times(double alpha) const {
    validate();
    std::vector<double> t(n_steps + 1);
    if (time_grid == TimeGrid::Uniform) {
        for (std::size_t i = 0; i <= n_steps; ++i)
            t[i] = t_final * static_cast<double>(i) / static_cast<double>(n_steps);
    } else {
        // graded mesh t_i = T (i/N)^r resolving the t^{alpha-1} startup layer
        const double r = (grading_exponent > 0.0) ? grading_exponent : 2.0 / alpha;
        for (std::size_t i = 0; i <= n_steps; ++i)
            t[i] = t_final * std::pow(static_cast<double>(i) / static_cast<double>(n_steps), r);
    }
    t[0] = 0.0;
    t[n_steps] = t_final;
    return t;
}

MemoryKernelTable MemoryKernelTable::build(const std::vector<double>& times, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    MemoryKernelTable table;
    table.alpha = alpha;
    table.times = times;
    table.node_weights.resize(times.size());
    for (std::size_t n = 1; n < times.size(); ++n) {
        auto& w = table.node_weights[n];
        w.assign(n + 1, 0.0);
        const double tn = times[n];
        for (std::size_t k = 0; k < n; ++k) {
            const double A = tn - times[k];
            const double B = tn - times[k + 1];
            const double dt = times[k + 1] - times[k];
            const double i0 = (std::pow(A, alpha) - std::pow(B, alpha)) / alpha;
            const double i1 =
                (A * i0 - (std::pow(A, alpha + 1.0) - std::pow(B, alpha + 1.0)) / (alpha + 1.0)) /
                dt;
            w[k] += i0 - i1;
            w[k + 1] += i1;
        }
    }
    return table;
}

double MemoryKernelTable::constant_reproduction_error(std::size_t n) const {
    if (n == 0 || n >= node_weights.size()) throw DomainError("bad table index");
    double sum = 0.0;
    for (double w : node_weights[n]) sum += w;
    const double exact = std::pow(times[n], alpha) / alpha;
    return std::abs(sum - exact) / exact;
}

Field nonlinearity(const Field& f, double p, bool dealias) {
    if (!(p >= 3.0)) throw DomainError("nonlinearity power must be >= 3");
    if (f.space != Space::Physical) throw DomainError("nonlinearity acts in physical space");
    Field g = f;
    const double q = 0.5 * (p - 2.0); // |w|^{p-2} = (|w|^2)^{(p-2)/2}
    for (auto& v : g.values) v *= std::pow(std::norm(v), q);
    if (dealias) g = spectral::dealias_two_thirds(g);
    return g;
}

Trajectory linear_evolve(const Field& w0, const std::vector<double>& times,
                         const FracParams& params) {
    params.validate();
    Trajectory traj;
    traj.params = params;
    traj.times = times;
    traj.fields.reserve(times.size());
    const Field w0_hat = spectral::to_frequency(w0);
    const auto symtab = mlf::SymbolTable::get(params.alpha);
    const spectral::Grid& g = *w0_hat.grid;
    const double delta = params.delta();
    for (double t : times) {
        Field snap = w0_hat;
        if (t > 0.0) {
            parallel_for(snap.values.size(), [&](std::size_t j) {
                snap.values[j] *= symtab->e1(t * std::pow(g.freq_mag(j), delta));
            });
        }
        traj.fields.push_back(spectral::transform(snap, Direction::Inverse));
    }
    traj.validate();
    return traj;
}

namespace {

// Shared machinery of the standalone Duhamel integral and the Picard loop.
// Everything acts on frequency-space snapshot rows.
struct DuhamelWorkspace {
    const spectral::Grid* grid = nullptr;
    std::vector<double> times;
    MemoryKernelTable table;
    std::vector<double> kdelta;              // |xi_j|^delta
    std::vector<std::vector<cplx>> eaa_lag;  // uniform grid: symbol per lag
    bool uniform = false;
    std::shared_ptr<const mlf::SymbolTable> symtab;
    cplx i_minus_alpha;

    void build(const spectral::Grid& g, const std::vector<double>& ts, const FracParams& params) {
        grid = &g;
        times = ts;
        table = MemoryKernelTable::build(ts, params.alpha);
        symtab = mlf::SymbolTable::get(params.alpha);
        i_minus_alpha = minus_i_pow(params.alpha);
        const double delta = params.delta();
        kdelta.resize(g.size());
        parallel_for(g.size(), [&](std::size_t j) {
            kdelta[j] = std::pow(g.freq_mag(j), delta);
        });

        uniform = true;
        const double dt = ts[1] - ts[0];
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
            if (std::abs((ts[i + 1] - ts[i]) - dt) > 1e-12 * ts.back()) uniform = false;
        if (uniform) {
            eaa_lag.assign(ts.size(), {});
            parallel_for(ts.size(), [&](std::size_t m) {
                auto& row = eaa_lag[m];
                row.resize(kdelta.size());
                const double lag = times[m] - times[0];
                for (std::size_t j = 0; j < kdelta.size(); ++j)
                    row[j] = symtab->ea(lag * kdelta[j]);
            });
        }
    }

    // accumulate the memory integral for output index n from g-hat rows
    void accumulate(std::size_t n, const std::vector<std::vector<cplx>>& ghat,
                    std::vector<cplx>& out) const {
        const std::size_t modes = kdelta.size();
        std::fill(out.begin(), out.end(), cplx{});
        const auto& w = table.node_weights[n];
        std::vector<cplx> row;
        for (std::size_t k = 0; k <= n; ++k) {
            const cplx* eaa;
            if (uniform) {
                eaa = eaa_lag[n - k].data();
            } else {
                row.resize(modes);
                const double lag = times[n] - times[k];
                for (std::size_t j = 0; j < modes; ++j) row[j] = symtab->ea(lag * kdelta[j]);
                eaa = row.data();
            }
            const double wk = w[k];
            const cplx* gk = ghat[k].data();
            for (std::size_t j = 0; j < modes; ++j) out[j] += wk * eaa[j] * gk[j];
        }
        for (std::size_t j = 0; j < modes; ++j) out[j] *= i_minus_alpha;
    }
};

std::size_t time_index(const std::vector<double>& times, double t) {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, times.back())) return i;
    throw DomainError("t_out is not on the trajectory time grid");
}

double trajectory_distance(const std::vector<std::vector<cplx>>& a,
                           const std::vector<std::vector<cplx>>& b, const Trajectory& shape,
                           ConvergenceNorm norm, const FracParams& params) {
    // distances are computed on frequency rows; convert per snapshot
    double dist = 0.0;
    const double p0 = (norm == ConvergenceNorm::XKappa || norm == ConvergenceNorm::YNu)
                          ? params.p0()
                          : 2.0;
    const double weight_exp = (norm == ConvergenceNorm::XKappa) ? params.kappa_at(p0)
                              : (norm == ConvergenceNorm::YNu) ? params.nu_at(p0)
                                                               : 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double t = shape.times[n];
        if (weight_exp != 0.0 && t <= 0.0) continue;
        Field diff = shape.fields[n]; // borrow grid/layout
        diff.space = Space::Frequency;
        for (std::size_t j = 0; j < diff.values.size(); ++j)
            diff.values[j] = a[n][j] - b[n][j];
        const double v = norms::lp_norm(spectral::transform(diff, Direction::Inverse), p0);
        dist = std::max(dist, ((weight_exp != 0.0) ? std::pow(t, weight_exp) : 1.0) * v);
    }
    return dist;
}

} // namespace

Field duhamel_integral(const Trajectory& traj_so_far, double t_out,
                       const MemoryKernelTable& table) {
    traj_so_far.validate();
    const std::size_t n = time_index(traj_so_far.times, t_out);
    if (n >= traj_so_far.fields.size()) throw DomainError("trajectory does not cover t_out");
    if (table.times != traj_so_far.times) throw DomainError("table built for a different grid");
    const FracParams& params = traj_so_far.params;

    DuhamelWorkspace ws;
    ws.build(*traj_so_far.fields.front().grid, traj_so_far.times, params);

    std::vector<std::vector<cplx>> ghat(n + 1);
    parallel_for(n + 1, [&](std::size_t k) {
        ghat[k] = spectral::to_frequency(nonlinearity(traj_so_far.fields[k], params.nonlin_p))
                      .values;
    });

    Field out = Field::zeros(traj_so_far.fields.front().grid, Space::Frequency);
    if (n > 0) ws.accumulate(n, ghat, out.values);
    return spectral::transform(out, Direction::Inverse);
}

PicardResult picard_solve(const Field& w0, const SolverConfig& config, const FracParams& params,
                          bool force) {
    params.validate();
    config.validate();
    if (!force) {
        bool regime_ok = true;
        if (config.norm == ConvergenceNorm::XKappa) regime_ok = check_global_conditions(params).pass;
        else if (config.norm == ConvergenceNorm::YNu) regime_ok = check_local_conditions(params).pass;
        if (!regime_ok)
            throw DomainError("regime conditions for the chosen norm fail; pass force to override");
    }

    const std::vector<double> times = config.make_times(params.alpha);
    const std::size_t nt = times.size();
    const Field w0_hat = spectral::to_frequency(w0);
    const spectral::Grid& grid = *w0_hat.grid;
    const auto symtab = mlf::SymbolTable::get(params.alpha);
    const double delta = params.delta();

    DuhamelWorkspace ws;
    ws.build(grid, times, params);

    // linear term rows
    std::vector<std::vector<cplx>> linear(nt);
    parallel_for(nt, [&](std::size_t n) {
        linear[n] = w0_hat.values;
        if (times[n] > 0.0)
            for (std::size_t j = 0; j < linear[n].size(); ++j)
                linear[n][j] *= symtab->e1(times[n] * ws.kdelta[j]);
    });

    Trajectory shape; // carries grid layout and params for norms
    shape.params = params;
    shape.times = times;
    shape.fields.assign(nt, Field::zeros(w0_hat.grid, Space::Physical));

    std::vector<std::vector<cplx>> w_rows = linear; // first iterate: linear evolution
    IterationDiagnostics diag;
    diag.norm_name = (config.norm == ConvergenceNorm::XKappa)  ? "X_kappa"
                     : (config.norm == ConvergenceNorm::YNu) ? "Y_nu"
                                                             : "sup_L2";

    auto apply_map = [&](const std::vector<std::vector<cplx>>& rows) {
        std::vector<std::vector<cplx>> next(nt);
        next[0] = w0_hat.values;
        if (!config.nonlinearity) {
            for (std::size_t n = 1; n < nt; ++n) next[n] = linear[n];
            return next;
        }
        std::vector<std::vector<cplx>> ghat(nt);
        parallel_for(nt, [&](std::size_t n) {
            Field snap = Field::zeros(w0_hat.grid, Space::Frequency);
            snap.values = rows[n];
            Field g = nonlinearity(spectral::transform(snap, Direction::Inverse), params.nonlin_p,
                                   config.dealias);
            ghat[n] = spectral::transform(g, Direction::Forward).values;
        });
        parallel_for(nt - 1, [&](std::size_t m) {
            const std::size_t n = m + 1;
            next[n].assign(grid.size(), cplx{});
            ws.accumulate(n, ghat, next[n]);
            for (std::size_t j = 0; j < next[n].size(); ++j) next[n][j] += linear[n][j];
        });
        return next;
    };

    int grow_streak = 0;
    for (int iter = 1; iter <= config.picard_max_iters; ++iter) {
        auto next = apply_map(w_rows);
        const double dist = trajectory_distance(next, w_rows, shape, config.norm, params);
        if (!std::isfinite(dist))
            throw NotContracting("Picard iterate left the floating-point range");
        diag.distances.push_back(dist);
        if (diag.distances.size() >= 2) {
            const double prev = diag.distances[diag.distances.size() - 2];
            diag.ratios.push_back(prev > 0.0 ? dist / prev : 0.0);
            grow_streak = (dist > prev) ? grow_streak + 1 : 0;
        }
        w_rows = std::move(next);
        diag.iterations = iter;
        if (dist <= config.picard_tol) {
            diag.converged = true;
            break;
        }
        if (grow_streak >= 3)
            throw NotContracting("successive Picard iterates diverged for three iterations");
    }

    if (diag.converged) {
        const auto once_more = apply_map(w_rows);
        diag.fixed_point_defect =
            trajectory_distance(once_more, w_rows, shape, config.norm, params);
    }

    PicardResult result;
    result.trajectory.params = params;
    result.trajectory.times = times;
    result.trajectory.fields.reserve(nt);
    for (std::size_t n = 0; n < nt; ++n) {
        Field snap = Field::zeros(w0_hat.grid, Space::Frequency);
        snap.values = std::move(w_rows[n]);
        result.trajectory.fields.push_back(spectral::transform(snap, Direction::Inverse));
    }
    result.trajectory.validate();
    result.diagnostics = std::move(diag);
    return result;
}

double caputo_residual(const Trajectory& traj, bool nonlinear) {
    traj.validate();
    if (traj.steps() < 32) throw DomainError("residual check needs at least 32 steps");
    const FracParams& params = traj.params;
    const double alpha = params.alpha;
    const cplx ia = i_pow(alpha);
    const double inv_gamma2ma = gamma_reciprocal(2.0 - alpha);

    const std::size_t nt = traj.times.size();
    const std::size_t modes = traj.fields.front().values.size();

    // frequency rows once
    std::vector<std::vector<cplx>> what(nt);
    parallel_for(nt, [&](std::size_t n) {
        what[n] = spectral::to_frequency(traj.fields[n]).values;
    });

    const spectral::Grid& grid = *traj.fields.front().grid;
    std::vector<double> kbeta(modes);
    for (std::size_t j = 0; j < modes; ++j) kbeta[j] = std::pow(grid.freq_mag(j), params.beta);

    double max_resid = 0.0, max_scale = 0.0;
    std::vector<double> resid_n(nt, 0.0), scale_n(nt, 0.0);
    parallel_for(nt - 2, [&](std::size_t m) {
        const std::size_t n = m + 1; // interior times only
        // L1 Caputo derivative in frequency space
        std::vector<cplx> dalpha(modes, cplx{});
        for (std::size_t k = 0; k < n; ++k) {
            const double c = (std::pow(traj.times[n] - traj.times[k], 1.0 - alpha) -
                              std::pow(traj.times[n] - traj.times[k + 1], 1.0 - alpha)) *
                             inv_gamma2ma / (traj.times[k + 1] - traj.times[k]);
            const cplx* wk = what[k].data();
            const cplx* wk1 = what[k + 1].data();
            for (std::size_t j = 0; j < modes; ++j) dalpha[j] += c * (wk1[j] - wk[j]);
        }

        std::vector<cplx> ghat;
        if (nonlinear)
            ghat = spectral::to_frequency(nonlinearity(traj.fields[n], params.nonlin_p)).values;

        double r2 = 0.0, a2 = 0.0, b2 = 0.0, g2 = 0.0;
        for (std::size_t j = 0; j < modes; ++j) {
            const cplx term_a = ia * dalpha[j];
            const cplx term_b = kbeta[j] * what[n][j];
            const cplx term_g = nonlinear ? ghat[j] : cplx{};
            // residual of the mild form actually iterated: i^a d^a w - D^b w - g
            const cplx r = term_a - term_b - term_g;
            r2 += std::norm(r);
            a2 += std::norm(term_a);
            b2 += std::norm(term_b);
            g2 += std::norm(term_g);
        }
        resid_n[n] = std::sqrt(r2);
        scale_n[n] = std::sqrt(std::max({a2, b2, g2}));
    });
    for (std::size_t n = 1; n + 1 < nt; ++n) {
        max_resid = std::max(max_resid, resid_n[n]);
        max_scale = std::max(max_scale, scale_n[n]);
    }
    return (max_scale > 0.0) ? max_resid / max_scale : 0.0;
}

} // namespace fracdisp::solver
