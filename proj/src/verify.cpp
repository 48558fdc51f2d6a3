#include "fracdisp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracdisp/errors.hpp"
#include "fracdisp/mlf_symbols.hpp"
#include "fracdisp/norms.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/spectral.hpp"
#include "fracdisp/threading.hpp"

namespace fracdisp::verify {

using spectral::cplx;
using spectral::Direction;
using spectral::Grid;
using spectral::Space;

FitResult fit_power_law(const std::vector<std::pair<double, double>>& samples, double target,
                        double tolerance) {
    if (samples.size() < 4) throw DegenerateFit("power-law fit needs at least 4 samples");
    double t_min = 1e300, t_max = 0.0;
    for (const auto& [t, v] : samples) {
        if (!(t > 0.0)) throw DegenerateFit("fit abscissae must be positive");
        if (!(v > 0.0)) throw DegenerateFit("fit values must be positive");
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
    }
    if (t_max / t_min < 10.0) throw DegenerateFit("fit window must span at least one decade");

    const auto n = static_cast<double>(samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [t, v] : samples) {
        const double x = std::log(t), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    FitResult fit;
    fit.samples = samples;
    fit.target = target;
    fit.tolerance = tolerance;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / n;
    for (const auto& [t, v] : samples) {
        const double y = std::log(v);
        const double y_hat = fit.intercept + fit.slope * std::log(t);
        ss_res += (y - y_hat) * (y - y_hat);
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    fit.rel_error = (target != 0.0) ? std::abs(fit.slope - target) / std::abs(target)
                                    : std::abs(fit.slope);
    fit.pass = (fit.rel_error <= tolerance) && (fit.r_squared >= 0.98);
    return fit;
}

void VerifyReport::add_check(const std::string& name, double value, double threshold,
                             const std::string& relation) {
    CheckItem c;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.relation = relation;
    if (relation == "<=") c.pass = value <= threshold;
    else if (relation == "<") c.pass = value < threshold;
    else if (relation == ">=") c.pass = value >= threshold;
    else if (relation == ">") c.pass = value > threshold;
    else c.pass = false;
    checks.push_back(c);
}

void VerifyReport::add_fit(const std::string& name, const FitResult& fit) {
    fits.push_back(fit);
    add_check(name + " rel slope error", fit.rel_error, fit.tolerance);
    add_check(name + " r^2", fit.r_squared, 0.98, ">=");
}

void VerifyReport::finalize() {
    pass = true;
    for (const auto& c : checks) pass = pass && c.pass;
}

// ---------------------------------------------------------------------------
// Initial data.

Field gaussian_bump(std::shared_ptr<const Grid> grid, double sigma_x) {
    if (grid->dim() != 1) throw DomainError("gaussian bump builder is one-dimensional");
    Field f = Field::zeros(grid, Space::Physical);
    const double norm1 = sigma_x * std::sqrt(2.0 * M_PI); // L1 normalization
    for (std::size_t m = 0; m < f.values.size(); ++m) {
        const double x = grid->coord(m);
        f.values[m] = std::exp(-0.5 * x * x / (sigma_x * sigma_x)) / norm1;
    }
    return f;
}

Field near_critical_datum(std::shared_ptr<const Grid> grid, double a_exponent, double ir,
                          double uv) {
    Field fhat = Field::zeros(grid, Space::Frequency);
    for (std::size_t j = 0; j < fhat.values.size(); ++j) {
        const double k = grid->freq_mag(j);
        fhat.values[j] = std::pow(k * k + ir * ir, -0.5 * a_exponent) *
                         std::exp(-0.5 * k * k / (uv * uv));
    }
    return spectral::transform(fhat, Direction::Inverse);
}

Field positive_frequency_packet(std::shared_ptr<const Grid> grid, double xi_center,
                                double xi_width) {
    if (grid->dim() != 1) throw DomainError("positive-frequency packet is one-dimensional");
    Field fhat = Field::zeros(grid, Space::Frequency);
    for (std::size_t j = 0; j < fhat.values.size(); ++j) {
        const double k = grid->freq(j);
        if (k <= 0.0) continue; // hard support on xi > 0
        const double d = (k - xi_center) / xi_width;
        fhat.values[j] = std::exp(-0.5 * d * d);
    }
    return spectral::transform(fhat, Direction::Inverse);
}

// ---------------------------------------------------------------------------
// Shared decay-fit engine.

namespace {

std::size_t pow2_at_least(double x) {
    std::size_t n = 64;
    while (static_cast<double>(n) < x && n < (std::size_t{1} << 22)) n <<= 1;
    return n;
}

std::vector<double> default_t_list() {
    std::vector<double> t;
    for (double v = 1.0; v <= 64.0 * 1.0001; v *= std::sqrt(2.0)) t.push_back(v);
    return t;
}

struct SymbolFamily {
    // m(t, k): the time-indexed multiplier under test
    std::function<cplx(double, double)> m;
};

double boundary_amplitude_ratio(const Field& w) {
    const Grid& g = *w.grid;
    const std::size_t n = g.n_per_axis();
    const auto shell = static_cast<std::size_t>(0.02 * static_cast<double>(n));
    double peak = 0.0, edge = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double a = std::abs(w.values[m]);
        peak = std::max(peak, a);
        if (m <= shell || m + shell >= n) edge = std::max(edge, a);
    }
    return (peak > 0.0) ? edge / peak : 0.0;
}

// Evolve f-hat through m(t, |k|) for every t and record the L^p norms.
std::vector<std::pair<double, double>> norm_samples(const Field& f, const SymbolFamily& fam,
                                                    double p, const std::vector<double>& t_list,
                                                    bool check_boundary) {
    const Field fhat = spectral::to_frequency(f);
    const Grid& g = *fhat.grid;
    std::vector<std::pair<double, double>> samples(t_list.size());
    std::vector<double> kmag(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) kmag[j] = g.freq_mag(j);
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        const double t = t_list[i];
        Field snap = fhat;
        parallel_for(snap.values.size(),
                     [&](std::size_t j) { snap.values[j] *= fam.m(t, kmag[j]); });
        const Field w = spectral::transform(snap, Direction::Inverse);
        if (check_boundary && boundary_amplitude_ratio(w) > 1e-8)
            throw BoxTooSmall("dispersing field reaches the box boundary");
        samples[i] = {t, norms::lp_norm(w, p)};
    }
    return samples;
}

struct FitPlan {
    std::shared_ptr<const Grid> grid;
    Field datum;
    bool check_boundary = true;
    bool check_box_doubling = false;
};

// Localized bump setup for the sup-norm decay: box sized so the stationary
// frequency reaching the boundary at t_max carries < 1e-9 of the spectrum.
FitPlan plan_bump_fit(double delta, const DecayFitOptions& opt, double t_max) {
    const double sigma_x = 0.3;
    const double xi_b = 6.44 / sigma_x;
    double L = opt.half_width;
    if (L <= 0.0) L = delta * t_max * std::pow(xi_b, delta - 1.0) / 0.95;
    const double xi_need = 1.1 * xi_b;
    std::size_t n = opt.n_points;
    if (n == 0) n = pow2_at_least(2.0 * L * xi_need / M_PI);
    FitPlan plan;
    plan.grid = std::make_shared<Grid>(1, n, L);
    plan.datum = gaussian_bump(plan.grid, sigma_x);
    plan.check_boundary = opt.check_boundary;
    return plan;
}

// Near-critical setup for the interior-p decay fits; heavy spatial tails, so
// the certificate is slope stability under box doubling instead of a
// boundary amplitude gate.
FitPlan plan_critical_fit(double delta, double a_exponent, const DecayFitOptions& opt,
                          double t_max, bool doubled = false) {
    const double ir = 0.05, uv = 1.0;
    double L = opt.half_width;
    if (L <= 0.0) L = std::max(30.0 / ir, 15.0 * M_PI * std::pow(t_max, 1.0 / delta));
    if (doubled) L *= 2.0;
    std::size_t n = opt.n_points;
    if (n == 0) n = pow2_at_least(2.0 * L * 8.0 * uv / M_PI);
    else if (doubled) n *= 2;
    FitPlan plan;
    plan.grid = std::make_shared<Grid>(1, n, L);
    plan.datum = near_critical_datum(plan.grid, a_exponent, ir, uv);
    plan.check_boundary = false;
    plan.check_box_doubling = true;
    return plan;
}

} // namespace

FitResult verify_dispersive_group(const FracParams& params, double p, DecayFitOptions opt) {
    params.validate();
    if (!(p >= 2.0)) throw DomainError("decay fit requires 2 <= p <= inf");
    const double delta = params.delta();
    if (opt.t_list.empty()) opt.t_list = default_t_list();
    const double t_max = *std::max_element(opt.t_list.begin(), opt.t_list.end());
    const double d = params.dim;
    const double target = -(params.alpha * d / params.beta) * (1.0 - 2.0 / p);

    SymbolFamily fam{[delta](double t, double k) {
        return std::exp(cplx(0.0, -t * std::pow(k, delta)));
    }};

    if (std::isinf(p)) {
        const FitPlan plan = plan_bump_fit(delta, opt, t_max);
        const auto samples = norm_samples(plan.datum, fam, p, opt.t_list, plan.check_boundary);
        return fit_power_law(samples, target, opt.slope_tolerance);
    }
    if (p == 2.0) {
        // unimodular symbol: report the (zero) slope against a zero target
        const FitPlan plan = plan_bump_fit(delta, opt, t_max);
        const auto samples = norm_samples(plan.datum, fam, p, opt.t_list, false);
        FitResult fit = fit_power_law(samples, -1.0, opt.slope_tolerance); // placeholder target
        fit.target = 0.0;
        fit.rel_error = std::abs(fit.slope);
        fit.pass = fit.rel_error <= 1e-3;
        return fit;
    }

    const FitPlan plan = plan_critical_fit(delta, d / p, opt, t_max);
    auto samples = norm_samples(plan.datum, fam, p, opt.t_list, false);
    FitResult fit = fit_power_law(samples, target, opt.slope_tolerance);
    if (opt.check_box_doubling || plan.check_box_doubling) {
        const FitPlan big = plan_critical_fit(delta, d / p, opt, t_max, true);
        const auto s2 = norm_samples(big.datum, fam, p, opt.t_list, false);
        const FitResult fit2 = fit_power_law(s2, target, opt.slope_tolerance);
        if (std::abs(fit2.slope - fit.slope) > 0.01 * std::abs(target))
            throw BoxTooSmall("fitted slope moved under box doubling");
        fit = fit2;
    }
    return fit;
}

FitResult verify_derivative_loss_dispersive(const FracParams& params, DecayFitOptions opt) {
    params.validate();
    const double delta = params.delta();
    const double d = params.dim;
    if (!((delta - params.beta) / d < delta / 2.0 - 1.0))
        throw DomainError("derivative-loss fit requires (delta-beta)/d < delta/2 - 1");
    const double p = params.p0(); // 1/p = 1/2 - (delta-beta)/(d(delta-2))
    if (opt.t_list.empty()) opt.t_list = default_t_list();
    const double t_max = *std::max_element(opt.t_list.begin(), opt.t_list.end());
    const double target =
        params.alpha - 1.0 - (params.alpha * d / params.beta) * (1.0 - 2.0 / p);
    const double loss = delta - params.beta;

    SymbolFamily fam{[delta, loss](double t, double k) {
        const double amp = (k == 0.0) ? 0.0 : std::pow(k, loss);
        return amp * std::exp(cplx(0.0, -t * std::pow(k, delta)));
    }};

    const FitPlan plan = plan_critical_fit(delta, d / p, opt, t_max);
    auto samples = norm_samples(plan.datum, fam, p, opt.t_list, false);
    FitResult fit = fit_power_law(samples, target, opt.slope_tolerance);
    if (plan.check_box_doubling) {
        const FitPlan big = plan_critical_fit(delta, d / p, opt, t_max, true);
        const auto s2 = norm_samples(big.datum, fam, p, opt.t_list, false);
        const FitResult fit2 = fit_power_law(s2, target, opt.slope_tolerance);
        if (std::abs(fit2.slope - fit.slope) > 0.01 * std::abs(target))
            throw BoxTooSmall("fitted slope moved under box doubling");
        fit = fit2;
    }
    return fit;
}

std::pair<FitResult, FitResult> verify_mlf_operator_decay(const FracParams& params,
                                                          DecayFitOptions opt) {
    params.validate();
    if (!(params.beta > 2.0)) throw DomainError("operator decay fit requires beta > 2");
    const double delta = params.delta();
    const double d = params.dim;
    const double p0 = params.p0();
    if (opt.t_list.empty()) opt.t_list = default_t_list();
    const double t_max = *std::max_element(opt.t_list.begin(), opt.t_list.end());
    const double target = -(params.alpha * d / params.beta) * (1.0 - 2.0 / p0);

    const auto symtab = mlf::SymbolTable::get(params.alpha);
    SymbolFamily fam1{[symtab, delta](double t, double k) {
        return symtab->e1(t * std::pow(k, delta));
    }};
    SymbolFamily fam2{[symtab, delta](double t, double k) {
        return symtab->ea(t * std::pow(k, delta));
    }};

    const FitPlan plan = plan_critical_fit(delta, d / p0, opt, t_max);
    const auto s1 = norm_samples(plan.datum, fam1, p0, opt.t_list, false);
    const auto s2 = norm_samples(plan.datum, fam2, p0, opt.t_list, false);
    return {fit_power_law(s1, target, opt.slope_tolerance),
            fit_power_law(s2, target, opt.slope_tolerance)};
}

VerifyReport verify_unitarity(double delta, int trials, const std::vector<double>& t_list,
                              unsigned seed) {
    VerifyReport report;
    report.scenario = "unitarity";
    report.params_echo["delta"] = delta;
    auto grid = std::make_shared<Grid>(1, std::size_t{1024}, 40.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Field f = Field::zeros(grid, Space::Physical);
        for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
        const double n0 = norms::lp_norm(f, 2.0);
        for (double t : t_list) {
            const double n1 = norms::lp_norm(spectral::schrodinger_group(f, t, delta), 2.0);
            worst = std::max(worst, std::abs(n1 / n0 - 1.0));
        }
    }
    report.add_check("max |ratio - 1| over trials and times", worst, 1e-12);
    report.finalize();
    return report;
}

// ---------------------------------------------------------------------------
// Smoothing identity.

VerifyReport verify_smoothing_equality_1d(double delta, SmoothingIdentityOptions opt) {
    if (!(delta > 1.0)) throw DomainError("smoothing identity requires delta > 1");
    VerifyReport report;
    report.scenario = "smoothing-identity";
    report.params_echo["delta"] = delta;
    report.params_echo["xi_center"] = opt.xi_center;
    report.params_echo["xi_width"] = opt.xi_width;

    // Box with no wrap-around over the whole (doubled) window.
    const double xi_max = opt.xi_center + 6.0 * opt.xi_width;
    const double t_cap = opt.time_window * std::pow(2.0, opt.max_doublings);
    const double v_max = delta * std::pow(xi_max, delta - 1.0);
    const double L = std::max(600.0, 0.75 * v_max * t_cap);
    const std::size_t n = pow2_at_least(2.0 * L * 1.5 * xi_max / M_PI);
    auto grid = std::make_shared<Grid>(1, n, L);
    const Field packet = positive_frequency_packet(grid, opt.xi_center, opt.xi_width);
    const Field phat = spectral::to_frequency(packet);

    // active modes of the packet
    std::vector<std::pair<double, cplx>> modes; // (k, g-hat(k))
    const double floor_amp = 1e-9;
    for (std::size_t j = 0; j < phat.values.size(); ++j)
        if (std::abs(phat.values[j]) > floor_amp) modes.emplace_back(grid->freq(j), phat.values[j]);
    const double dk = grid->freq_spacing();

    // frequency-side value: int |g-hat|^2 / (delta xi^{delta-1}) dxi by
    // independent quadrature on the analytic profile
    const auto rhs_res = quad::adaptive_gk(
        [&](double xi) -> cplx {
            const double d0 = (xi - opt.xi_center) / opt.xi_width;
            const double g = std::exp(-0.5 * d0 * d0);
            return g * g / (delta * std::pow(xi, delta - 1.0));
        },
        dk * 0.5, opt.xi_center + 10.0 * opt.xi_width, 1e-13, 1e-11);
    const double rhs = rhs_res.value.real();

    // time integral of |w(x,t)|^2 at fixed probes, Simpson in t with phase
    // recurrences per mode, window doubled until it saturates
    const double rate = std::pow(xi_max, delta);
    double max_dev = 0.0;
    for (double x : opt.x_probes) {
        double T = opt.time_window;
        double prev = -1.0, value = 0.0;
        bool saturated = false;
        for (int dbl = 0; dbl <= opt.max_doublings; ++dbl) {
            const auto n_t = static_cast<std::size_t>(std::max(2001.0, 8.0 * rate * T / M_PI)) | 1;
            const double dt = 2.0 * T / static_cast<double>(n_t - 1);
            std::vector<cplx> phase(modes.size()), step(modes.size());
            for (std::size_t m = 0; m < modes.size(); ++m) {
                const double om = std::pow(modes[m].first, delta);
                phase[m] = std::polar(1.0, om * T + x * modes[m].first); // t = -T start
                step[m] = std::polar(1.0, -om * dt);
            }
            double acc = 0.0;
            const double scale = dk / std::sqrt(2.0 * M_PI);
            for (std::size_t it = 0; it < n_t; ++it) {
                cplx w{};
                for (std::size_t m = 0; m < modes.size(); ++m) {
                    w += modes[m].second * phase[m];
                    phase[m] *= step[m];
                }
                const double simpson = (it == 0 || it + 1 == n_t) ? 1.0 : ((it & 1) ? 4.0 : 2.0);
                acc += simpson * std::norm(w * scale);
            }
            value = acc * dt / 3.0;
            if (prev >= 0.0 && std::abs(value - prev) <= 0.5 * opt.tolerance * value) {
                saturated = true;
                break;
            }
            prev = value;
            T *= 2.0;
        }
        if (!saturated) throw WindowTooShort("time integral did not saturate within the budget");
        max_dev = std::max(max_dev, std::abs(value - rhs) / rhs);
    }
    report.add_check("max relative deviation over probes", max_dev, opt.tolerance);
    report.finalize();
    return report;
}

// ---------------------------------------------------------------------------
// Smoothing boundedness.

VerifyReport verify_smoothing_bound_1d(double delta, SmoothingBoundOptions opt, unsigned seed) {
    if (!(delta > 1.0)) throw DomainError("smoothing bound requires delta > 1");
    VerifyReport report;
    report.scenario = "smoothing-bound";
    report.params_echo["delta"] = delta;
    const double gamma = 0.5 * (delta - 1.0);

    const double v_max0 = delta * std::pow(opt.band_hi * 1.5, delta - 1.0);
    const double L = std::max(300.0, 0.6 * v_max0 * opt.time_window + 4.0 * opt.envelope_width);
    const double xi_grid = opt.band_hi * std::pow(2.0, opt.bandwidth_levels - 1) * 2.0;
    const std::size_t n = pow2_at_least(2.0 * L * xi_grid / M_PI);
    auto grid = std::make_shared<Grid>(1, n, L);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // ||D^gamma e^{-itD^delta} f||_{Linf_x L2_t([0,T])} / ||f||_2
    auto smoothing_ratio = [&](const Field& f, double T, double band_top) {
        const double f_norm = norms::lp_norm(f, 2.0);
        const double rate = std::pow(band_top * 1.3, delta);
        const auto n_t = static_cast<std::size_t>(std::max(257.0, 6.0 * rate * T / M_PI)) | 1;
        const double dt = T / static_cast<double>(n_t - 1);
        const Field fhat = spectral::to_frequency(f);
        std::vector<double> acc(fhat.values.size(), 0.0);
        for (std::size_t it = 0; it < n_t; ++it) {
            const double t = dt * static_cast<double>(it);
            Field snap = fhat;
            const Grid& g = *grid;
            parallel_for(snap.values.size(), [&](std::size_t j) {
                const double k = g.freq_mag(j);
                const double amp = (k == 0.0) ? 0.0 : std::pow(k, gamma);
                snap.values[j] *= amp * std::exp(cplx(0.0, -t * std::pow(k, delta)));
            });
            const Field w = spectral::transform(snap, Direction::Inverse);
            const double tw = (it == 0 || it + 1 == n_t) ? 0.5 : 1.0;
            for (std::size_t i = 0; i < w.values.size(); ++i)
                acc[i] += tw * dt * std::norm(w.values[i]);
        }
        double sup = 0.0;
        for (double a : acc) sup = std::max(sup, a);
        return std::sqrt(sup) / f_norm;
    };

    double worst_spread = 0.0, max_ratio = 0.0, amp_invariance = 0.0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        // base packet: random band-limited modulation under a fixed envelope
        const int n_modes = 12;
        std::vector<double> ks(n_modes);
        std::vector<cplx> cs(n_modes);
        for (int m = 0; m < n_modes; ++m) {
            ks[m] = opt.band_lo + (opt.band_hi - opt.band_lo) * (m + 0.5) / n_modes;
            cs[m] = cplx(gauss(rng), gauss(rng));
        }
        std::vector<double> ratios;
        for (int b = 0; b < opt.bandwidth_levels; ++b) {
            const double dil = std::pow(2.0, b);
            Field f = Field::zeros(grid, Space::Physical);
            for (std::size_t i = 0; i < f.values.size(); ++i) {
                const double x = grid->coord(i) * dil;
                cplx v{};
                for (int m = 0; m < n_modes; ++m) v += cs[m] * std::polar(1.0, ks[m] * x);
                f.values[i] =
                    v * std::exp(-0.5 * x * x / (opt.envelope_width * opt.envelope_width));
            }
            const double T = opt.time_window / std::pow(dil, delta);
            const double ratio = smoothing_ratio(f, T, opt.band_hi * dil);
            ratios.push_back(ratio);
            max_ratio = std::max(max_ratio, ratio);

            if (b == 0 && trial == 0) {
                Field f3 = f;
                for (auto& v : f3.values) v *= 3.7;
                const double r3 = smoothing_ratio(f3, T, opt.band_hi * dil);
                amp_invariance = std::abs(r3 - ratio) / ratio;
            }
        }
        for (double r : ratios)
            worst_spread = std::max(worst_spread, std::abs(r - ratios[0]) / ratios[0]);
    }
    report.add_check("ratio spread across bandwidth doublings", worst_spread,
                     opt.stability_tolerance);
    report.add_check("amplitude-scaling invariance", amp_invariance, 1e-12);
    report.params_echo["max_ratio"] = max_ratio;
    report.finalize();
    return report;
}

// ---------------------------------------------------------------------------
// Self-similarity.

namespace {

// Trigonometric evaluation of a frequency-space snapshot at scaled points
// lambda * x_m, using per-mode phase recurrences over the uniform targets.
std::vector<cplx> eval_at_scaled_points(const Field& snapshot_phys, double lambda,
                                        const std::vector<double>& points) {
    const Field fhat = spectral::to_frequency(snapshot_phys);
    const Grid& g = *fhat.grid;
    const double dk = g.freq_spacing();
    const double scale = dk / std::sqrt(2.0 * M_PI);
    std::vector<cplx> out(points.size(), cplx{});
    const double x0 = lambda * points.front();
    const double dx = (points.size() > 1) ? lambda * (points[1] - points[0]) : 0.0;
    std::vector<cplx> phase(g.size()), step(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double k = g.freq(j);
        phase[j] = std::polar(1.0, k * x0);
        step[j] = std::polar(1.0, k * dx);
    }
    for (std::size_t m = 0; m < points.size(); ++m) {
        cplx acc{};
        for (std::size_t j = 0; j < g.size(); ++j) {
            acc += fhat.values[j] * phase[j];
            phase[j] *= step[j];
        }
        out[m] = acc * scale;
    }
    return out;
}

Field homogeneous_datum(std::shared_ptr<const Grid> grid, double degree, double eps, double c) {
    Field f = Field::zeros(grid, Space::Physical);
    for (std::size_t m = 0; m < f.values.size(); ++m)
        f.values[m] = c * std::pow(std::abs(grid->coord(m)) + eps, -degree);
    return f;
}

} // namespace

VerifyReport verify_self_similarity(const FracParams& params, SelfSimilarityOptions opt) {
    params.validate();
    VerifyReport report;
    report.scenario = "self-similarity";
    const auto regime = check_global_conditions(params);
    report.add_check("global regime", regime.pass ? 1.0 : 0.0, 1.0, ">=");
    const double p0 = params.p0();
    const double degree = params.beta / (p0 - 2.0);
    const double delta = params.delta();
    const double lam = opt.lambda;
    report.params_echo["lambda"] = lam;
    report.params_echo["homogeneity_degree"] = degree;

    auto grid = std::make_shared<Grid>(1, opt.n_points, opt.half_width);
    std::vector<double> inner_points;
    for (std::size_t m = 0; m < grid->n_per_axis(); m += 2) {
        const double x = grid->coord(m);
        if (std::abs(x) <= 0.5 * opt.half_width) inner_points.push_back(x);
    }

    solver::SolverConfig cfg;
    cfg.t_final = opt.t_final;
    cfg.n_steps = opt.n_steps;
    cfg.picard_tol = 1e-9;
    cfg.norm = solver::ConvergenceNorm::XKappa;

    double prev_mismatch = -1.0;
    bool trend_ok = true;
    double first_mismatch = 0.0;
    for (std::size_t ie = 0; ie < opt.eps_list.size(); ++ie) {
        const double eps = opt.eps_list[ie];
        const Field w0 = homogeneous_datum(grid, degree, eps, opt.amplitude);

        auto run_a = solver::picard_solve(w0, cfg, params);
        solver::SolverConfig cfg_b = cfg;
        cfg_b.t_final = opt.t_final * std::pow(lam, delta);
        auto run_b = solver::picard_solve(w0, cfg_b, params);

        double mismatch = 0.0;
        for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            const auto idx = static_cast<std::size_t>(frac * static_cast<double>(opt.n_steps));
            const auto scaled = eval_at_scaled_points(run_b.trajectory.fields[idx], lam,
                                                      inner_points);
            const auto base = eval_at_scaled_points(run_a.trajectory.fields[idx], 1.0,
                                                    inner_points);
            double num = 0.0, den = 0.0;
            const double amp = std::pow(lam, degree);
            for (std::size_t m = 0; m < inner_points.size(); ++m) {
                num += std::norm(base[m] - amp * scaled[m]);
                den += std::norm(base[m]);
            }
            mismatch = std::max(mismatch, std::sqrt(num / den));
        }
        if (ie == 0) first_mismatch = mismatch;
        if (prev_mismatch >= 0.0 && mismatch > prev_mismatch * 1.05) trend_ok = false;
        prev_mismatch = mismatch;
        report.params_echo["mismatch_eps_" + std::to_string(eps)] = mismatch;
    }
    report.add_check("inner-window relative L2 mismatch", first_mismatch,
                     opt.mismatch_tolerance);
    report.add_check("mismatch non-increasing as eps halves", trend_ok ? 1.0 : 0.0, 1.0, ">=");
    report.note = "scaled-time states come from a second solve at the scaled output times";
    report.finalize();
    return report;
}

// ---------------------------------------------------------------------------
// Asymptotic equivalence trend.

VerifyReport verify_asymptotic_link(const FracParams& params, AsymptoticLinkOptions opt) {
    params.validate();
    VerifyReport report;
    report.scenario = "asymptotic-link";
    const auto regime = check_global_conditions(params);
    report.add_check("global regime", regime.pass ? 1.0 : 0.0, 1.0, ">=");
    const double p0 = params.p0();
    const double kappa = params.kappa_at(p0);

    auto grid = std::make_shared<Grid>(1, opt.n_points, opt.half_width);
    Field w0 = gaussian_bump(grid, 1.5);
    for (auto& v : w0.values) v *= opt.amplitude / 0.3; // modest rescale of the L1 bump

    Field v0 = w0;
    if (opt.decaying_difference) {
        // small smooth displaced bump on top
        for (std::size_t m = 0; m < v0.values.size(); ++m) {
            const double x = grid->coord(m) - 2.0;
            v0.values[m] += opt.bump_amplitude * std::exp(-0.5 * x * x);
        }
    } else {
        // slowly decaying spectral tail: the weighted linear difference
        // stays put instead of decaying
        const Field tail = near_critical_datum(grid, 0.5, 0.02, 1.0);
        for (std::size_t m = 0; m < v0.values.size(); ++m)
            v0.values[m] += opt.bump_amplitude * tail.values[m];
    }

    solver::SolverConfig cfg;
    cfg.t_final = opt.t_final;
    cfg.n_steps = opt.n_steps;
    cfg.picard_tol = 1e-9;
    cfg.norm = solver::ConvergenceNorm::XKappa;

    const auto run_w = solver::picard_solve(w0, cfg, params);
    const auto run_v = solver::picard_solve(v0, cfg, params);

    Field diff0 = w0;
    for (std::size_t m = 0; m < diff0.values.size(); ++m)
        diff0.values[m] -= v0.values[m];
    const auto linear_diff = solver::linear_evolve(diff0, run_w.trajectory.times, params);

    std::vector<double> ts, a_series, b_series;
    for (std::size_t n = 1; n < run_w.trajectory.times.size(); ++n) {
        const double t = run_w.trajectory.times[n];
        Field d = run_w.trajectory.fields[n];
        for (std::size_t m = 0; m < d.values.size(); ++m)
            d.values[m] -= run_v.trajectory.fields[n].values[m];
        ts.push_back(t);
        a_series.push_back(std::pow(t, kappa) * norms::lp_norm(d, p0));
        b_series.push_back(std::pow(t, kappa) * norms::lp_norm(linear_diff.fields[n], p0));
    }

    // final-decade trend: compare the first and last thirds of [T/10, T]
    const double T = ts.back();
    auto decade_stat = [&](const std::vector<double>& series) {
        double first = 0.0, last = 0.0;
        int nf = 0, nl = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] < T / 10.0) continue;
            if (ts[i] <= T / 10.0 * 3.0) {
                first += series[i];
                ++nf;
            }
            if (ts[i] >= T / 3.0 * 2.0) {
                last += series[i];
                ++nl;
            }
        }
        return std::pair<double, double>(first / std::max(nf, 1), last / std::max(nl, 1));
    };
    const auto [a_first, a_last] = decade_stat(a_series);
    const auto [b_first, b_last] = decade_stat(b_series);
    report.params_echo["a_first"] = a_first;
    report.params_echo["a_last"] = a_last;
    report.params_echo["b_first"] = b_first;
    report.params_echo["b_last"] = b_last;

    double c_ab = 0.0, c_ba = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < T / 10.0) continue;
        c_ab = std::max(c_ab, a_series[i] / (b_series[i] + cfg.picard_tol));
        c_ba = std::max(c_ba, b_series[i] / (a_series[i] + cfg.picard_tol));
    }
    report.params_echo["C_a_vs_b"] = c_ab;
    report.params_echo["C_b_vs_a"] = c_ba;

    if (opt.decaying_difference) {
        report.add_check("weighted solution distance decays over final decade", a_last,
                         a_first * 1.02);
        report.add_check("weighted linear difference decays over final decade", b_last,
                         b_first * 1.02);
    } else {
        // contrapositive observation: when the linear difference does not
        // decay, neither does the solution distance
        report.add_check("linear difference stays put", b_last, 0.5 * b_first, ">=");
        report.add_check("solution distance stays put", a_last, 0.5 * a_first, ">=");
    }
    report.note = "finite-window trend check; the t -> infinity statement itself is not "
                  "desk-reproducible";
    report.finalize();
    return report;
}

} // namespace fracdisp::verify
