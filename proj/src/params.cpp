#include "fracdisp/params.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "fracdisp/errors.hpp"
#include "fracdisp/special.hpp"

namespace fracdisp {

void FracParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (dim < 1 || dim > 3) throw DomainError("dim must be 1, 2 or 3");
    if (!(nonlin_p >= 3.0)) throw DomainError("nonlinearity power must be >= 3");
}

double FracParams::p0() const {
    const double d = static_cast<double>(dim);
    const double den = d * (delta() - 2.0) - 2.0 * (delta() - beta);
    if (!(den > 0.0)) throw DegenerateParams("p0 denominator d(delta-2)-2(delta-beta) <= 0");
    return 2.0 * d * (delta() - 2.0) / den;
}

double FracParams::kappa_at(double p) const {
    const double d = static_cast<double>(dim);
    return (alpha / beta) * (beta / (p - 2.0) - d / p);
}

double FracParams::nu_at(double p) const {
    const double d = static_cast<double>(dim);
    const double inv_pprime = 1.0 - 1.0 / p;
    return (alpha * d / beta) * (inv_pprime - 1.0 / p);
}

double FracParams::kappa() const { return kappa_at(nonlin_p); }
double FracParams::nu() const { return nu_at(nonlin_p); }

namespace {

RegimeCondition cond(std::string name, double value, const char* rel, double bound) {
    RegimeCondition c;
    c.name = std::move(name);
    c.value = value;
    c.bound = bound;
    c.relation = rel;
    if (c.relation == "<") c.ok = value < bound;
    else if (c.relation == "<=") c.ok = value <= bound;
    else if (c.relation == ">") c.ok = value > bound;
    else if (c.relation == ">=") c.ok = value >= bound;
    else c.ok = false;
    return c;
}

bool all_ok(const std::vector<RegimeCondition>& cs) {
    for (const auto& c : cs)
        if (!c.ok) return false;
    return true;
}

} // namespace

RegimeReport check_global_conditions(const FracParams& params) {
    params.validate();
    RegimeReport report;
    report.regime = "global";
    const double d = params.dim, delta = params.delta();
    report.conditions.push_back(cond("beta > 2", params.beta, ">", 2.0));
    report.conditions.push_back(
        cond("(delta-beta)/d < delta/2 - 1", (delta - params.beta) / d, "<", delta / 2.0 - 1.0));

    const double p0 = params.p0(); // throws DegenerateParams when undefined
    const double kappa = params.kappa_at(p0);
    report.conditions.push_back(cond("kappa (p0-1) < 1", kappa * (p0 - 1.0), "<", 1.0));

    report.constants["delta"] = delta;
    report.constants["p0"] = p0;
    report.constants["kappa"] = kappa;
    const double nu = params.nu_at(p0);
    report.constants["nu"] = nu;
    const double b_x = params.alpha - nu; // alpha - (alpha d / beta)(1/p0' - 1/p0)
    const double b_y = 1.0 - kappa * (p0 - 1.0);
    if (b_x > 0.0 && b_y > 0.0) report.constants["B_kappa"] = beta_function(b_x, b_y);
    report.pass = all_ok(report.conditions);
    return report;
}

RegimeReport check_local_conditions(const FracParams& params) {
    params.validate();
    RegimeReport report;
    report.regime = "local";
    const double d = params.dim, delta = params.delta();
    report.conditions.push_back(cond("beta > 2", params.beta, ">", 2.0));
    report.conditions.push_back(
        cond("(delta-beta)/d < delta/2 - 1", (delta - params.beta) / d, "<", delta / 2.0 - 1.0));

    const double p0 = params.p0();
    const double nu = params.nu_at(p0);
    report.conditions.push_back(cond("nu (p0-1) < alpha", nu * (p0 - 1.0), "<", params.alpha));

    report.constants["delta"] = delta;
    report.constants["p0"] = p0;
    report.constants["kappa"] = params.kappa_at(p0);
    report.constants["nu"] = nu;
    const double b_x = params.alpha - nu;
    const double b_y = 1.0 - nu * (p0 - 1.0);
    if (b_x > 0.0 && b_y > 0.0) report.constants["B_nu"] = beta_function(b_x, b_y);
    report.pass = all_ok(report.conditions);
    return report;
}

RegimeReport check_beta_lt2_conditions(const FracParams& params, double s, double theta) {
    params.validate();
    RegimeReport report;
    report.regime = "beta_lt2_local";
    const double delta = params.delta();
    const double p = params.nonlin_p;

    report.conditions.push_back(cond("d == 1", params.dim, "<=", 1.0));
    report.conditions.push_back(cond("delta > 1", delta, ">", 1.0));
    report.conditions.push_back(cond("delta < 3/2", delta, "<", 1.5));
    report.conditions.push_back(cond("2 beta > delta + 1", 2.0 * params.beta, ">", delta + 1.0));

    const bool p_even = std::abs(p - 2.0 * std::round(p / 2.0)) < 1e-12;
    RegimeCondition pc = cond("p even and >= 4", p, ">=", 4.0);
    pc.ok = pc.ok && p_even;
    report.conditions.push_back(pc);

    const double varsigma = 0.5 - 0.5 / (p - 2.0);
    report.conditions.push_back(cond("s >= varsigma", s, ">=", varsigma));

    const double gamma = (delta - 1.0) / 2.0;
    const double nu_smooth = params.beta - (delta + 1.0) / 2.0;
    const double sigma = s + (3.0 * delta - 1.0) / 4.0 - params.beta / 2.0;
    const double theta_lo = gamma / (varsigma + gamma);
    const double theta_hi = varsigma / (varsigma + gamma);
    report.conditions.push_back(cond("theta > gamma/(varsigma+gamma)", theta, ">", theta_lo));
    report.conditions.push_back(cond("theta < varsigma/(varsigma+gamma)", theta, "<", theta_hi));

    report.constants["delta"] = delta;
    report.constants["varsigma"] = varsigma;
    report.constants["gamma"] = gamma;
    report.constants["nu_smooth"] = nu_smooth;
    report.constants["sigma"] = sigma;
    report.constants["theta_lo"] = theta_lo;
    report.constants["theta_hi"] = theta_hi;
    report.constants["s"] = s;
    report.constants["theta"] = theta;
    report.pass = all_ok(report.conditions);
    return report;
}

std::string format_exact(double x) {
    // Continued-fraction rationalization with bounded denominator; accept
    // only a bit-exact reproduction.
    const double sign = x < 0 ? -1.0 : 1.0;
    double v = std::abs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int i = 0; i < 32; ++i) {
        const double ai = std::floor(frac);
        if (ai > 1e15) break;
        const auto a = static_cast<std::int64_t>(ai);
        const std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 100000 || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (static_cast<double>(p1) / static_cast<double>(q1) == v) {
            std::ostringstream os;
            if (q1 == 1) os << static_cast<std::int64_t>(sign) * p1;
            else os << static_cast<std::int64_t>(sign) * p1 << "/" << q1;
            return os.str();
        }
        const double rem = frac - ai;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace fracdisp
