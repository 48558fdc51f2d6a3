#ifndef FRACDISP_PARAMS_HPP
#define FRACDISP_PARAMS_HPP

#include <map>
#include <string>
#include <vector>

namespace fracdisp {

// Exponent tuple of the equation i^a d_t^a w - (-Lap)^{b/2} w + g(w) = 0
// with g(w) = |w|^{p-2} w, plus every derived constant the estimates use.
// Derived values are always recomputed, never stored.
struct FracParams {
    double alpha = 0.9;  // time order, in (0,1)
    double beta = 2.5;   // space order, > 0
    int dim = 1;
    double nonlin_p = 7.0; // power p in |w|^{p-2} w

    void validate() const;

    double delta() const { return beta / alpha; } // effective dispersion order

    // p0 = 2d(delta-2) / (d(delta-2) - 2(delta-beta)); throws DegenerateParams
    // when the denominator is not positive.
    double p0() const;

    // kappa = (a/b)(b/(p-2) - d/p) evaluated at p = nonlin_p.
    double kappa() const;
    // nu = (a d / b)(1/p' - 1/p) evaluated at p = nonlin_p.
    double nu() const;

    double kappa_at(double p) const;
    double nu_at(double p) const;
};

struct RegimeCondition {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    std::string relation; // "<", ">", "<=", ...
    bool ok = false;
};

struct RegimeReport {
    std::string regime;
    std::vector<RegimeCondition> conditions;
    std::map<std::string, double> constants;
    bool pass = false;
};

// Global small-data regime: beta > 2, (delta-beta)/d < delta/2 - 1,
// kappa (p0 - 1) < 1; also reports the Beta-function constant
// B(alpha - (alpha d / beta)(1/p0' - 1/p0), 1 - kappa (p0 - 1)).
RegimeReport check_global_conditions(const FracParams& params);

// Local regime: same geometry with nu (p0 - 1) < alpha.
RegimeReport check_local_conditions(const FracParams& params);

// One-dimensional beta < 2 regime: 1 < delta < 3/2, 2 beta > delta + 1,
// even p >= 4, s >= varsigma, theta inside its admissible window; reports
// varsigma, gamma, nu_smooth, sigma and the theta window.
RegimeReport check_beta_lt2_conditions(const FracParams& params, double s, double theta);

// Formats x as an exact small-denominator rational ("9/70") when one
// reproduces the double bit-for-bit, otherwise as a plain decimal.
std::string format_exact(double x);

} // namespace fracdisp

#endif
