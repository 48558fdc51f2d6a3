#ifndef FRACDISP_FIT_HPP
#define FRACDISP_FIT_HPP

#include <utility>
#include <vector>

namespace fracdisp::verify {

// Least-squares power-law fit on (log t, log v).  pass requires both the
// relative slope error and the fit quality gate r^2 >= 0.98.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double target = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::pair<double, double>> samples;
};

// Requires >= 4 samples spanning at least one decade in t and positive
// values; throws DegenerateFit otherwise.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& samples, double target,
                        double tolerance);

} // namespace fracdisp::verify

#endif
