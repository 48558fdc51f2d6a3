#ifndef FRACDISP_TRAJECTORY_HPP
#define FRACDISP_TRAJECTORY_HPP

#include <vector>

#include "fracdisp/grid.hpp"
#include "fracdisp/params.hpp"

namespace fracdisp::solver {

// Discrete mild solution: physical-space snapshots on an increasing time
// grid starting at t0 = 0.  fields[0] is the initial datum.
struct Trajectory {
    std::vector<double> times;
    std::vector<spectral::Field> fields;
    FracParams params;

    void validate() const; // lengths match, times increasing from zero
    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

} // namespace fracdisp::solver

#endif
