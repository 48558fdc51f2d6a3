#include "fracdisp/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include "fracdisp/errors.hpp"
#include "fracdisp/io.hpp"

namespace fracdisp::spectral {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// One FFTW plan per (dim, n, sign); planning is serialized, execution uses
// the new-array interface on caller-owned buffers.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const Key key{dim, n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int i = 0; i < dim; ++i) total *= n;
        std::vector<cplx> scratch(total);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        int dims[3] = {static_cast<int>(n), static_cast<int>(n), static_cast<int>(n)};
        fftw_plan plan =
            fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw Error("fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, std::size_t, int>;
    std::map<Key, fftw_plan> plans_;
    std::mutex mutex_;
};

} // namespace

Grid::Grid(int dim, std::size_t n_per_axis, double half_width)
    : dim_(dim), n_(n_per_axis), half_width_(half_width) {
    if (dim < 1 || dim > 3) throw DomainError("grid dim must be 1, 2 or 3");
    if (!power_of_two(n_per_axis)) throw DomainError("n_per_axis must be a power of two");
    if (!(half_width > 0.0)) throw DomainError("half_width must be positive");
    size_ = 1;
    for (int i = 0; i < dim; ++i) size_ *= n_;
    if (size_ > (std::size_t{1} << 28)) throw DomainError("grid exceeds memory budget");
}

double Grid::freq_mag(std::size_t flat) const {
    double mag2 = 0.0;
    std::size_t rem = flat;
    for (int axis = 0; axis < dim_; ++axis) {
        const std::size_t j = rem % n_;
        rem /= n_;
        const double k = freq(j);
        mag2 += k * k;
    }
    return std::sqrt(mag2);
}

std::string Grid::signature() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "d%zu_n%zu_L%.17g", static_cast<std::size_t>(dim_), n_,
                  half_width_);
    return buf;
}

Field Field::zeros(std::shared_ptr<const Grid> grid, Space space) {
    Field f;
    f.values.assign(grid->size(), cplx{});
    f.grid = std::move(grid);
    f.space = space;
    return f;
}

double Field::measure() const {
    const double base = (space == Space::Physical) ? grid->spacing() : grid->freq_spacing();
    return std::pow(base, grid->dim());
}

void Field::check_same_layout(const Field& other) const {
    if (!grid || !other.grid || !(*grid == *other.grid) || space != other.space)
        throw DomainError("field layout mismatch");
}

Field transform(const Field& field, Direction direction) {
    if (!field.grid) throw DomainError("field without grid");
    const Grid& g = *field.grid;
    const bool forward = (direction == Direction::Forward);
    if (forward && field.space != Space::Physical)
        throw DomainError("forward transform expects a physical-space field");
    if (!forward && field.space != Space::Frequency)
        throw DomainError("inverse transform expects a frequency-space field");

    Field out = field;
    out.space = forward ? Space::Frequency : Space::Physical;

    // The (-1)^{j1+...+jd} checkerboard on the frequency-side index realizes
    // the x-offset -L of the box in the continuum convention: it multiplies
    // the produced spectrum after a forward transform and the consumed
    // spectrum before an inverse transform.
    const std::size_t n = g.n_per_axis();
    auto parity = [&](std::size_t flat) {
        int p = 0;
        std::size_t rem = flat;
        for (int axis = 0; axis < g.dim(); ++axis) {
            p += static_cast<int>(rem % n);
            rem /= n;
        }
        return (p & 1) ? -1.0 : 1.0;
    };

    const double d = static_cast<double>(g.dim());
    const double scale = forward ? std::pow(g.spacing() / std::sqrt(2.0 * M_PI), d)
                                 : std::pow(g.freq_spacing() / std::sqrt(2.0 * M_PI), d);

    if (!forward) {
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= parity(i);
    }
    fftw_plan plan = PlanCache::instance().get(g.dim(), n, forward ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* buf = reinterpret_cast<fftw_complex*>(out.values.data());
    fftw_execute_dft(plan, buf, buf);
    if (forward) {
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= parity(i) * scale;
    } else {
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= scale;
    }
    return out;
}

void write_snapshot(const Field& field, const std::string& path_prefix, double time_stamp) {
    io::Json sidecar;
    sidecar["dim"] = field.grid->dim();
    sidecar["n_per_axis"] = field.grid->n_per_axis();
    sidecar["half_width"] = field.grid->half_width();
    sidecar["space"] = (field.space == Space::Physical) ? "physical" : "frequency";
    sidecar["time"] = time_stamp;
    io::write_json_atomic(path_prefix + ".json", sidecar);
    io::write_binary_atomic(path_prefix + ".bin",
                            reinterpret_cast<const char*>(field.values.data()),
                            field.values.size() * sizeof(cplx));
}

Field read_snapshot(const std::string& path_prefix, double* time_stamp) {
    const io::Json sidecar = io::read_json(path_prefix + ".json");
    const int dim = sidecar.at("dim").get<int>();
    const std::size_t n = sidecar.at("n_per_axis").get<std::size_t>();
    const double half_width = sidecar.at("half_width").get<double>();
    Field f = Field::zeros(std::make_shared<Grid>(dim, n, half_width),
                           sidecar.at("space").get<std::string>() == "physical"
                               ? Space::Physical
                               : Space::Frequency);
    io::read_binary(path_prefix + ".bin", reinterpret_cast<char*>(f.values.data()),
                    f.values.size() * sizeof(cplx));
    if (time_stamp) *time_stamp = sidecar.at("time").get<double>();
    return f;
}

} // namespace fracdisp::spectral
