#ifndef FRACDISP_GRID_HPP
#define FRACDISP_GRID_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fracdisp::spectral {

using cplx = std::complex<double>;

// Uniform periodic grid on [-L, L)^d with power-of-two points per axis.
// Angular wavenumbers k_j = pi j / L, j in [-n/2, n/2), stored in DFT order.
class Grid {
public:
    Grid(int dim, std::size_t n_per_axis, double half_width);

    int dim() const { return dim_; }
    std::size_t n_per_axis() const { return n_; }
    std::size_t size() const { return size_; }
    double half_width() const { return half_width_; }
    double spacing() const { return 2.0 * half_width_ / static_cast<double>(n_); }
    double freq_spacing() const { return M_PI / half_width_; }

    // Axis coordinate of index m: x_m = -L + m h.
    double coord(std::size_t m) const { return -half_width_ + spacing() * static_cast<double>(m); }
    // Axis wavenumber in DFT order.
    double freq(std::size_t j) const {
        const auto half = n_ / 2;
        const double jj = (j < half) ? static_cast<double>(j)
                                     : static_cast<double>(j) - static_cast<double>(n_);
        return jj * freq_spacing();
    }

    // |k| at a flattened multi-index.
    double freq_mag(std::size_t flat) const;

    // Cache signature for symbol memoization.
    std::string signature() const;

    bool operator==(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_ && half_width_ == other.half_width_;
    }

private:
    int dim_;
    std::size_t n_;
    double half_width_;
    std::size_t size_;
};

enum class Space { Physical, Frequency };

// Complex samples on a Grid.  Frequency-space values follow the continuum
// convention g_hat(k) = (2 pi)^{-d/2} integral g(x) e^{-i k x} dx, so the
// discrete transform pair is unitary and Plancherel holds exactly on the
// grid: sum |g|^2 h^d = sum |g_hat|^2 (pi/L)^d.
struct Field {
    std::shared_ptr<const Grid> grid;
    std::vector<cplx> values;
    Space space = Space::Physical;

    static Field zeros(std::shared_ptr<const Grid> grid, Space space = Space::Physical);

    double measure() const; // h^d in physical space, (pi/L)^d in frequency space
    void check_same_layout(const Field& other) const;
};

enum class Direction { Forward, Inverse };

// Unitary discrete transform; flips the space tag.  The input is not modified.
Field transform(const Field& field, Direction direction);

// Raw little-endian complex-double snapshot next to a JSON sidecar carrying
// the grid geometry, space tag and time stamp.
void write_snapshot(const Field& field, const std::string& path_prefix, double time_stamp);
Field read_snapshot(const std::string& path_prefix, double* time_stamp = nullptr);

} // namespace fracdisp::spectral

#endif
