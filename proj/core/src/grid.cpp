#include "qdrive/grid.hpp"

#include <cmath>

namespace qdrive {

double SpatialGrid::dk() const {
    return 2.0 * M_PI / (static_cast<double>(size()) * dx());
}

double SpatialGrid::k_fft(std::uint64_t m) const {
    const auto half = size() / 2;
    const double idx = (m < half) ? static_cast<double>(m)
                                  : static_cast<double>(m) - static_cast<double>(size());
    return idx * dk();
}

std::vector<double> SpatialGrid::x_values() const {
    std::vector<double> xs(size());
    for (std::uint64_t j = 0; j < size(); ++j) {
        xs[j] = x(j);
    }
    return xs;
}

std::vector<double> SpatialGrid::k_fft_values() const {
    std::vector<double> ks(size());
    for (std::uint64_t m = 0; m < size(); ++m) {
        ks[m] = k_fft(m);
    }
    return ks;
}

}  // namespace qdrive
