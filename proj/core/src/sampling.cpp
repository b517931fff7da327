#include "qdrive/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "qdrive/rng.hpp"

namespace qdrive {

std::uint64_t CountsHistogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [index, count] : counts) {
        t += count;
    }
    return t;
}

CountsHistogram sample(const QubitState& state, std::uint64_t shots, double flip_probability,
                       std::uint64_t seed) {
    if (shots < 1) {
        throw Error("sample: shots must be >= 1");
    }
    if (flip_probability < 0.0 || flip_probability > 1.0) {
        throw Error("sample: flip probability must be in [0, 1]");
    }

    const std::uint64_t dim = state.dim();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        acc += std::norm(state[i]);
        cdf[i] = acc;
    }
    // acc == 1 up to rounding for normalized states; dividing keeps the draw fair.
    const double total = acc;

    Rng rng(seed);
    const int n = state.num_qubits();
    CountsHistogram hist;
    hist.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double r = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        std::uint64_t outcome =
            static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        if (outcome >= dim) {
            outcome = dim - 1;
        }
        if (flip_probability > 0.0) {
            for (int q = 0; q < n; ++q) {
                if (rng.uniform() < flip_probability) {
                    outcome ^= std::uint64_t{1} << q;
                }
            }
        }
        ++hist.counts[outcome];
    }
    return hist;
}

}  // namespace qdrive
