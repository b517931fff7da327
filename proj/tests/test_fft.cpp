#include <cmath>

#include "doctest.h"
#include "qdrive/fft.hpp"
#include "qdrive/rng.hpp"
#include "test_util.hpp"

using namespace qdrive;

namespace {

std::vector<cplx> random_vector(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(size);
    for (auto& x : v) {
        x = cplx{rng.normal(), rng.normal()};
    }
    return v;
}

/// Unnormalized direct DFT, sign -1 forward.
std::vector<cplx> direct_dft(const std::vector<cplx>& in, double sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            out[k] += in[j] * std::polar(1.0, sign * 2.0 * M_PI *
                                                  static_cast<double>(j * k) /
                                                  static_cast<double>(n));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("forward fft matches the direct DFT") {
    for (std::size_t size : {1u, 2u, 8u, 64u}) {
        auto v = random_vector(size, size);
        const auto expected = direct_dft(v, -1.0);
        fft_forward(v);
        CHECK(test::max_amp_diff(v, expected) < 1e-10);
    }
}

TEST_CASE("inverse fft undoes forward") {
    auto v = random_vector(256, 5);
    const auto original = v;
    fft_forward(v);
    fft_inverse(v);
    CHECK(test::max_amp_diff(v, original) < 1e-12);
}

TEST_CASE("Parseval holds for the unnormalized convention") {
    auto v = random_vector(128, 9);
    double before = 0.0;
    for (const auto& x : v) {
        before += std::norm(x);
    }
    fft_forward(v);
    double after = 0.0;
    for (const auto& x : v) {
        after += std::norm(x);
    }
    CHECK(after == doctest::Approx(before * 128.0).epsilon(1e-12));
}

TEST_CASE("non-power-of-two lengths are rejected") {
    std::vector<cplx> v(6, cplx{1.0, 0.0});
    CHECK_THROWS(fft_forward(v));
}
