#pragma once

// Deterministic random streams and random quantum objects.
//
// The generator is SplitMix64 (Steele, Lea & Flood 2014). Distributions are
// implemented here rather than through <random> so that outputs are
// bit-identical across standard library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qre/matrix.hpp"
#include "qre/state.hpp"

namespace qre {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // [0, 1) with 53 random bits
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller
    double normal() noexcept {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx complex_normal() noexcept {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

private:
    std::uint64_t state_;
};

// Stream for record `index` of a run seeded with `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept { return seed ^ index; }

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(substream_seed(seed, index));
}

namespace random {

inline ComplexMatrix ginibre(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    return g;
}

// G G^dagger / tr, full rank with probability one
inline DensityMatrix density(std::size_t dim, SplitMix64& rng) {
    const auto g = ginibre(dim, rng);
    auto m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    return validate_density(m.hermitian_part());
}

// (G + G^dagger) / 2
inline Observable hermitian(std::size_t dim, SplitMix64& rng) { return Observable(ginibre(dim, rng).hermitian_part()); }

// Orthonormalize the columns of a rows x cols complex Gaussian matrix
// (modified Gram-Schmidt). Returns columns as vectors.
inline std::vector<std::vector<cplx>> isometry_columns(std::size_t rows, std::size_t cols, SplitMix64& rng) {
    std::vector<std::vector<cplx>> c(cols, std::vector<cplx>(rows));
    for (auto& col : c)
        for (auto& z : col) z = rng.complex_normal();
    for (std::size_t k = 0; k < cols; ++k) {
        for (std::size_t prev = 0; prev < k; ++prev) {
            const cplx proj = inner(c[prev], c[k]);
            for (std::size_t r = 0; r < rows; ++r) c[k][r] -= proj * c[prev][r];
        }
        double nrm = 0.0;
        for (const auto& z : c[k]) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (auto& z : c[k]) z /= nrm;
    }
    return c;
}

// Approximately Haar-distributed unitary from Gram-Schmidt of a Gaussian matrix.
inline ComplexMatrix unitary(std::size_t dim, SplitMix64& rng) {
    const auto cols = isometry_columns(dim, dim, rng);
    ComplexMatrix u(dim);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t r = 0; r < dim; ++r) u(r, k) = cols[k][r];
    return u;
}

} // namespace random
} // namespace qre
