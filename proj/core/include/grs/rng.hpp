#pragma once

#include <cstdint>
#include <random>

#include "grs/mat.hpp"

namespace grs {

/// Stateless 64-bit mixer; used to derive independent per-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Engine for substream `stream` of master seed `seed`. Streams derived from
/// the same seed are decorrelated, and the mapping is stable across runs, so
/// serial and parallel consumers see identical draws.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform on the unit sphere in R^dim.
Vec sample_unit_sphere(Index dim, std::mt19937_64& rng);

/// Uniform in the closed unit 2-norm ball in R^dim.
Vec sample_unit_ball(Index dim, std::mt19937_64& rng);

/// Uniform in the closed unit 1-norm ball in R^dim (exponential-spacings
/// simplex sampling with independent random signs).
Vec sample_cross_polytope(Index dim, std::mt19937_64& rng);

/// Matrix with independent standard normal entries.
Mat sample_gaussian(Index rows, Index cols, std::mt19937_64& rng);

/// Haar-ish random orthonormal matrix (QR of a Gaussian matrix with sign fix).
Mat random_orthonormal(Index n, std::mt19937_64& rng);

}  // namespace grs
