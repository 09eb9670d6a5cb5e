#pragma once

#include "linepack/frames.hpp"

#include <cstdint>
#include <random>

// Seeded generators for property checks. Everything takes the engine by
// reference so callers control reproducibility.
namespace linepack::sampling {

using Engine = std::mt19937_64;

Vec random_unit(std::size_t n, Engine& rng);

/// m independent uniformly distributed unit vectors in R^n.
UnitVectorSystem random_unit_system(std::size_t m, std::size_t n, Engine& rng);

/// Haar-ish orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
Matrix random_orthogonal(std::size_t n, Engine& rng);

/// Applies q to every vector.
UnitVectorSystem rotate(const UnitVectorSystem& x, const Matrix& q);

/// Random permutation plus independent sign flips.
UnitVectorSystem shuffle_and_flip(const UnitVectorSystem& x, Engine& rng);

} // namespace linepack::sampling
