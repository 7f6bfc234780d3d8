#pragma once

#include <cstdint>
#include <random>

#include "twoiso/weighted_space.hpp"

namespace twoiso {

/// Seeded generator used by randomized searches and tests.
using Rng = std::mt19937_64;

/// Independent standard complex Gaussian coefficients.
Vec random_vec(int dim, Rng& rng);

/// Random complex matrix with standard complex Gaussian entries.
Matrix random_matrix(int dim, Rng& rng);

/// Unitary with respect to the standard inner product, from the QR
/// decomposition of a Gaussian matrix with the phases of R's diagonal removed.
Matrix random_unitary(int dim, Rng& rng);

/// Uniform point of the unit circle.
Complex random_phase(Rng& rng);

}  // namespace twoiso
