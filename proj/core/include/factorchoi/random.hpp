#pragma once

#include <cstdint>
#include <random>

#include "factorchoi/linalg.hpp"

namespace factorchoi {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Uniformly distributed unit vector in C^dim.
CVector random_unit_vector(Rng& rng, Eigen::Index dim);

/// Random Hermitian matrix (G + G^dagger) / 2.
CMatrix random_hermitian(Rng& rng, Eigen::Index dim);

/// Random positive semidefinite matrix G G^dagger / dim of the given rank.
CMatrix random_psd(Rng& rng, Eigen::Index dim, Eigen::Index rank);

}  // namespace factorchoi
