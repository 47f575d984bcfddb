#include "factorchoi/random.hpp"

#include <cmath>

namespace factorchoi {

CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  // Fill row by row so the stream order is independent of Eigen's storage order.
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

CVector random_unit_vector(Rng& rng, Eigen::Index dim) {
  CVector v = random_gaussian(rng, dim, 1);
  return v / v.norm();
}

CMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  const CMatrix g = random_gaussian(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_psd(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
  const CMatrix g = random_gaussian(rng, dim, rank);
  return g * g.adjoint() / static_cast<double>(dim);
}

}  // namespace factorchoi
