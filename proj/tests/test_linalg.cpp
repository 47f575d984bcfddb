#include <doctest.h>

#include <vector>

#include "factorchoi/errors.hpp"
#include "factorchoi/linalg.hpp"
#include "factorchoi/random.hpp"
#include "support.hpp"

using namespace factorchoi;

TEST_CASE("kron follows the e_i (x) e_k -> i * dim + k basis order") {
  const CMatrix e11 = matrix_unit(2, 0, 0);
  const CMatrix k = kron(e11, e11);
  CHECK(k.rows() == 4);
  CHECK(k(0, 0) == Complex(1.0));
  CHECK(k.cwiseAbs().sum() == doctest::Approx(1.0));

  CHECK(max_abs_diff(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)), CMatrix::Identity(4, 4)) == 0.0);

  const CMatrix sx = testing::sigma_x();
  const CVector e1e1 = CVector::Unit(4, 0);
  CHECK(max_abs_diff(kron(sx, sx) * e1e1, CVector::Unit(4, 3)) == 0.0);

  const CMatrix rect = kron(CMatrix::Ones(2, 3), CMatrix::Ones(3, 1));
  CHECK(rect.rows() == 6);
  CHECK(rect.cols() == 3);
}

TEST_CASE("kron mixed-product property") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian(rng, 2, 3), b = random_gaussian(rng, 3, 2);
    const CMatrix c = random_gaussian(rng, 3, 2), d = random_gaussian(rng, 2, 3);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
    // bilinearity in the first slot
    const CMatrix a2 = random_gaussian(rng, 2, 3);
    CHECK(max_abs_diff(kron(a + 2.0 * a2, b), kron(a, b) + 2.0 * kron(a2, b)) <= 1e-12);
  }
}

TEST_CASE("hermitian_eig on fixed matrices") {
  const HermitianEig id = hermitian_eig(CMatrix::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));
  // Degenerate clusters use the canonical projected standard basis.
  CHECK(max_abs_diff(id.eigenvectors, CMatrix::Identity(4, 4)) <= 1e-14);

  const HermitianEig sx = hermitian_eig(testing::sigma_x());
  CHECK(sx.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1.0));

  // SWAP: symmetric subspace (dim 3) at +1, the singlet at -1.
  const HermitianEig sw = hermitian_eig(swap_operator(2));
  CHECK(sw.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sw.eigenvalues(1) == doctest::Approx(1.0));
  CHECK(sw.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(sw.eigenvalues(3) == doctest::Approx(-1.0));
  CVector singlet(4);
  singlet << 0, 1, -1, 0;
  singlet /= std::sqrt(2.0);
  CHECK(std::abs(std::abs(singlet.dot(sw.eigenvectors.col(3))) - 1.0) <= 1e-12);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_eig(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Rng rng(2);
  for (Eigen::Index dim : {1, 2, 5, 9, 16, 25, 36}) {
    const CMatrix m = random_hermitian(rng, dim);
    const HermitianEig eig = hermitian_eig(m);
    const CMatrix& v = eig.eigenvectors;
    const CMatrix rebuilt = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(operator_norm(rebuilt - m) <= 1e-10 * operator_norm(m));
    CHECK(max_abs_diff(v.adjoint() * v, CMatrix::Identity(dim, dim)) <= kTolAlg);
    for (Eigen::Index j = 1; j < dim; ++j) CHECK(eig.eigenvalues(j - 1) >= eig.eigenvalues(j));
  }
}

TEST_CASE("hermitian_eig is reproducible with degenerate spectra") {
  Rng rng(3);
  const CMatrix u = random_gaussian(rng, 6, 6).householderQr().householderQ();
  RVector spectrum(6);
  spectrum << 2, 2, 2, -1, -1, 0.5;
  const CMatrix m = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
  const HermitianEig a = hermitian_eig(m);
  const HermitianEig b = hermitian_eig(CMatrix(m));
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
}

TEST_CASE("subspace_coeffs examples") {
  std::vector<CVector> basis{CVector::Unit(3, 0), CVector::Unit(3, 1)};

  const SpanFit own = subspace_coeffs(basis[0], basis);
  REQUIRE(own);
  CHECK(std::abs(own.coefficients(0) - 1.0) <= 1e-14);
  CHECK(std::abs(own.coefficients(1)) <= 1e-14);

  const SpanFit zero = subspace_coeffs(CVector::Zero(3), basis);
  REQUIRE(zero);
  CHECK(zero.coefficients.norm() == 0.0);

  const SpanFit outside = subspace_coeffs(CVector::Unit(3, 2), basis);
  CHECK_FALSE(outside);
  CHECK(outside.residual == doctest::Approx(1.0));

  try {
    subspace_coeffs(CVector::Zero(4), basis);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("subspace_coeffs recombination reproduces members of a redundant frame") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CVector> basis;
    for (int i = 0; i < 3; ++i) basis.push_back(random_gaussian(rng, 10, 1));
    basis.push_back(basis[0] + basis[1]);  // rank deficient on purpose
    const CVector v = 0.3 * basis[0] - Complex(0, 2) * basis[2];
    const SpanFit fit = subspace_coeffs(v, basis);
    REQUIRE(fit);
    CVector recombined = CVector::Zero(10);
    for (std::size_t i = 0; i < basis.size(); ++i) recombined += fit.coefficients(static_cast<Eigen::Index>(i)) * basis[i];
    CHECK((recombined - v).norm() <= kTolAlg * std::max(1.0, v.norm()));
  }
}

TEST_CASE("vec, swap and phase helpers") {
  Rng rng(5);
  const CMatrix m = random_gaussian(rng, 3, 3);
  CHECK(max_abs_diff(unvec(vec(m), 3, 3), m) == 0.0);
  CHECK(vec(m)(1) == m(0, 1));

  const CVector a = random_gaussian(rng, 3, 1), b = random_gaussian(rng, 3, 1);
  CHECK(max_abs_diff(swap_operator(3) * kron(a, b), kron(b, a)) <= 1e-15);

  const CVector rotated = fix_phase(CVector(Complex(0, 1) * a), 1e-12);
  CHECK(rotated(0).imag() == doctest::Approx(0.0));
  CHECK(rotated(0).real() > 0.0);

  CHECK(sqrt_dim(16) == 4);
  CHECK_THROWS_AS(sqrt_dim(15), Error);
}
