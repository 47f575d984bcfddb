#pragma once

// Dense complex matrix substrate shared by every other module.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace factorchoi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Default relative tolerance for algebraic identities (scaled by operator norm).
inline constexpr double kTolAlg = 1e-10;

/// Kronecker product. Basis order: e_i (x) e_k maps to index i * dim(b) + k.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Largest entry modulus of m - m^dagger.
double hermitian_defect(const CMatrix& m);

/// Spectral (operator 2-) norm.
double operator_norm(const CMatrix& m);

/// Largest entry modulus of a - b; dimensions must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

struct HermitianEig {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // orthonormal columns, column j pairs with eigenvalues(j)
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian if
/// max|m - m^dagger| > tol * max(1, ||m||).
///
/// Eigenvalues come out in descending order. Within a degenerate cluster
/// (eigenvalues within tol * max(1, ||m||)) the basis is canonicalized by
/// projecting the standard basis vectors onto the eigenspace in index order
/// and orthonormalizing with modified Gram-Schmidt, so output does not depend
/// on the solver's arbitrary choice inside an eigenspace.
HermitianEig hermitian_eig(const CMatrix& m, double tol = kTolAlg);

/// Smallest eigenvalue of a Hermitian matrix (no canonicalization).
double min_eigenvalue(const CMatrix& m, double tol = kTolAlg);

/// Least-squares fit of v in the span of `basis`.
struct SpanFit {
  CVector coefficients;
  double residual = 0.0;
  bool in_span = false;

  explicit operator bool() const noexcept { return in_span; }
};

/// Returns the least-squares coefficients c; in_span is set when
/// ||v - sum c_i basis_i|| <= tol * max(1, ||v||), otherwise `residual`
/// reports the distance. Throws DimensionMismatch on length mismatch.
SpanFit subspace_coeffs(const CVector& v, std::span<const CVector> basis, double tol = kTolAlg);

/// Numerical rank of the matrix whose columns are the given vectors.
Eigen::Index span_dimension(std::span<const CVector> vectors, double tol = kTolAlg);

/// Row-major flattening: entry (i, k) lands at i * cols + k.
CVector vec(const CMatrix& m);

/// Inverse of vec() for a rows x cols matrix.
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

/// Swap unitary W on C^n (x) C^n: W (a (x) b) = b (x) a.
CMatrix swap_operator(Eigen::Index n);

/// Matrix unit e_ij (zero-based) in M_n.
CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

/// Rotates v by a global phase so that its first entry with modulus > tol is
/// real and positive. Zero vectors are returned unchanged.
CVector fix_phase(const CVector& v, double tol);
CMatrix fix_phase(const CMatrix& m, double tol);

/// Integer square root for n^2-dimensional spaces; throws DimensionMismatch if
/// dim is not a perfect square.
Eigen::Index sqrt_dim(Eigen::Index dim);

}  // namespace factorchoi
