#include "factorchoi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "factorchoi/errors.hpp"

namespace factorchoi {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermitian_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hermiticity requires a square matrix");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "shape mismatch in comparison");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const CMatrix& m, double tol, double norm) {
  const double defect = hermitian_defect(m);
  if (defect > tol * std::max(1.0, norm)) {
    throw Error(ErrorCode::NotHermitian,
                "max|m - m^dagger| = " + std::to_string(defect) + " exceeds tolerance");
  }
}

// Orthonormal basis of span(cluster) built from projected standard basis
// vectors, taken in index order.
CMatrix canonical_cluster_basis(const CMatrix& cluster) {
  const Eigen::Index dim = cluster.rows();
  const Eigen::Index rank = cluster.cols();
  CMatrix basis(dim, rank);
  Eigen::Index found = 0;
  for (Eigen::Index k = 0; k < dim && found < rank; ++k) {
    // P e_k = Q (Q^dagger e_k) = Q * conj(row k of Q)^T
    CVector w = cluster * cluster.row(k).adjoint();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index p = 0; p < found; ++p) {
        w -= basis.col(p) * basis.col(p).dot(w);
      }
    }
    const double norm = w.norm();
    if (norm > 1e-6) {
      basis.col(found++) = w / norm;
    }
  }
  if (found < rank) return cluster;  // degenerate numerics; keep solver output
  return basis;
}

}  // namespace

HermitianEig hermitian_eig(const CMatrix& m, double tol) {
  const double norm = operator_norm(m);
  require_hermitian(m, tol, norm);
  const CMatrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  const Eigen::Index dim = m.rows();

  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();

  const double cluster_tol = tol * std::max(1.0, norm);
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index end = start + 1;
    while (end < dim && out.eigenvalues(end - 1) - out.eigenvalues(end) <= cluster_tol) ++end;
    const Eigen::Index size = end - start;
    if (size > 1) {
      out.eigenvectors.middleCols(start, size) =
          canonical_cluster_basis(out.eigenvectors.middleCols(start, size));
    } else {
      out.eigenvectors.col(start) = fix_phase(CVector(out.eigenvectors.col(start)), tol);
    }
    start = end;
  }
  return out;
}

double min_eigenvalue(const CMatrix& m, double tol) {
  require_hermitian(m, tol, operator_norm(m));
  const CMatrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

SpanFit subspace_coeffs(const CVector& v, std::span<const CVector> basis, double tol) {
  for (const auto& b : basis) {
    if (b.size() != v.size()) {
      throw Error(ErrorCode::DimensionMismatch, "basis vector length differs from target");
    }
  }
  SpanFit fit;
  const double scale = std::max(1.0, v.norm());
  if (basis.empty()) {
    fit.residual = v.norm();
    fit.in_span = fit.residual <= tol * scale;
    return fit;
  }
  CMatrix frame(v.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) frame.col(static_cast<Eigen::Index>(i)) = basis[i];

  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(frame);
  fit.coefficients = cod.solve(v);
  fit.residual = (v - frame * fit.coefficients).norm();
  fit.in_span = fit.residual <= tol * scale;
  return fit;
}

Eigen::Index span_dimension(std::span<const CVector> vectors, double tol) {
  if (vectors.empty()) return 0;
  CMatrix frame(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != frame.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "vectors of unequal length");
    }
    frame.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  Eigen::BDCSVD<CMatrix> svd(frame);
  const RVector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  return (sv.array() > tol * sv(0)).count();
}

CVector vec(const CMatrix& m) {
  CVector out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out(i * m.cols() + k) = m(i, k);
  }
  return out;
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match requested shape");
  }
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) out(i, k) = v(i * cols + k);
  }
  return out;
}

CMatrix swap_operator(Eigen::Index n) {
  CMatrix w = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) w(b * n + a, a * n + b) = 1.0;
  }
  return w;
}

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

namespace {

template <typename Dense>
Dense rotate_first_entry(const Dense& m, double tol) {
  for (Eigen::Index idx = 0; idx < m.size(); ++idx) {
    // Row-major scan so matrices follow the same convention as vec().
    const Eigen::Index r = m.cols() == 1 ? idx : idx / m.cols();
    const Eigen::Index c = m.cols() == 1 ? 0 : idx % m.cols();
    const Complex z = m(r, c);
    if (std::abs(z) > tol) return m * (std::abs(z) / z);
  }
  return m;
}

}  // namespace

CVector fix_phase(const CVector& v, double tol) { return rotate_first_entry(v, tol); }
CMatrix fix_phase(const CMatrix& m, double tol) { return rotate_first_entry(m, tol); }

Eigen::Index sqrt_dim(Eigen::Index dim) {
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (n < 1 || n * n != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension " + std::to_string(dim) + " is not of the form n^2");
  }
  return n;
}

}  // namespace factorchoi
