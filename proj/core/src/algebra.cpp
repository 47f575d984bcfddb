#include "factorchoi/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "factorchoi/errors.hpp"

namespace factorchoi {

namespace {

void require_same_rep(const CElement& a, const CElement& b) {
  if (!(a.rep() == b.rep())) {
    throw Error(ErrorCode::RepMismatch, "elements live over different factor representations");
  }
}

// (1 (x) a) x, computed without forming the n^2 x n^2 embedding.
CVector factor_times_x(const FactorRep& rep, const CMatrix& a) {
  // (1 (x) a) x <-> matrix Y with Y_ik = sqrt(w_i) a_ki.
  CMatrix y = a.transpose();
  for (Eigen::Index i = 0; i < rep.n(); ++i) {
    y.row(i) *= std::sqrt(rep.weights()[static_cast<std::size_t>(i)]);
  }
  return vec(y);
}

// Rank-one building block (1 (x) a) E (1 (x) b) = |a x><b^dagger x|.
CMatrix frame_operator(const FactorRep& rep, const CMatrix& a, const CMatrix& b) {
  return factor_times_x(rep, a) * factor_times_x(rep, b.adjoint()).adjoint();
}

double projection_defect(const CMatrix& m) {
  return std::max(hermitian_defect(m), max_abs_diff(m * m, m));
}

}  // namespace

CElement::CElement(FactorRep rep) : rep_(std::move(rep)) {}

CElement::CElement(FactorRep rep, std::vector<Term> terms)
    : rep_(std::move(rep)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.left.rows() != rep_.n() || t.left.cols() != rep_.n() || t.right.rows() != rep_.n() ||
        t.right.cols() != rep_.n()) {
      throw Error(ErrorCode::DimensionMismatch, "term matrices must be n x n");
    }
  }
}

CElement CElement::scaled(Complex c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.left *= c;
  return CElement(rep_, std::move(out));
}

CElement c_adjoint(const CElement& e) {
  std::vector<Term> out;
  out.reserve(e.size());
  for (const auto& t : e.terms()) out.push_back({t.right.adjoint(), t.left.adjoint()});
  return CElement(e.rep(), std::move(out));
}

CElement c_multiply(const CElement& lhs, const CElement& rhs) {
  require_same_rep(lhs, rhs);
  std::vector<Term> out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs.terms()) {
    for (const auto& b : rhs.terms()) {
      out.push_back({omega(lhs.rep(), a.right * b.left) * a.left, b.right});
    }
  }
  return CElement(lhs.rep(), std::move(out));
}

CElement c_add(const CElement& lhs, const CElement& rhs) {
  require_same_rep(lhs, rhs);
  std::vector<Term> out = lhs.terms();
  out.insert(out.end(), rhs.terms().begin(), rhs.terms().end());
  return CElement(lhs.rep(), std::move(out));
}

CMatrix c_materialize(const CElement& e) {
  CMatrix out = CMatrix::Zero(e.rep().dim(), e.rep().dim());
  for (const auto& t : e.terms()) out += frame_operator(e.rep(), t.left, t.right);
  return out;
}

CElement compress(const CElement& e, double tol) {
  if (e.empty()) return e;
  const Eigen::Index n = e.rep().n();
  const auto k = static_cast<Eigen::Index>(e.size());
  CMatrix lefts(n * n, k);
  for (Eigen::Index i = 0; i < k; ++i) lefts.col(i) = vec(e.terms()[static_cast<std::size_t>(i)].left);

  Eigen::ColPivHouseholderQR<CMatrix> qr(lefts);
  qr.setThreshold(tol);
  const Eigen::Index rank = qr.rank();
  if (rank == 0) return CElement(e.rep());

  CMatrix basis(n * n, rank);
  for (Eigen::Index p = 0; p < rank; ++p) basis.col(p) = lefts.col(qr.colsPermutation().indices()(p));
  // lefts ~= basis * alpha
  const CMatrix alpha = basis.colPivHouseholderQr().solve(lefts);

  std::vector<Term> out;
  out.reserve(static_cast<std::size_t>(rank));
  for (Eigen::Index p = 0; p < rank; ++p) {
    CMatrix right = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < k; ++i) right += alpha(p, i) * e.terms()[static_cast<std::size_t>(i)].right;
    out.push_back({unvec(basis.col(p), n, n), std::move(right)});
  }
  return CElement(e.rep(), std::move(out));
}

CMatrix gram_matrix(const CElement& e) {
  const auto k = static_cast<Eigen::Index>(e.size());
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = omega(e.rep(), e.terms()[static_cast<std::size_t>(i)].right *
                                   e.terms()[static_cast<std::size_t>(j)].left);
    }
  }
  return g;
}

CElement from_frame_coefficients(const CElement& frame, const CMatrix& coeffs) {
  const auto k = static_cast<Eigen::Index>(frame.size());
  if (coeffs.rows() != k || coeffs.cols() != k) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be k x k");
  }
  std::vector<Term> out;
  out.reserve(frame.size() * frame.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out.push_back({coeffs(i, j) * frame.terms()[static_cast<std::size_t>(i)].left,
                     frame.terms()[static_cast<std::size_t>(j)].right});
    }
  }
  return CElement(frame.rep(), std::move(out));
}

std::vector<CVector> frame_vectors(const CElement& e) {
  std::vector<CVector> out;
  out.reserve(e.size() * e.size());
  for (const auto& a : e.terms()) {
    for (const auto& b : e.terms()) {
      out.push_back(vec(frame_operator(e.rep(), a.left, b.right)));
    }
  }
  return out;
}

CElement rank1_subprojection(const CElement& p, double tol) {
  const CMatrix pm = c_materialize(p);
  if (operator_norm(pm) <= tol) throw Error(ErrorCode::ZeroProjection, "projection is zero");
  if (projection_defect(pm) > 10.0 * tol * std::max(1.0, operator_norm(pm))) {
    throw Error(ErrorCode::NotAProjection, "element is not a projection within tolerance");
  }
  const FactorRep& rep = p.rep();
  const Eigen::Index n = rep.n();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const CMatrix a = matrix_unit(n, k, l);
      const double weight = (pm * factor_times_x(rep, a)).squaredNorm();
      if (std::sqrt(weight) <= tol) continue;
      const CElement probe(rep, {Term{a, a.adjoint()}});
      return c_multiply(c_multiply(p, probe), p).scaled(1.0 / weight);
    }
  }
  // Unreachable for a nonzero projection since x is cyclic.
  throw Error(ErrorCode::ZeroProjection, "no matrix unit reaches the range of P");
}

std::vector<CElement> split_into_rank1(const CElement& p, double tol) {
  const CMatrix pm = c_materialize(p);
  const auto rank = static_cast<long>(std::llround(pm.trace().real()));
  std::vector<CElement> out;
  CElement rest = compress(p, tol);
  for (long r = 0; r < rank; ++r) {
    CElement f = compress(rank1_subprojection(rest, tol), tol);
    rest = compress(c_add(rest, f.scaled(-1.0)), tol);
    out.push_back(std::move(f));
  }
  return out;
}

CMatrix rank1_implementer(const CElement& p, double tol) {
  const CMatrix pm = c_materialize(p);
  const double scale = std::max(1.0, operator_norm(pm));
  if (projection_defect(pm) > 10.0 * tol * scale ||
      std::abs(pm.trace() - Complex(1.0)) > 10.0 * tol * scale) {
    throw Error(ErrorCode::NotRankOneProjection, "element is not a rank-one projection");
  }
  const HermitianEig eig = hermitian_eig(pm, 10.0 * tol);
  const CVector y = fix_phase(CVector(eig.eigenvectors.col(0)), tol);
  const CMatrix s0 = implementer_from_vector(p.rep(), y);
  const double norm = omega(p.rep(), s0.adjoint() * s0).real();
  return s0 / std::sqrt(norm);
}

SpectralDecomposition spectral_decompose(const CElement& t, double tol) {
  const CMatrix tm = c_materialize(t);
  const double norm = operator_norm(tm);
  if (hermitian_defect(tm) > tol * std::max(1.0, norm)) {
    throw Error(ErrorCode::NotSelfAdjoint, "element is not self-adjoint");
  }
  const HermitianEig eig = hermitian_eig(tm, tol);
  const FactorRep& rep = t.rep();
  const double zero_tol = tol * std::max(1.0, norm);
  const double cluster_tol = 1e-8 * norm;

  SpectralDecomposition sd;
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < eig.eigenvalues.size(); ++j) {
    const double c = eig.eigenvalues(j);
    if (std::abs(c) <= zero_tol) continue;
    const CVector y = fix_phase(CVector(eig.eigenvectors.col(j)), tol);
    sd.items.push_back({c, implementer_from_vector(rep, y)});
    support.push_back(j);
  }

  // Every spectral projection must lie in span{A_i E B_j}.
  const std::vector<CVector> frame = frame_vectors(t);
  std::size_t start = 0;
  while (start < support.size()) {
    std::size_t end = start + 1;
    while (end < support.size() &&
           eig.eigenvalues(support[end - 1]) - eig.eigenvalues(support[end]) <= cluster_tol) {
      ++end;
    }
    CMatrix proj = CMatrix::Zero(rep.dim(), rep.dim());
    for (std::size_t j = start; j < end; ++j) {
      const CVector y = eig.eigenvectors.col(support[j]);
      proj += y * y.adjoint();
    }
    const SpanFit fit = subspace_coeffs(vec(proj), frame, tol);
    sd.max_membership_residual = std::max(sd.max_membership_residual, fit.residual);
    ++sd.cluster_count;
    start = end;
  }
  return sd;
}

CMatrix reconstruct(const FactorRep& rep, const SpectralDecomposition& sd) {
  CMatrix out = CMatrix::Zero(rep.dim(), rep.dim());
  for (const auto& item : sd.items) out += item.c * frame_operator(rep, item.S, item.S.adjoint());
  return out;
}

}  // namespace factorchoi
