#include "factorchoi/factor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "factorchoi/errors.hpp"

namespace factorchoi {

namespace {

void require_square_n(const FactorRep& rep, const CMatrix& a) {
  if (a.rows() != rep.n() || a.cols() != rep.n()) {
    throw Error(ErrorCode::DimensionMismatch, "expected an " + std::to_string(rep.n()) + "x" +
                                                  std::to_string(rep.n()) + " matrix");
  }
}

void require_vector_dim(const FactorRep& rep, const CVector& v) {
  if (v.size() != rep.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected a vector of length " + std::to_string(rep.dim()));
  }
}

}  // namespace

FactorRep::FactorRep(Eigen::Index n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)), x_(CVector::Zero(n * n)) {
  tracial_ = true;
  const double flat = 1.0 / static_cast<double>(n_);
  for (double w : weights_) {
    if (std::abs(w - flat) > 1e-14) tracial_ = false;
  }
  for (Eigen::Index i = 0; i < n_; ++i) {
    x_(i * n_ + i) = std::sqrt(weights_[static_cast<std::size_t>(i)]);
  }
  e_ = x_ * x_.adjoint();
}

FactorRep FactorRep::tracial(Eigen::Index n) {
  if (n < 2) throw Error(ErrorCode::BadWeights, "factor dimension must be at least 2");
  return FactorRep(n, std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)));
}

FactorRep FactorRep::weighted(Eigen::Index n, std::span<const double> weights) {
  if (n < 2) throw Error(ErrorCode::BadWeights, "factor dimension must be at least 2");
  if (static_cast<Eigen::Index>(weights.size()) != n) {
    throw Error(ErrorCode::BadWeights, "expected " + std::to_string(n) + " weights, got " +
                                           std::to_string(weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    // x must have full Schmidt support to be separating and cyclic.
    if (!std::isfinite(w) || w <= 0.0) {
      throw Error(ErrorCode::BadWeights, "weights must be finite and strictly positive");
    }
    total += w;
  }
  std::vector<double> normalized(weights.begin(), weights.end());
  for (double& w : normalized) w /= total;
  return FactorRep(n, std::move(normalized));
}

StateVector projection_E(const FactorRep& rep) { return {rep.x(), rep.E()}; }

CMatrix embed(const FactorRep& rep, const CMatrix& a, Side side) {
  require_square_n(rep, a);
  const CMatrix id = CMatrix::Identity(rep.n(), rep.n());
  return side == Side::Factor ? kron(id, a) : kron(a, id);
}

Complex omega(const FactorRep& rep, const CMatrix& a) {
  require_square_n(rep, a);
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < rep.n(); ++i) sum += rep.weights()[static_cast<std::size_t>(i)] * a(i, i);
  return sum;
}

CMatrix implementer_from_vector(const FactorRep& rep, const CVector& y) {
  require_vector_dim(rep, y);
  const CMatrix ymat = unvec(y, rep.n(), rep.n());
  CMatrix s = ymat.transpose();
  for (Eigen::Index i = 0; i < rep.n(); ++i) {
    s.col(i) /= std::sqrt(rep.weights()[static_cast<std::size_t>(i)]);
  }
  return s;
}

CVector modular_J_apply(const FactorRep& rep, const CVector& v) {
  if (!rep.is_tracial()) {
    throw Error(ErrorCode::NotTracial, "modular conjugation is only provided for the tracial state");
  }
  require_vector_dim(rep, v);
  return vec(unvec(v, rep.n(), rep.n()).adjoint());
}

CMatrix conjugate_by_J(const FactorRep& rep, const CMatrix& t) {
  if (t.rows() != rep.dim() || t.cols() != rep.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not act on C^n (x) C^n");
  }
  CMatrix out(rep.dim(), rep.dim());
  for (Eigen::Index k = 0; k < rep.dim(); ++k) {
    const CVector basis = CVector::Unit(rep.dim(), k);
    out.col(k) = modular_J_apply(rep, t * modular_J_apply(rep, basis));
  }
  return out;
}

}  // namespace factorchoi
