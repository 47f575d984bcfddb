#pragma once

// The *-algebra C of finite-rank operators sum_i (1 (x) A_i) E (1 (x) B_i)
// over a standard-form factor, kept symbolically as a list of n x n pairs.

#include <utility>
#include <vector>

#include "factorchoi/factor.hpp"
#include "factorchoi/linalg.hpp"

namespace factorchoi {

struct Term {
  CMatrix left;   // A_i
  CMatrix right;  // B_i
};

class CElement {
 public:
  /// Zero element over `rep`.
  explicit CElement(FactorRep rep);
  /// Throws DimensionMismatch unless every matrix is n x n.
  CElement(FactorRep rep, std::vector<Term> terms);

  const FactorRep& rep() const noexcept { return rep_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  CElement scaled(Complex c) const;

 private:
  FactorRep rep_;
  std::vector<Term> terms_;
};

/// Term-wise (A, B) -> (B^dagger, A^dagger).
CElement c_adjoint(const CElement& e);

/// Product via (A E B)(C E D) = omega(BC) A E D over all term pairs.
/// Throws RepMismatch.
CElement c_multiply(const CElement& lhs, const CElement& rhs);

/// Concatenation of term lists. Throws RepMismatch.
CElement c_add(const CElement& lhs, const CElement& rhs);

/// Dense n^2 x n^2 operator sum_i (1 (x) A_i) E (1 (x) B_i).
CMatrix c_materialize(const CElement& e);

/// Reduces the term list to at most n^2 terms by expressing the left factors
/// in a basis of their span. Never applied implicitly.
CElement compress(const CElement& e, double tol = kTolAlg);

/// G_ij = omega(B_i A_j). The coefficient matrix of T^m in the frame
/// {A_i E B_j} is G^(m-1).
CMatrix gram_matrix(const CElement& e);

/// sum_ij coeffs(i, j) (1 (x) A_i) E (1 (x) B_j), using the terms of `frame`.
CElement from_frame_coefficients(const CElement& frame, const CMatrix& coeffs);

/// Vectorized frame {(1 (x) A_i) E (1 (x) B_j)} over all (i, j), i major.
std::vector<CVector> frame_vectors(const CElement& e);

/// A rank-one projection F <= P in C. Tries matrix units e_kl in row-major
/// order and uses the first with ||P (1 (x) e_kl) x|| > tol, returning
/// P e_kl E e_kl^dagger P / ||P (1 (x) e_kl) x||^2.
/// Throws NotAProjection, ZeroProjection.
CElement rank1_subprojection(const CElement& p, double tol = kTolAlg);

/// Splits a projection in C into mutually orthogonal rank-one projections by
/// repeated rank1_subprojection.
std::vector<CElement> split_into_rank1(const CElement& p, double tol = kTolAlg);

/// S in M_n with P = (1 (x) S) E (1 (x) S^dagger), normalized so that
/// omega(S^dagger S) = 1 and phase-fixed through the range vector of P.
/// Throws NotRankOneProjection.
CMatrix rank1_implementer(const CElement& p, double tol = kTolAlg);

struct SpectralItem {
  double c;   // nonzero eigenvalue
  CMatrix S;  // S E S^dagger is the rank-one spectral projection
};

struct SpectralDecomposition {
  std::vector<SpectralItem> items;  // descending c
  // Largest span-membership residual over the eigenvalue-cluster projections,
  // measured against span{(1 (x) A_i) E (1 (x) B_j)} of the input terms.
  double max_membership_residual = 0.0;
  std::size_t cluster_count = 0;
};

/// T = sum_j c_j (1 (x) S_j) E (1 (x) S_j^dagger) for self-adjoint T in C.
/// Throws NotSelfAdjoint.
SpectralDecomposition spectral_decompose(const CElement& t, double tol = kTolAlg);

/// Dense reconstruction sum_j c_j (1 (x) S_j) E (1 (x) S_j^dagger).
CMatrix reconstruct(const FactorRep& rep, const SpectralDecomposition& sd);

}  // namespace factorchoi
