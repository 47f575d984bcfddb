#pragma once

// Linear maps phi(C) = sum_i A_i C B_i on M_n and their matrix pictures:
// transfer matrix, Choi matrix C_phi, and the operator
// D_phi = sum_i (1 (x) B_i) E (1 (x) A_i) in the algebra C.

#include <cstdint>
#include <vector>

#include "factorchoi/algebra.hpp"
#include "factorchoi/factor.hpp"
#include "factorchoi/linalg.hpp"

namespace factorchoi {

class PairSumMap {
 public:
  /// Zero map on M_n.
  explicit PairSumMap(Eigen::Index n);
  /// Throws DimensionMismatch unless every matrix is n x n.
  PairSumMap(Eigen::Index n, std::vector<Term> terms);

  Eigen::Index n() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  PairSumMap scaled(Complex c) const;
  /// Term-list concatenation, i.e. the map sum.
  PairSumMap plus(const PairSumMap& other) const;

 private:
  Eigen::Index n_;
  std::vector<Term> terms_;
};

/// Matrix of the map on row-major vectorized inputs: T vec(C) = vec(phi(C)).
/// Equality of maps means equality of transfer matrices.
struct TransferMatrix {
  CMatrix matrix;

  Eigen::Index n() const { return sqrt_dim(matrix.rows()); }
};

struct KrausDecomposition {
  std::vector<CMatrix> ops;      // V_j, with phi(C) = sum_j V_j^dagger C V_j
  std::vector<double> weights;   // eigenvalues c_j of D_phi, V_j = sqrt(c_j) S_j
  double residual = 0.0;         // max entry error of the reconstructed transfer matrix
};

CMatrix apply_map(const PairSumMap& phi, const CMatrix& c);

/// (A_i, B_i) -> (B_i, A_i); the trace-pairing dual.
PairSumMap adjoint_map(const PairSumMap& phi);

/// sum_i A_i (x) B_i^T.
TransferMatrix transfer(const PairSumMap& phi);

/// Transfer matrix of the trace-pairing dual: W T^T W.
TransferMatrix transfer_adjoint(const TransferMatrix& t);

/// Applies a transfer matrix to an n x n matrix.
CMatrix apply_transfer(const TransferMatrix& t, const CMatrix& c);

/// C_phi = sum_ij e_ij (x) phi(e_ij).
CMatrix choi(const PairSumMap& phi);

/// Reads the transfer matrix off a Choi matrix (block (i, j) is phi(e_ij)).
TransferMatrix transfer_from_choi(const CMatrix& choi_matrix);

/// D_phi as a symbolic element of C, terms (B_i, A_i).
CElement dphi_element(const PairSumMap& phi, const FactorRep& rep);

/// D_phi = sum_i (1 (x) B_i) E (1 (x) A_i). With the unit vector x and the
/// tracial state this equals (1/n) C_{phi*}.
CMatrix dphi(const PairSumMap& phi, const FactorRep& rep);

/// Inverse of phi -> D_phi at the tracial state: n d is the Choi matrix of
/// phi*, whose adjoint is returned. Throws NotTracial, DimensionMismatch.
TransferMatrix map_from_dphi(const CMatrix& d, const FactorRep& rep);

/// Kraus operators from the spectral decomposition of D_phi.
/// Throws NotPositiveError when min eig D_phi < -tol * max(1, ||D_phi||),
/// NotHermitian when D_phi is not self-adjoint.
KrausDecomposition kraus_from_dphi(const PairSumMap& phi, const FactorRep& rep, double tol = kTolAlg);

/// {(V_j^dagger, V_j)}.
PairSumMap map_from_kraus(Eigen::Index n, const std::vector<CMatrix>& ops);

struct ExtensionReport {
  bool positive = false;
  bool hermitian = true;       // every output was self-adjoint within tolerance
  double min_eigenvalue = 0.0; // over all probed inputs (Hermitian part)
  std::size_t inputs = 0;
};

/// Evaluates C -> sum_i (1 (x) A_i) C (1 (x) B_i) on B(C^n (x) C^n) for the
/// tracial E and `trials` random positive inputs.
ExtensionReport extend_to_BH_check(const PairSumMap& phi, std::size_t trials = 64, double tol = 1e-9,
                                   std::uint64_t seed = 42);

/// (iota (x) phi) evaluated blockwise through the transfer matrix, on the
/// tracial E and `trials` random positive inputs.
ExtensionReport amplification_check(const PairSumMap& phi, std::size_t trials = 64, double tol = 1e-9,
                                    std::uint64_t seed = 43);

struct CpReport {
  bool amplification_positive = false;  // (i)   iota (x) phi positive on probes
  bool extension_positive = false;      // (ii)  extension to B(H) positive on probes
  bool kraus_form = false;              // (iii) Kraus extraction succeeded and reconstructs
  bool dphi_psd = false;                // (iv)  D_phi >= 0
  bool choi_psd = false;                // (v)   C_phi >= 0
  double min_eig_dphi = 0.0;            // Hermitian part when D_phi is not self-adjoint
  double min_eig_choi = 0.0;
  double extension_min_eig = 0.0;
  double amplification_min_eig = 0.0;
  std::size_t kraus_count = 0;

  bool agree() const;
  bool completely_positive() const { return dphi_psd; }
};

/// Evaluates all five conditions without enforcing agreement.
CpReport cp_conditions(const PairSumMap& phi, double tol = 1e-9, std::size_t trials = 64,
                       std::uint64_t seed = 42);

/// cp_conditions plus the agreement check; throws InternalDisagreement.
CpReport is_cp(const PairSumMap& phi, double tol = 1e-9, std::size_t trials = 64, std::uint64_t seed = 42);

struct AdjointChoiReport {
  double swap_transpose_error = 0.0;  // max|C_{phi*} - W C_phi^T W|
  bool swap_transpose_ok = false;
  bool j_relation_checked = false;    // only for Hermitian C_phi
  double j_relation_error = 0.0;      // max|C_{phi*} - J C_phi J|
  bool j_relation_ok = true;
  bool choi_psd = false;
  bool adjoint_choi_psd = false;
  bool positivity_equivalent = false;

  bool ok() const { return swap_transpose_ok && j_relation_ok && positivity_equivalent; }
};

AdjointChoiReport adjoint_choi_symmetry_check(const PairSumMap& phi, double tol = kTolAlg);

}  // namespace factorchoi
