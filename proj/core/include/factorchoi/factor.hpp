#pragma once

// Finite standard form: the factor M = 1 (x) M_n acting on H = C^n (x) C^n,
// with commutant M' = M_n (x) 1 and the faithful vector
// x = sum_i sqrt(w_i) e_i (x) e_i.
//
// Vector <-> matrix identification used throughout the library:
// v = sum_{ik} V_ik e_i (x) e_k, i.e. the first (commutant) leg indexes rows.

#include <span>
#include <vector>

#include "factorchoi/linalg.hpp"

namespace factorchoi {

class FactorRep {
 public:
  /// Tracial state, all weights 1/n. Requires n >= 2.
  static FactorRep tracial(Eigen::Index n);

  /// Weights are normalized to sum to one; any zero, negative or non-finite
  /// weight, or a count different from n, throws BadWeights.
  static FactorRep weighted(Eigen::Index n, std::span<const double> weights);

  Eigen::Index n() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return n_ * n_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool is_tracial() const noexcept { return tracial_; }

  /// Unit cyclic and separating vector x.
  const CVector& x() const noexcept { return x_; }
  /// Rank-one projection E = |x><x|.
  const CMatrix& E() const noexcept { return e_; }

  friend bool operator==(const FactorRep& a, const FactorRep& b) {
    return a.n_ == b.n_ && a.weights_ == b.weights_;
  }

 private:
  FactorRep(Eigen::Index n, std::vector<double> weights);

  Eigen::Index n_;
  std::vector<double> weights_;
  bool tracial_;
  CVector x_;
  CMatrix e_;
};

struct StateVector {
  CVector x;
  CMatrix E;
};

/// The pair (x, E) for a representation.
StateVector projection_E(const FactorRep& rep);

enum class Side { Factor, Commutant };

/// Factor side: 1 (x) a. Commutant side: a (x) 1.
CMatrix embed(const FactorRep& rep, const CMatrix& a, Side side);

/// Vector state omega(a) = <(1 (x) a) x, x> = sum_i w_i a_ii.
Complex omega(const FactorRep& rep, const CMatrix& a);

/// The unique S in M_n with (1 (x) S) x = y.
CMatrix implementer_from_vector(const FactorRep& rep, const CVector& y);

/// Tracial modular conjugation: V -> V^dagger under the vector/matrix
/// identification. Antilinear, J x = x, J^2 = 1. Throws NotTracial.
CVector modular_J_apply(const FactorRep& rep, const CVector& v);

/// The linear operator J T J, built column by column from modular_J_apply.
CMatrix conjugate_by_J(const FactorRep& rep, const CMatrix& t);

}  // namespace factorchoi
