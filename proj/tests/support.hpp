#pragma once

// Random map generators and small oracles shared by the test binaries.

#include <cstdint>
#include <vector>

#include "factorchoi/algebra.hpp"
#include "factorchoi/maps.hpp"
#include "factorchoi/random.hpp"

namespace factorchoi::testing {

inline CMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline PairSumMap identity_map(Eigen::Index n) {
  return PairSumMap(n, {Term{CMatrix::Identity(n, n), CMatrix::Identity(n, n)}});
}

// Sum_ij e_ij C e_ij = C^T.
inline PairSumMap transpose_map(Eigen::Index n) {
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) terms.push_back({matrix_unit(n, i, j), matrix_unit(n, i, j)});
  }
  return PairSumMap(n, std::move(terms));
}

// (1/n) Sum_ij e_ij C e_ji = Tr(C) I / n.
inline PairSumMap trace_map(Eigen::Index n) {
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      terms.push_back({matrix_unit(n, i, j) / static_cast<double>(n), matrix_unit(n, j, i)});
    }
  }
  return PairSumMap(n, std::move(terms));
}

// Tr(C) I / n - C.
inline PairSumMap trace_minus_identity(Eigen::Index n) {
  return trace_map(n).plus(identity_map(n).scaled(-1.0));
}

inline PairSumMap random_map(Rng& rng, Eigen::Index n, std::size_t k) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < k; ++i) terms.push_back({random_gaussian(rng, n, n), random_gaussian(rng, n, n)});
  return PairSumMap(n, std::move(terms));
}

inline PairSumMap random_cp_map(Rng& rng, Eigen::Index n, std::size_t k) {
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < k; ++i) ops.push_back(random_gaussian(rng, n, n));
  return map_from_kraus(n, ops);
}

// Sum_k s_k A_k C A_k^dagger with random signs.
inline PairSumMap random_hermitian_preserving_map(Rng& rng, Eigen::Index n, std::size_t k) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < k; ++i) {
    const CMatrix a = random_gaussian(rng, n, n);
    terms.push_back({(coin(rng) ? 1.0 : -1.0) * a, a.adjoint()});
  }
  return PairSumMap(n, std::move(terms));
}

// CP + (CP o transpose): positive by construction.
inline PairSumMap random_decomposable_map(Rng& rng, Eigen::Index n, std::size_t k) {
  PairSumMap cp = random_cp_map(rng, n, k);
  const CMatrix w = random_gaussian(rng, n, n);
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      terms.push_back({w.adjoint() * matrix_unit(n, i, j), matrix_unit(n, i, j) * w});
    }
  }
  return cp.plus(PairSumMap(n, std::move(terms)));
}

inline CElement random_element(Rng& rng, const FactorRep& rep, std::size_t k) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < k; ++i) {
    terms.push_back({random_gaussian(rng, rep.n(), rep.n()), random_gaussian(rng, rep.n(), rep.n())});
  }
  return CElement(rep, std::move(terms));
}

// T + T^* as a term list: self-adjoint by construction.
inline CElement random_self_adjoint_element(Rng& rng, const FactorRep& rep, std::size_t k) {
  const CElement t = random_element(rng, rep, k);
  return c_add(t, c_adjoint(t));
}

inline FactorRep random_weights_rep(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w;
  for (Eigen::Index i = 0; i < n; ++i) w.push_back(u(rng));
  return FactorRep::weighted(n, w);
}

// Direct dense oracle: sum_i (1 (x) A_i) E (1 (x) B_i) via Kronecker products.
inline CMatrix dense_element(const FactorRep& rep, const std::vector<Term>& terms) {
  const CMatrix id = CMatrix::Identity(rep.n(), rep.n());
  CMatrix out = CMatrix::Zero(rep.dim(), rep.dim());
  for (const auto& t : terms) out += kron(id, t.left) * rep.E() * kron(id, t.right);
  return out;
}

}  // namespace factorchoi::testing
