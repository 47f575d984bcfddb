#pragma once

// Positivity of phi through block positivity of D_phi: phi >= 0 exactly when
// <u (x) v| D_phi |u (x) v> >= 0 for all product vectors. Rank-one C and D'
// suffice in the pairing Tr(D_phi C D') because every positive operator is a
// sum of rank-one positives and the pairing is linear in each.
//
// Leg convention: u lives on the commutant leg (M_n (x) 1), v on the factor
// leg (1 (x) M_n).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "factorchoi/factor.hpp"
#include "factorchoi/linalg.hpp"
#include "factorchoi/maps.hpp"

namespace factorchoi {

enum class Verdict { Positive, NotPositive, Inconclusive };
enum class Method { Seesaw, Brute, Direct };

std::string_view to_string(Verdict v);
std::string_view to_string(Method m);

struct PositivityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  // <u (x) v|D|u (x) v>. For Method::Direct (a Hermiticity failure) this is
  // -|Im <u (x) v|D|u (x) v>| instead.
  double value = 0.0;
  CVector witness_u;
  CVector witness_v;
  Method method = Method::Seesaw;
  std::uint64_t seed = 0;
  // True when a positive verdict rests on the see-saw search alone.
  bool heuristic = false;
  std::optional<double> oracle_value;
};

struct SeesawConfig {
  std::size_t restarts = 32;
  std::size_t iters = 500;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: hardware concurrency
  bool use_oracle = false;  // n = 2 only
  std::size_t oracle_resolution = 90;
};

/// <u (x) v| d |u (x) v>.
Complex product_expectation(const CMatrix& d, const CVector& u, const CVector& v);

/// (<u| (x) 1) d (|u> (x) 1), an n x n form in v.
CMatrix partial_form_v(const CMatrix& d, const CVector& u);
/// (1 (x) <v|) d (1 (x) |v>), an n x n form in u.
CMatrix partial_form_u(const CMatrix& d, const CVector& v);

struct SeesawRun {
  double value = 0.0;
  CVector u;
  CVector v;
  std::vector<double> history;  // objective after every half-step
};

/// One alternating minimization from the start vector u0.
SeesawRun seesaw_from(const CMatrix& d, const CVector& u0, std::size_t iters, double tol);

/// Best of `restarts` see-saw runs; restart r starts from a unit vector drawn
/// from an mt19937_64 seeded with seed + r. The result is independent of
/// thread scheduling. Throws NotHermitian.
PositivityCertificate product_state_min_seesaw(const CMatrix& d, std::size_t restarts = 32,
                                               std::size_t iters = 500, double tol = 1e-9,
                                               std::uint64_t seed = 42, unsigned threads = 0);

struct BruteResult {
  double value = 0.0;
  CVector u;
  CVector v;
};

/// Grid search for 4 x 4 d: u = (cos(t/2), e^{ip} sin(t/2)) with t on
/// `resolution` points of [0, pi] and p on `resolution` points of [0, 2 pi);
/// for each u the inner minimum over v is the exact smallest eigenvalue of a
/// 2 x 2 form. Throws UnsupportedDimension, NotHermitian.
BruteResult product_state_min_brute(const CMatrix& d, std::size_t resolution = 90);

/// Positivity of phi with a witness. Non-Hermiticity-preserving maps are
/// reported not-positive by direct evaluation.
PositivityCertificate is_positive_map(const PairSumMap& phi, const FactorRep& rep,
                                      const SeesawConfig& cfg = {});

/// The n x n input |v><v| and the probe vector w = diag(sqrt(weights)) conj(u)
/// with <w|phi(|v><v|)|w> = <u (x) v|D_phi|u (x) v>.
CMatrix witness_input(const CVector& v);
CVector witness_probe(const FactorRep& rep, const CVector& u);

}  // namespace factorchoi
