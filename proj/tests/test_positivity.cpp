#include <doctest.h>

#include <cmath>
#include <vector>

#include "factorchoi/errors.hpp"
#include "factorchoi/positivity.hpp"
#include "factorchoi/random.hpp"
#include "support.hpp"

using namespace factorchoi;
namespace t = factorchoi::testing;

namespace {

CMatrix unnormalized_bell(Eigen::Index n) {
  CVector x = CVector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) x(i * n + i) = 1.0;
  return x * x.adjoint();
}

bool verdict_negative(double value, double tol) { return value < -tol; }

}  // namespace

TEST_CASE("product expectation of SWAP is |<u, v>|^2") {
  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector u = random_unit_vector(rng, 3), v = random_unit_vector(rng, 3);
    const Complex value = product_expectation(swap_operator(3), u, v);
    CHECK(std::abs(value - std::norm(u.dot(v))) <= 1e-14);
  }
}

TEST_CASE("see-saw examples") {
  const FactorRep rep = FactorRep::tracial(2);
  const PositivityCertificate e = product_state_min_seesaw(rep.E());
  CHECK(e.value >= -1e-10);
  CHECK(e.value <= 1e-9);
  CHECK(e.verdict == Verdict::Positive);
  CHECK(e.heuristic);

  const PositivityCertificate sw = product_state_min_seesaw(swap_operator(2) / 2.0);
  CHECK(std::abs(sw.value) <= 1e-9);
  CHECK(std::abs(sw.witness_u.dot(sw.witness_v)) <= 1e-4);

  const CMatrix d = CMatrix::Identity(4, 4) / 4.0 - rep.E();
  const PositivityCertificate neg = product_state_min_seesaw(d);
  CHECK(neg.value == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(neg.verdict == Verdict::NotPositive);
  CHECK(std::abs(product_expectation(d, neg.witness_u, neg.witness_v).real() - neg.value) <= 1e-12);
  CHECK(product_state_min_brute(d).value == doctest::Approx(-0.25).epsilon(1e-9));

  // n = 3 analogue: 1/9 - max |<u (x) v, x>|^2 = 1/9 - 1/3.
  const FactorRep rep3 = FactorRep::tracial(3);
  const PositivityCertificate neg3 = product_state_min_seesaw(CMatrix::Identity(9, 9) / 9.0 - rep3.E());
  CHECK(neg3.value == doctest::Approx(1.0 / 9.0 - 1.0 / 3.0).epsilon(1e-8));

  CMatrix nonherm = CMatrix::Zero(4, 4);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(product_state_min_seesaw(nonherm), Error);
}

TEST_CASE("see-saw objective never increases") {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const CMatrix d = random_hermitian(rng, n * n);
    const SeesawRun run = seesaw_from(d, random_unit_vector(rng, n), 200, 1e-12);
    REQUIRE(run.history.size() >= 2);
    for (std::size_t i = 1; i < run.history.size(); ++i) CHECK(run.history[i] <= run.history[i - 1] + 1e-12);
    CHECK(std::abs(run.value - run.history.back()) <= 1e-10);
  }
}

TEST_CASE("see-saw on positive semidefinite forms stays nonnegative") {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const CMatrix d = random_psd(rng, n * n, 1 + trial % (n * n));
    CHECK(product_state_min_seesaw(d, 8, 200, 1e-9, 7).value >= -1e-10);
  }
}

TEST_CASE("see-saw result does not depend on thread count") {
  Rng rng(53);
  const CMatrix d = random_hermitian(rng, 9);
  const PositivityCertificate one = product_state_min_seesaw(d, 16, 300, 1e-9, 99, 1);
  const PositivityCertificate many = product_state_min_seesaw(d, 16, 300, 1e-9, 99, 4);
  CHECK(one.value == many.value);
  CHECK(max_abs_diff(one.witness_u, many.witness_u) == 0.0);
  CHECK(max_abs_diff(one.witness_v, many.witness_v) == 0.0);
}

TEST_CASE("brute-force oracle") {
  CHECK(product_state_min_brute(CMatrix::Identity(4, 4)).value == doctest::Approx(1.0));

  const BruteResult sw = product_state_min_brute(swap_operator(2) / 2.0, 60);
  CHECK(sw.value <= 1e-3);
  CHECK(sw.value >= -1e-9);

  const CMatrix d = CMatrix::Identity(4, 4) / 4.0 - unnormalized_bell(2) / 2.0;
  const BruteResult b = product_state_min_brute(d, 90);
  CHECK(std::abs(b.value + 0.25) <= 1e-3);
  CHECK(std::abs(product_expectation(d, b.u, b.v).real() - b.value) <= 1e-12);

  try {
    product_state_min_brute(CMatrix::Identity(9, 9));
    FAIL("expected UnsupportedDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDimension);
  }
}

TEST_CASE("see-saw agrees with the brute oracle at n = 2") {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix d = random_hermitian(rng, 4);
    d /= operator_norm(d);
    const double seesaw = product_state_min_seesaw(d, 32, 500, 1e-9, 42).value;
    const double brute = product_state_min_brute(d, 90).value;
    CHECK(std::abs(seesaw - brute) <= 5e-3);
    CHECK(seesaw <= brute + 1e-12);
  }
}

TEST_CASE("is_positive_map examples") {
  const FactorRep rep = FactorRep::tracial(2);

  const PositivityCertificate tr = is_positive_map(t::transpose_map(2), rep);
  CHECK(tr.verdict == Verdict::Positive);
  CHECK(std::abs(tr.value) <= 1e-9);
  CHECK_FALSE(is_cp(t::transpose_map(2)).completely_positive());

  const PairSumMap tmi = t::trace_minus_identity(2);
  const PositivityCertificate neg = is_positive_map(tmi, rep);
  CHECK(neg.verdict == Verdict::NotPositive);
  CHECK(neg.value == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(min_eigenvalue(apply_map(tmi, matrix_unit(2, 0, 0))) == doctest::Approx(-0.5));
  CHECK(min_eigenvalue(apply_map(tmi, witness_input(neg.witness_v))) == doctest::Approx(-0.5));
  // probe identity <w|phi(|v><v|)|w> = <u (x) v|D|u (x) v>
  const CVector w = witness_probe(rep, neg.witness_u);
  const Complex pulled = w.dot(apply_map(tmi, witness_input(neg.witness_v)) * w);
  CHECK(std::abs(pulled - neg.value) <= 1e-12);

  CHECK(is_positive_map(t::identity_map(2), rep).verdict == Verdict::Positive);

  SeesawConfig cfg;
  cfg.use_oracle = true;
  const PositivityCertificate tr_oracle = is_positive_map(t::transpose_map(2), rep, cfg);
  CHECK(tr_oracle.verdict == Verdict::Positive);
  CHECK_FALSE(tr_oracle.heuristic);
  REQUIRE(tr_oracle.oracle_value.has_value());
  CHECK(std::abs(*tr_oracle.oracle_value) <= 1e-3);
}

TEST_CASE("is_positive_map at non-tracial states") {
  Rng rng(55);
  for (Eigen::Index n : {2, 3}) {
    const FactorRep rep = t::random_weights_rep(rng, n);
    CHECK(is_positive_map(t::transpose_map(n), rep).verdict == Verdict::Positive);
    const PositivityCertificate neg = is_positive_map(t::trace_minus_identity(n), rep);
    CHECK(neg.verdict == Verdict::NotPositive);
    const CVector w = witness_probe(rep, neg.witness_u);
    const Complex pulled = w.dot(apply_map(t::trace_minus_identity(n), witness_input(neg.witness_v)) * w);
    CHECK(std::abs(pulled - neg.value) <= 1e-12);
  }
}

TEST_CASE("non-Hermiticity-preserving maps get a direct witness") {
  const FactorRep rep = FactorRep::tracial(2);
  const PairSumMap left(2, {Term{matrix_unit(2, 0, 0), CMatrix::Identity(2, 2)}});
  const PositivityCertificate c = is_positive_map(left, rep);
  CHECK(c.verdict == Verdict::NotPositive);
  CHECK(c.method == Method::Direct);
  CHECK(c.value < 0.0);
  const Complex recomputed = product_expectation(dphi(left, rep), c.witness_u, c.witness_v);
  CHECK(std::abs(std::abs(recomputed.imag()) + c.value) <= 1e-12);
}

TEST_CASE("pairing against C_phi and against D_phi give the same verdict") {
  Rng rng(56);
  const FactorRep rep = FactorRep::tracial(2);
  int positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PairSumMap phi = trial % 2 == 0 ? t::random_decomposable_map(rng, 2, 2)
                                          : t::random_hermitian_preserving_map(rng, 2, 3);
    const double via_choi = product_state_min_brute(choi(phi), 90).value;
    const double via_dphi = product_state_min_brute(dphi(phi, rep), 90).value;
    CHECK(verdict_negative(via_choi, 1e-9) == verdict_negative(via_dphi, 1e-9));
    positives += verdict_negative(via_dphi, 1e-9) ? 0 : 1;
  }
  CHECK(positives >= 50);
}

TEST_CASE("not-positive certificates come with sound witnesses") {
  Rng rng(57);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const FactorRep rep = trial % 2 == 0 ? FactorRep::tracial(n) : t::random_weights_rep(rng, n);
    const PairSumMap phi = t::random_hermitian_preserving_map(rng, n, 3);
    SeesawConfig cfg;
    cfg.restarts = 8;
    const PositivityCertificate c = is_positive_map(phi, rep, cfg);
    CHECK(std::abs(product_expectation(dphi(phi, rep), c.witness_u, c.witness_v).real() - c.value) <= 1e-12);
    if (c.verdict == Verdict::NotPositive) {
      CHECK(c.value < -cfg.tol);
      CHECK(min_eigenvalue(apply_map(phi, witness_input(c.witness_v)), 1e-8) < -cfg.tol / 2);
    }
  }
}
