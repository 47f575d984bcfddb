#include "factorchoi/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "factorchoi/errors.hpp"
#include "factorchoi/random.hpp"

namespace factorchoi {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::NotPositive: return "not-positive";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Seesaw: return "seesaw";
    case Method::Brute: return "brute";
    case Method::Direct: return "direct";
  }
  return "seesaw";
}

namespace {

struct MinEig {
  double value;
  CVector vector;
};

MinEig min_eig(const CMatrix& form) {
  const CMatrix herm = (form + form.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

void require_hermitian_form(const CMatrix& d, double tol) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::DimensionMismatch, "form must be square");
  sqrt_dim(d.rows());
  if (hermitian_defect(d) > tol * std::max(1.0, operator_norm(d))) {
    throw Error(ErrorCode::NotHermitian, "product-state minimization needs a Hermitian form");
  }
}

}  // namespace

Complex product_expectation(const CMatrix& d, const CVector& u, const CVector& v) {
  const CVector uv = kron(u, v);
  return uv.dot(d * uv);
}

CMatrix partial_form_v(const CMatrix& d, const CVector& u) {
  const Eigen::Index n = u.size();
  const CMatrix lift = kron(u, CMatrix::Identity(n, n));
  return lift.adjoint() * d * lift;
}

CMatrix partial_form_u(const CMatrix& d, const CVector& v) {
  const Eigen::Index n = v.size();
  const CMatrix lift = kron(CMatrix::Identity(n, n), v);
  return lift.adjoint() * d * lift;
}

SeesawRun seesaw_from(const CMatrix& d, const CVector& u0, std::size_t iters, double tol) {
  SeesawRun run;
  run.u = u0 / u0.norm();
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < iters; ++it) {
    const MinEig over_v = min_eig(partial_form_v(d, run.u));
    run.v = over_v.vector;
    run.history.push_back(over_v.value);

    const MinEig over_u = min_eig(partial_form_u(d, run.v));
    run.u = over_u.vector;
    run.history.push_back(over_u.value);

    if (previous - over_u.value < tol) break;
    previous = over_u.value;
  }
  run.u = fix_phase(run.u, 1e-12);
  run.v = fix_phase(run.v, 1e-12);
  run.value = product_expectation(d, run.u, run.v).real();
  return run;
}

PositivityCertificate product_state_min_seesaw(const CMatrix& d, std::size_t restarts, std::size_t iters,
                                               double tol, std::uint64_t seed, unsigned threads) {
  require_hermitian_form(d, tol);
  const Eigen::Index n = sqrt_dim(d.rows());
  restarts = std::max<std::size_t>(restarts, 1);

  std::vector<SeesawRun> runs(restarts);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t r = first; r < restarts; r += stride) {
      Rng rng(seed + r);
      runs[r] = seesaw_from(d, random_unit_vector(rng, n), iters, tol);
    }
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, restarts));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].value < runs[best].value) best = r;
  }
  PositivityCertificate cert;
  cert.value = runs[best].value;
  cert.witness_u = runs[best].u;
  cert.witness_v = runs[best].v;
  cert.method = Method::Seesaw;
  cert.seed = seed;
  cert.verdict = cert.value < -tol ? Verdict::NotPositive : Verdict::Positive;
  cert.heuristic = cert.verdict == Verdict::Positive;
  return cert;
}

BruteResult product_state_min_brute(const CMatrix& d, std::size_t resolution) {
  if (d.rows() != 4 || d.cols() != 4) {
    throw Error(ErrorCode::UnsupportedDimension, "the brute-force oracle handles n = 2 only");
  }
  require_hermitian_form(d, 1e-9);
  resolution = std::max<std::size_t>(resolution, 2);

  BruteResult best;
  best.value = std::numeric_limits<double>::infinity();
  CVector u(2);
  for (std::size_t a = 0; a < resolution; ++a) {
    const double theta = std::numbers::pi * static_cast<double>(a) / static_cast<double>(resolution - 1);
    for (std::size_t b = 0; b < resolution; ++b) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(resolution);
      u(0) = std::cos(theta / 2.0);
      u(1) = std::polar(std::sin(theta / 2.0), phase);
      const CMatrix q = partial_form_v(d, u);
      const double p0 = q(0, 0).real();
      const double p1 = q(1, 1).real();
      const double half_gap = (p0 - p1) / 2.0;
      const double value = (p0 + p1) / 2.0 - std::sqrt(half_gap * half_gap + std::norm(q(0, 1)));
      if (value < best.value) {
        best.value = value;
        best.u = u;
      }
    }
  }
  best.v = fix_phase(min_eig(partial_form_v(d, best.u)).vector, 1e-12);
  return best;
}

CMatrix witness_input(const CVector& v) { return v * v.adjoint(); }

CVector witness_probe(const FactorRep& rep, const CVector& u) {
  CVector w = u.conjugate();
  for (Eigen::Index i = 0; i < rep.n(); ++i) w(i) *= std::sqrt(rep.weights()[static_cast<std::size_t>(i)]);
  return w;
}

namespace {

// A positive rank-one input whose image is not self-adjoint, if any. The
// inputs |e_i>, |e_i + e_j>, |e_i + i e_j> span the Hermitian matrices.
std::optional<CVector> hermiticity_witness(const PairSumMap& phi, double tol) {
  const Eigen::Index n = phi.n();
  std::vector<CVector> probes;
  for (Eigen::Index i = 0; i < n; ++i) probes.push_back(CVector::Unit(n, i));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      probes.push_back((CVector::Unit(n, i) + CVector::Unit(n, j)) / std::sqrt(2.0));
      probes.push_back((CVector::Unit(n, i) + Complex(0, 1) * CVector::Unit(n, j)) / std::sqrt(2.0));
    }
  }
  for (const auto& v : probes) {
    const CMatrix out = apply_map(phi, witness_input(v));
    if (hermitian_defect(out) > tol * std::max(1.0, operator_norm(out))) return v;
  }
  return std::nullopt;
}

bool witness_confirms(const PairSumMap& phi, const CVector& v, double tol) {
  const CMatrix out = apply_map(phi, witness_input(v));
  const CMatrix herm = (out + out.adjoint()) / 2.0;
  return min_eig(herm).value < -tol / 2.0;
}

}  // namespace

PositivityCertificate is_positive_map(const PairSumMap& phi, const FactorRep& rep, const SeesawConfig& cfg) {
  if (rep.n() != phi.n()) throw Error(ErrorCode::DimensionMismatch, "map and factor dimensions differ");
  const CMatrix d = dphi(phi, rep);

  if (auto v = hermiticity_witness(phi, cfg.tol)) {
    // Pick w maximizing |Im <w|phi(|v><v|)|w>| and pull it back to u.
    const CMatrix out = apply_map(phi, witness_input(*v));
    const CMatrix skew = (out - out.adjoint()) / Complex(0, 2);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver((skew + skew.adjoint()) / 2.0);
    const Eigen::Index last = solver.eigenvalues().size() - 1;
    const Eigen::Index pick =
        std::abs(solver.eigenvalues()(0)) >= std::abs(solver.eigenvalues()(last)) ? 0 : last;
    CVector u = solver.eigenvectors().col(pick);
    for (Eigen::Index i = 0; i < rep.n(); ++i) u(i) /= std::sqrt(rep.weights()[static_cast<std::size_t>(i)]);
    u = fix_phase(CVector(u.conjugate() / u.norm()), 1e-12);

    PositivityCertificate cert;
    cert.verdict = Verdict::NotPositive;
    cert.method = Method::Direct;
    cert.witness_u = u;
    cert.witness_v = *v;
    cert.value = -std::abs(product_expectation(d, u, *v).imag());
    cert.seed = cfg.seed;
    return cert;
  }

  PositivityCertificate cert =
      product_state_min_seesaw(d, cfg.restarts, cfg.iters, cfg.tol, cfg.seed, cfg.threads);

  if (cfg.use_oracle && phi.n() == 2) {
    const BruteResult brute = product_state_min_brute(d, cfg.oracle_resolution);
    cert.oracle_value = brute.value;
    if (cert.verdict == Verdict::Positive && brute.value < -cfg.tol) {
      cert.value = brute.value;
      cert.witness_u = fix_phase(brute.u, 1e-12);
      cert.witness_v = brute.v;
      cert.method = Method::Brute;
      cert.verdict = Verdict::NotPositive;
    } else if (cert.verdict == Verdict::Positive) {
      cert.heuristic = false;
    }
  }

  if (cert.verdict == Verdict::NotPositive && !witness_confirms(phi, cert.witness_v, cfg.tol)) {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

}  // namespace factorchoi
