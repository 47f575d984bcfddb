#include "factorchoi/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "factorchoi/errors.hpp"
#include "factorchoi/random.hpp"

namespace factorchoi {

namespace {

void require_square_terms(Eigen::Index n, const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    if (t.left.rows() != n || t.left.cols() != n || t.right.rows() != n || t.right.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "map terms must be n x n");
    }
  }
}

struct PsdStatus {
  bool hermitian = false;
  double min_eig = 0.0;  // of the Hermitian part
  bool psd = false;
};

PsdStatus psd_status(const CMatrix& m, double tol) {
  PsdStatus s;
  const double scale = std::max(1.0, operator_norm(m));
  s.hermitian = hermitian_defect(m) <= tol * scale;
  const CMatrix herm = (m + m.adjoint()) / 2.0;
  s.min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues()(0);
  s.psd = s.hermitian && s.min_eig >= -tol * scale;
  return s;
}

// Trace-one positive probe; even indices are pure, odd ones full rank.
CMatrix probe_state(Rng& rng, Eigen::Index dim, std::size_t index) {
  const CMatrix rho = random_psd(rng, dim, index % 2 == 0 ? 1 : dim);
  return rho / rho.trace().real();
}

template <typename Evaluate>
ExtensionReport probe_positivity(Eigen::Index n, std::size_t trials, double tol, std::uint64_t seed,
                                 Evaluate&& evaluate) {
  ExtensionReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  auto consume = [&](const CMatrix& out) {
    const PsdStatus s = psd_status(out, tol);
    report.hermitian = report.hermitian && s.hermitian;
    report.min_eigenvalue = std::min(report.min_eigenvalue, s.min_eig);
    ++report.inputs;
  };
  consume(evaluate(FactorRep::tracial(n).E()));
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) consume(evaluate(probe_state(rng, n * n, t)));
  report.positive = report.hermitian && report.min_eigenvalue >= -tol;
  return report;
}

}  // namespace

PairSumMap::PairSumMap(Eigen::Index n) : n_(n) {}

PairSumMap::PairSumMap(Eigen::Index n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  require_square_terms(n_, terms_);
}

PairSumMap PairSumMap::scaled(Complex c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.left *= c;
  return PairSumMap(n_, std::move(out));
}

PairSumMap PairSumMap::plus(const PairSumMap& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "maps act on different M_n");
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return PairSumMap(n_, std::move(out));
}

CMatrix apply_map(const PairSumMap& phi, const CMatrix& c) {
  if (c.rows() != phi.n() || c.cols() != phi.n()) {
    throw Error(ErrorCode::DimensionMismatch, "input must be n x n");
  }
  CMatrix out = CMatrix::Zero(phi.n(), phi.n());
  for (const auto& t : phi.terms()) out += t.left * c * t.right;
  return out;
}

PairSumMap adjoint_map(const PairSumMap& phi) {
  std::vector<Term> out;
  out.reserve(phi.terms().size());
  for (const auto& t : phi.terms()) out.push_back({t.right, t.left});
  return PairSumMap(phi.n(), std::move(out));
}

TransferMatrix transfer(const PairSumMap& phi) {
  const Eigen::Index n = phi.n();
  CMatrix t = CMatrix::Zero(n * n, n * n);
  for (const auto& term : phi.terms()) t += kron(term.left, term.right.transpose());
  return {t};
}

TransferMatrix transfer_adjoint(const TransferMatrix& t) {
  const CMatrix w = swap_operator(t.n());
  return {w * t.matrix.transpose() * w};
}

CMatrix apply_transfer(const TransferMatrix& t, const CMatrix& c) {
  const Eigen::Index n = t.n();
  if (c.rows() != n || c.cols() != n) throw Error(ErrorCode::DimensionMismatch, "input must be n x n");
  return unvec(t.matrix * vec(c), n, n);
}

CMatrix choi(const PairSumMap& phi) {
  const Eigen::Index n = phi.n();
  CMatrix out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * n, j * n, n, n) = apply_map(phi, matrix_unit(n, i, j));
    }
  }
  return out;
}

TransferMatrix transfer_from_choi(const CMatrix& choi_matrix) {
  if (choi_matrix.rows() != choi_matrix.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix must be square");
  }
  const Eigen::Index n = sqrt_dim(choi_matrix.rows());
  CMatrix t(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      t.col(i * n + j) = vec(choi_matrix.block(i * n, j * n, n, n));
    }
  }
  return {t};
}

CElement dphi_element(const PairSumMap& phi, const FactorRep& rep) {
  if (rep.n() != phi.n()) throw Error(ErrorCode::DimensionMismatch, "map and factor dimensions differ");
  std::vector<Term> terms;
  terms.reserve(phi.terms().size());
  for (const auto& t : phi.terms()) terms.push_back({t.right, t.left});
  return CElement(rep, std::move(terms));
}

CMatrix dphi(const PairSumMap& phi, const FactorRep& rep) { return c_materialize(dphi_element(phi, rep)); }

TransferMatrix map_from_dphi(const CMatrix& d, const FactorRep& rep) {
  if (d.rows() != rep.dim() || d.cols() != rep.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "D must act on C^n (x) C^n");
  }
  if (!rep.is_tracial()) {
    throw Error(ErrorCode::NotTracial, "map reconstruction from D is only defined at the tracial state");
  }
  const TransferMatrix adjoint = transfer_from_choi(static_cast<double>(rep.n()) * d);
  return transfer_adjoint(adjoint);
}

KrausDecomposition kraus_from_dphi(const PairSumMap& phi, const FactorRep& rep, double tol) {
  const CMatrix d = dphi(phi, rep);
  const double scale = std::max(1.0, operator_norm(d));
  if (hermitian_defect(d) > tol * scale) {
    throw Error(ErrorCode::NotHermitian, "D_phi is not self-adjoint, so phi is not completely positive");
  }
  const HermitianEig eig = hermitian_eig(d, tol);
  const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (min_eig < -tol * scale) {
    throw NotPositiveError(min_eig, "D_phi has eigenvalue " + std::to_string(min_eig));
  }

  struct Op {
    double c;
    CMatrix v;
  };
  std::vector<Op> ops;
  for (Eigen::Index j = 0; j < eig.eigenvalues.size(); ++j) {
    const double c = eig.eigenvalues(j);
    if (c <= tol * scale) continue;
    const CMatrix s = implementer_from_vector(rep, CVector(eig.eigenvectors.col(j)));
    ops.push_back({c, fix_phase(CMatrix(std::sqrt(c) * s), tol)});
  }

  const double tie = 1e-8 * scale;
  std::stable_sort(ops.begin(), ops.end(), [tie](const Op& a, const Op& b) {
    if (std::abs(a.c - b.c) > tie) return a.c > b.c;
    const CVector va = vec(a.v);
    const CVector vb = vec(b.v);
    for (Eigen::Index k = 0; k < va.size(); ++k) {
      const auto ka = std::make_tuple(va(k).real(), va(k).imag());
      const auto kb = std::make_tuple(vb(k).real(), vb(k).imag());
      if (ka != kb) return ka < kb;
    }
    return false;
  });

  KrausDecomposition out;
  for (auto& op : ops) {
    out.weights.push_back(op.c);
    out.ops.push_back(std::move(op.v));
  }
  out.residual = max_abs_diff(transfer(map_from_kraus(phi.n(), out.ops)).matrix, transfer(phi).matrix);
  return out;
}

PairSumMap map_from_kraus(Eigen::Index n, const std::vector<CMatrix>& ops) {
  std::vector<Term> terms;
  terms.reserve(ops.size());
  for (const auto& v : ops) terms.push_back({v.adjoint(), v});
  return PairSumMap(n, std::move(terms));
}

ExtensionReport extend_to_BH_check(const PairSumMap& phi, std::size_t trials, double tol, std::uint64_t seed) {
  const FactorRep rep = FactorRep::tracial(phi.n());
  std::vector<std::pair<CMatrix, CMatrix>> embedded;
  for (const auto& t : phi.terms()) {
    embedded.emplace_back(embed(rep, t.left, Side::Factor), embed(rep, t.right, Side::Factor));
  }
  return probe_positivity(phi.n(), trials, tol, seed, [&](const CMatrix& c) {
    CMatrix out = CMatrix::Zero(c.rows(), c.cols());
    for (const auto& [a, b] : embedded) out += a * c * b;
    return out;
  });
}

ExtensionReport amplification_check(const PairSumMap& phi, std::size_t trials, double tol, std::uint64_t seed) {
  const TransferMatrix t = transfer(phi);
  const Eigen::Index n = phi.n();
  return probe_positivity(n, trials, tol, seed, [&](const CMatrix& rho) {
    CMatrix out(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out.block(i * n, j * n, n, n) = apply_transfer(t, rho.block(i * n, j * n, n, n));
      }
    }
    return out;
  });
}

bool CpReport::agree() const {
  return amplification_positive == extension_positive && extension_positive == kraus_form &&
         kraus_form == dphi_psd && dphi_psd == choi_psd;
}

CpReport cp_conditions(const PairSumMap& phi, double tol, std::size_t trials, std::uint64_t seed) {
  CpReport r;
  const FactorRep rep = FactorRep::tracial(phi.n());

  const PsdStatus d = psd_status(dphi(phi, rep), tol);
  r.dphi_psd = d.psd;
  r.min_eig_dphi = d.min_eig;

  const PsdStatus c = psd_status(choi(phi), tol);
  r.choi_psd = c.psd;
  r.min_eig_choi = c.min_eig;

  try {
    const KrausDecomposition k = kraus_from_dphi(phi, rep, tol);
    const double scale = std::max(1.0, transfer(phi).matrix.cwiseAbs().maxCoeff());
    r.kraus_form = k.residual <= 10.0 * tol * scale;
    r.kraus_count = k.ops.size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositive && e.code() != ErrorCode::NotHermitian) throw;
    r.kraus_form = false;
  }

  const ExtensionReport ext = extend_to_BH_check(phi, trials, tol, seed);
  r.extension_positive = ext.positive;
  r.extension_min_eig = ext.min_eigenvalue;

  const ExtensionReport amp = amplification_check(phi, trials, tol, seed + 1);
  r.amplification_positive = amp.positive;
  r.amplification_min_eig = amp.min_eigenvalue;
  return r;
}

CpReport is_cp(const PairSumMap& phi, double tol, std::size_t trials, std::uint64_t seed) {
  CpReport r = cp_conditions(phi, tol, trials, seed);
  if (!r.agree()) {
    throw Error(ErrorCode::InternalDisagreement,
                "complete-positivity conditions disagree (min eig D_phi = " + std::to_string(r.min_eig_dphi) +
                    ", min eig C_phi = " + std::to_string(r.min_eig_choi) + ")");
  }
  return r;
}

AdjointChoiReport adjoint_choi_symmetry_check(const PairSumMap& phi, double tol) {
  AdjointChoiReport r;
  const FactorRep rep = FactorRep::tracial(phi.n());
  const CMatrix c = choi(phi);
  const CMatrix c_adj = choi(adjoint_map(phi));
  const double scale = std::max(1.0, operator_norm(c));

  const CMatrix w = swap_operator(phi.n());
  r.swap_transpose_error = max_abs_diff(c_adj, w * c.transpose() * w);
  r.swap_transpose_ok = r.swap_transpose_error <= tol * scale;

  if (hermitian_defect(c) <= tol * scale) {
    r.j_relation_checked = true;
    r.j_relation_error = max_abs_diff(c_adj, conjugate_by_J(rep, c));
    r.j_relation_ok = r.j_relation_error <= tol * scale;
  }

  r.choi_psd = psd_status(c, tol).psd;
  r.adjoint_choi_psd = psd_status(c_adj, tol).psd;
  r.positivity_equivalent = r.choi_psd == r.adjoint_choi_psd;
  return r;
}

}  // namespace factorchoi
