#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "factorchoi/errors.hpp"
#include "factorchoi/positivity.hpp"
#include "io.hpp"

namespace factorchoi::cli {

namespace {

using io::Json;

struct Options {
  std::string file;
  bool pretty = false;
  bool assert_verdict = false;
  double tol = 0.0;  // 0: command default
  std::size_t restarts = 32;
  std::size_t iters = 500;
  std::uint64_t seed = 42;
  std::size_t trials = 64;
  bool oracle = false;
  std::size_t resolution = 90;
};

struct Outcome {
  Json doc;
  bool negative = false;
};

double tol_or(const Options& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }

unsigned thread_cap() {
  if (const char* env = std::getenv("THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

Outcome cmd_choi(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  return {Json{{"command", "choi"}, {"n", doc.map.n()}, {"matrix", io::matrix_to_json(choi(doc.map))}}};
}

Outcome cmd_dphi(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  return {Json{{"command", "dphi"},
               {"n", doc.map.n()},
               {"state", io::state_to_json(doc.rep)},
               {"matrix", io::matrix_to_json(dphi(doc.map, doc.rep))}}};
}

Outcome cmd_adjoint(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  return {io::map_to_json(adjoint_map(doc.map), doc.rep)};
}

Outcome cmd_cp(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  const double tol = tol_or(o, 1e-9);
  const CpReport r = is_cp(doc.map, tol, o.trials, o.seed);
  Json conditions{{"amplification_positive", r.amplification_positive},
                  {"extension_positive", r.extension_positive},
                  {"kraus_form", r.kraus_form},
                  {"dphi_psd", r.dphi_psd},
                  {"choi_psd", r.choi_psd}};
  Json out{{"command", "cp"},
           {"n", doc.map.n()},
           {"completely_positive", r.completely_positive()},
           {"conditions", std::move(conditions)},
           {"min_eig_dphi", r.min_eig_dphi},
           {"min_eig_choi", r.min_eig_choi},
           {"extension_min_eig", r.extension_min_eig},
           {"amplification_min_eig", r.amplification_min_eig},
           {"kraus_count", r.kraus_count},
           {"tol", tol}};
  return {std::move(out), !r.completely_positive()};
}

Outcome cmd_kraus(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  const double tol = tol_or(o, kTolAlg);
  Json out{{"command", "kraus"}, {"n", doc.map.n()}, {"state", io::state_to_json(doc.rep)}};
  try {
    const KrausDecomposition k = kraus_from_dphi(doc.map, doc.rep, tol);
    Json ops = Json::array();
    for (const auto& v : k.ops) ops.push_back(io::matrix_to_json(v));
    out["status"] = "ok";
    out["weights"] = k.weights;
    out["ops"] = std::move(ops);
    out["residual"] = k.residual;
    return {std::move(out), false};
  } catch (const NotPositiveError& e) {
    out["status"] = "not-positive";
    out["min_eigenvalue"] = e.min_eigenvalue();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotHermitian) throw;
    out["status"] = "not-hermitian";
  }
  return {std::move(out), true};
}

Outcome cmd_positive(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  SeesawConfig cfg;
  cfg.restarts = o.restarts;
  cfg.iters = o.iters;
  cfg.tol = tol_or(o, 1e-9);
  cfg.seed = o.seed;
  cfg.threads = thread_cap();
  cfg.use_oracle = o.oracle;
  cfg.oracle_resolution = o.resolution;
  const PositivityCertificate c = is_positive_map(doc.map, doc.rep, cfg);
  Json out{{"command", "positive"},
           {"n", doc.map.n()},
           {"state", io::state_to_json(doc.rep)},
           {"verdict", std::string(to_string(c.verdict))},
           {"value", c.value},
           {"witness_u", io::vector_to_json(c.witness_u)},
           {"witness_v", io::vector_to_json(c.witness_v)},
           {"method", std::string(to_string(c.method))},
           {"heuristic", c.heuristic},
           {"seed", c.seed}};
  if (c.oracle_value) out["oracle_value"] = *c.oracle_value;
  return {std::move(out), c.verdict != Verdict::Positive};
}

Outcome cmd_spectral(const Options& o) {
  const auto doc = io::read_map_file(o.file);
  const SpectralDecomposition sd = spectral_decompose(io::to_element(doc), tol_or(o, kTolAlg));
  Json items = Json::array();
  for (const auto& item : sd.items) items.push_back(Json{{"c", item.c}, {"S", io::matrix_to_json(item.S)}});
  return {Json{{"command", "spectral"},
               {"n", doc.map.n()},
               {"state", io::state_to_json(doc.rep)},
               {"items", std::move(items)},
               {"clusters", sd.cluster_count},
               {"max_membership_residual", sd.max_membership_residual}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choi-matrix analogues for maps C -> sum A_i C B_i on a finite factor", "factorchoi"};
  app.require_subcommand(1);

  Options opts;
  std::function<Outcome(const Options&)> handler;

  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", opts.file, "map or element file (JSON)")->required();
    sub->add_flag("--pretty", opts.pretty, "indented output");
    sub->add_flag("--assert", opts.assert_verdict, "exit with code 3 when the verdict is negative");
    sub->add_option("--tol", opts.tol, "numerical tolerance");
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  add("choi", "Choi matrix C_phi", cmd_choi);
  add("dphi", "operator D_phi = sum B_i E A_i", cmd_dphi);
  add("adjoint", "trace-dual map phi*", cmd_adjoint);
  CLI::App* cp = add("cp", "complete positivity, five-condition report", cmd_cp);
  cp->add_option("--trials", opts.trials, "random probes for the extension checks");
  cp->add_option("--seed", opts.seed, "probe seed");
  add("kraus", "Kraus operators from D_phi", cmd_kraus);
  CLI::App* pos = add("positive", "positivity certificate from block positivity of D_phi", cmd_positive);
  pos->add_option("--restarts", opts.restarts, "see-saw restarts");
  pos->add_option("--iters", opts.iters, "see-saw iterations per restart");
  pos->add_option("--seed", opts.seed, "base seed; restart r uses seed + r");
  pos->add_flag("--oracle", opts.oracle, "confirm with the grid oracle (n = 2)");
  pos->add_option("--resolution", opts.resolution, "grid oracle resolution");
  add("spectral", "spectral decomposition of a self-adjoint element of C", cmd_spectral);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    const Outcome result = handler(opts);
    out << io::dump(result.doc, opts.pretty);
    return opts.assert_verdict && result.negative ? kNegativeVerdict : kOk;
  } catch (const io::FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::InternalDisagreement ? kInternalDisagreement : kInputError;
  }
}

}  // namespace factorchoi::cli
