#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "factorchoi/errors.hpp"

namespace factorchoi::io {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw FormatError("matrix entries must be [re, im] pairs");
}

FactorRep state_from_json(const Json& doc, Eigen::Index n) {
  if (!doc.contains("state")) return FactorRep::tracial(n);
  const Json& s = doc.at("state");
  if (s.is_string()) {
    if (s.get<std::string>() != "tracial") throw FormatError("state must be \"tracial\" or {\"weights\": [...]}");
    return FactorRep::tracial(n);
  }
  if (s.is_object() && s.contains("weights") && s.at("weights").is_array()) {
    std::vector<double> w;
    for (const auto& x : s.at("weights")) {
      if (!x.is_number()) throw FormatError("weights must be numbers");
      w.push_back(x.get<double>());
    }
    return FactorRep::weighted(n, w);
  }
  throw FormatError("state must be \"tracial\" or {\"weights\": [...]}");
}

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const Json& j, bool pretty, int depth) {
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        write(out, value, pretty, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Leaf arrays (numbers only) stay on one line.
      const bool leaf = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += leaf && pretty ? ", " : ",";
        first = false;
        if (!leaf) newline(depth + 1);
        write(out, e, pretty, depth + 1);
      }
      if (!leaf) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

CMatrix matrix_from_json(const Json& j, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw FormatError("matrix must have " + std::to_string(n) + " rows");
  }
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError("matrix rows must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

MapDocument parse_map(const Json& doc) {
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) throw FormatError("missing integer field \"n\"");
  const auto n = doc.at("n").get<Eigen::Index>();
  if (n < 2) throw FormatError("\"n\" must be at least 2");
  if (!doc.contains("terms") || !doc.at("terms").is_array()) throw FormatError("missing array field \"terms\"");

  std::vector<Term> terms;
  for (const auto& t : doc.at("terms")) {
    if (!t.is_object() || !t.contains("A") || !t.contains("B")) {
      throw FormatError("each term must be an object with \"A\" and \"B\"");
    }
    terms.push_back({matrix_from_json(t.at("A"), n), matrix_from_json(t.at("B"), n)});
  }
  FactorRep rep = state_from_json(doc, n);
  return {PairSumMap(n, std::move(terms)), std::move(rep)};
}

MapDocument read_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return parse_map(doc);
}

CElement to_element(const MapDocument& doc) { return CElement(doc.rep, doc.map.terms()); }

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

Json state_to_json(const FactorRep& rep) {
  if (rep.is_tracial()) return "tracial";
  return Json{{"weights", rep.weights()}};
}

Json map_to_json(const PairSumMap& map, const FactorRep& rep) {
  Json terms = Json::array();
  for (const auto& t : map.terms()) terms.push_back(Json{{"A", matrix_to_json(t.left)}, {"B", matrix_to_json(t.right)}});
  return Json{{"n", map.n()}, {"state", state_to_json(rep)}, {"terms", std::move(terms)}};
}

std::string dump(const Json& doc, bool pretty) {
  std::string out;
  write(out, doc, pretty, 0);
  out += '\n';
  return out;
}

}  // namespace factorchoi::io
