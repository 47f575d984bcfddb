#pragma once

// JSON file formats shared by the command-line tool and its tests.
//
// MapFile / ElementFile:
//   {"n": 2,
//    "state": "tracial" | {"weights": [w1, ..., wn]},   (optional, default tracial)
//    "terms": [{"A": M, "B": M}, ...]}
// where a matrix M is a list of rows and every entry is [re, im].

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "factorchoi/algebra.hpp"
#include "factorchoi/factor.hpp"
#include "factorchoi/maps.hpp"

namespace factorchoi::io {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MapDocument {
  PairSumMap map;
  FactorRep rep;
};

MapDocument parse_map(const Json& doc);
MapDocument read_map_file(const std::string& path);

CElement to_element(const MapDocument& doc);

Json matrix_to_json(const CMatrix& m);
Json vector_to_json(const CVector& v);
CMatrix matrix_from_json(const Json& j, Eigen::Index n);
Json state_to_json(const FactorRep& rep);
Json map_to_json(const PairSumMap& map, const FactorRep& rep);

/// Serializes with every floating-point number printed at 17 significant
/// digits, so identical values always produce identical bytes.
std::string dump(const Json& doc, bool pretty);

}  // namespace factorchoi::io
