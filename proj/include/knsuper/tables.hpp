#pragma once

// Sparse tables of basis-indexed values: bilinear forms (pair entries) and
// linear maps into a dual basis (coefficient maps). Omitted entries are zero.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "knsuper/densities.hpp"

namespace knsuper {

using CoeffMap = std::vector<std::pair<BasisIndex, Scalar>>;

struct StructureTable {
  struct PairEntry {
    BasisIndex left, right;
    Scalar value;
  };
  struct MapEntry {
    BasisIndex arg;
    CoeffMap coeffs;
  };

  std::string name;
  std::vector<PairEntry> pairs;
  std::vector<MapEntry> maps;

  Scalar value(const BasisIndex& left, const BasisIndex& right) const;
  CoeffMap coeffs(const BasisIndex& arg) const;

  // {"left","right","value"} rows or {"arg","coeffs":{label: value}} rows.
  nlohmann::json to_json() const;
  // left,right,value or arg,label,value; one row per coefficient.
  std::string to_csv() const;
};

// Drops zeros and sorts by basis index.
CoeffMap canonical(CoeffMap m);
bool same_coeffs(const CoeffMap& a, const CoeffMap& b);
std::string render_coeffs(const CoeffMap& m);

}  // namespace knsuper
