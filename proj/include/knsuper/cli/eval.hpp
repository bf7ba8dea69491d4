#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "knsuper/antijordan.hpp"
#include "knsuper/cli/expr.hpp"
#include "knsuper/liesuper.hpp"

namespace knsuper::cli {

enum class Format { Json, Csv, Pretty };

struct RunConfig {
  int points = 3;
  std::optional<Rational> beta;
  int window = 4;
  std::optional<std::string> connection;
  Format format = Format::Pretty;
  unsigned long seed = 1;

  nlohmann::json to_json() const;
};

// Resolved configuration: the puncture set and the projective connection.
struct Context {
  PunctureConfig cfg;
  ProjectiveConnection R;
};
// Throws ConfigError (bad points/beta) and whatever parsing or evaluating the
// connection throws.
Context make_context(const RunConfig& rc);

// A sum of densities keyed by twice the weight. The flavor decides how
// -1/2 and 3/2 densities on two points are named (b vs a); unset means Lie.
struct ElementValue {
  std::map<int, Density> parts;
  std::optional<Flavor> flavor;
};
using Value = std::variant<Scalar, MeroFun, ElementValue>;

// Throws TypeError for ill-typed expressions, and the module errors of the
// operations (WeightMismatch, InvalidFamilyForConfig, StrayPole, ...).
Value eval(const Expr& e, const Context& ctx);

// "-2*e[0]"; elements are expanded in the standard bases when possible and
// printed as densities otherwise.
std::string render_value(const Value& v);
nlohmann::json value_json(const Value& v);

SuperElement as_super(const ElementValue& v, const PunctureConfig& cfg);
JordanElement as_jordan(const ElementValue& v, const PunctureConfig& cfg);

}  // namespace knsuper::cli
