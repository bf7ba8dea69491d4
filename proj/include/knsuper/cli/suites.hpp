#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "knsuper/cli/eval.hpp"
#include "knsuper/tables.hpp"

namespace knsuper::cli {

struct Check {
  enum class Status { Pass, Fail, Skip };
  std::string id;
  Status status = Status::Pass;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::json config;

  bool ok() const;
  // {"suite", "checks": [{"id", "status", "detail"}], "config"}
  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_pretty() const;
};

// axioms, cocycle2, onecocycleL, onecocycleJ, duality, locality,
// connection-independence, uniqueness, adjoint, all.
const std::vector<std::string>& suite_names();
// Throws ConfigError for unknown suites and for configurations that cannot be
// built; failures of individual checks, including thrown errors, are report content.
Report run_suite(const std::string& name, const RunConfig& rc);

// table {c2|C1L|C1J}; c2 uses the connection when one is given.
StructureTable build_table(const std::string& which, const Context& ctx, int window);
std::string table_pretty(const StructureTable& t);

}  // namespace knsuper::cli
