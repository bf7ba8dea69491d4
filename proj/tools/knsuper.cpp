// knsuper: evaluate expressions, emit structure tables and run verification
// suites. Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 domain or configuration error.

#include <CLI11.hpp>

#include <iostream>

#include "knsuper/cli/suites.hpp"

namespace {

using namespace knsuper;
using namespace knsuper::cli;

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kDomain = 3 };

void emit_error(const Error& e, Format f) {
  if (f == Format::Json) {
    nlohmann::json j{{"error", e.kind()}, {"message", e.what()}};
    if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
      j["offset"] = s->offset();
      j["expected"] = s->expected();
    }
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << e.kind() << ": " << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cocycles on Krichever-Novikov superalgebras of the punctured sphere"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  std::string beta, connection, format = "pretty";
  app.add_option("--points", rc.points, "Number of punctures")->check(CLI::IsMember({2, 3}))->capture_default_str();
  app.add_option("--beta", beta, "Numeric value of the square root of alpha (three points)");
  app.add_option("--window", rc.window, "Index window")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--connection", connection, "Projective connection as a function of z, e.g. \"(z^2 - al^2)^-1\"");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
  app.add_option("--seed", rc.seed, "Seed of the randomized checks")->capture_default_str();

  std::string expr_text, table_name, suite_name;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression");
  eval_cmd->add_option("expr", expr_text, "Expression, e.g. \"c2(V[2], V[-2])\"")->required();
  auto* table_cmd = app.add_subcommand("table", "Emit a structure table");
  table_cmd->add_option("which", table_name, "c2, C1L or C1J")->required()->check(CLI::IsMember({"c2", "C1L", "C1J"}));
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify_cmd->add_option("suite", suite_name, "Suite name")->required()->check(CLI::IsMember(suites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  rc.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Pretty;
  try {
    if (!beta.empty()) {
      try {
        rc.beta = Rational(beta);
        if (rc.beta->get_den() == 0) throw ConfigError("--beta has a zero denominator");
        rc.beta->canonicalize();
      } catch (const std::invalid_argument&) {
        throw ConfigError("--beta expects a rational p/q, got " + beta);
      }
    }
    if (!connection.empty()) rc.connection = connection;

    if (*eval_cmd) {
      const Context ctx = make_context(rc);
      const Expr e = parse(expr_text);
      const Value v = eval(e, ctx);
      switch (rc.format) {
        case Format::Json: {
          nlohmann::json j = value_json(v);
          j["expr"] = render(e);
          j["config"] = rc.to_json();
          std::cout << j.dump(2) << "\n";
          break;
        }
        case Format::Csv: std::cout << "expr,value\n\"" << render(e) << "\",\"" << render_value(v) << "\"\n"; break;
        case Format::Pretty: std::cout << render_value(v) << "\n"; break;
      }
      return kOk;
    }
    if (*table_cmd) {
      const Context ctx = make_context(rc);
      const StructureTable t = build_table(table_name, ctx, rc.window);
      switch (rc.format) {
        case Format::Json: std::cout << t.to_json().dump(2) << "\n"; break;
        case Format::Csv: std::cout << t.to_csv(); break;
        case Format::Pretty: std::cout << table_pretty(t); break;
      }
      return kOk;
    }
    const Report r = run_suite(suite_name, rc);
    switch (rc.format) {
      case Format::Json: std::cout << r.to_json().dump(2) << "\n"; break;
      case Format::Csv: std::cout << r.to_csv(); break;
      case Format::Pretty: std::cout << r.to_pretty(); break;
    }
    return r.ok() ? kOk : kFailed;
  } catch (const ParseError& e) {
    emit_error(e, rc.format);
    return kParse;
  } catch (const Error& e) {
    emit_error(e, rc.format);
    return kDomain;
  }
}
