#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <random>

#include "knsuper/cli/suites.hpp"

using namespace knsuper;
using namespace knsuper::cli;

namespace {

Context three_ctx() { return make_context(RunConfig{}); }
Context two_ctx() {
  RunConfig rc;
  rc.points = 2;
  return make_context(rc);
}

std::string ev(const std::string& s, const Context& ctx) { return render_value(eval(parse(s), ctx)); }

const SyntaxError& syntax(const std::string& s) {
  static SyntaxError last(0, {}, "");
  try {
    parse(s);
  } catch (const SyntaxError& e) {
    last = e;
    return last;
  }
  FAIL("no parse error for " << s);
  return last;
}

bool has(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const auto* s = std::get_if<Scalar>(&a)) return *s == std::get<Scalar>(b);
  if (const auto* f = std::get_if<MeroFun>(&a)) return *f == std::get<MeroFun>(b);
  const auto& x = std::get<ElementValue>(a).parts;
  const auto& y = std::get<ElementValue>(b).parts;
  if (x.size() != y.size()) return false;
  for (const auto& [w, d] : x) {
    auto it = y.find(w);
    if (it == y.end() || !(it->second == d)) return false;
  }
  return true;
}

// Random expression trees over the whole grammar.
Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 12 : 5);
  Expr e;
  const int k = kind(rng);
  auto sub = [&] { return random_expr(rng, depth - 1); };
  switch (k) {
    case 0: {
      e.kind = Expr::Kind::Number;
      e.number = long(rng() % 50);
      break;
    }
    case 1: e.kind = Expr::Kind::Alpha; break;
    case 2: e.kind = Expr::Kind::Sqrt2; break;
    case 3: e.kind = Expr::Kind::Z; break;
    case 4: e.kind = Expr::Kind::Beta; break;
    case 5: {
      e.kind = Expr::Kind::Atom;
      static const Family fams[] = {Family::V, Family::phi, Family::G, Family::Vdual, Family::phidual, Family::e};
      const Family f = fams[rng() % 6];
      const int t = int(rng() % 11) - 5;
      e.atom = {f, has_half_integer_index(f) ? HalfInt::from_twice(2 * t + 1) : HalfInt(t)};
      break;
    }
    case 6: e.kind = Expr::Kind::Neg; e.args = {sub()}; break;
    case 7: e.kind = Expr::Kind::Add; e.args = {sub(), sub()}; break;
    case 8: e.kind = Expr::Kind::Sub; e.args = {sub(), sub()}; break;
    case 9: e.kind = Expr::Kind::Mul; e.args = {sub(), sub()}; break;
    case 10: e.kind = Expr::Kind::Div; e.args = {sub(), sub()}; break;
    case 11: {
      e.kind = Expr::Kind::Pow;
      e.number = long(rng() % 7) - 3;
      e.args = {sub()};
      break;
    }
    default: {
      e.kind = Expr::Kind::Call;
      static const char* names[] = {"bracket", "C1L", "pair", "jprod"};
      e.name = names[rng() % 4];
      for (int i = 0; i < call_arity(e.name); ++i) e.args.push_back(sub());
      break;
    }
  }
  return e;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(KNSUPER_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
  CHECK(dump(parse("bracket(V[0], V[1])")) == "(bracket V[0] V[1])");
  CHECK(dump(parse("c2(phi[5/2], phi[-5/2])")) == "(c2 phi[5/2] phi[-5/2])");
  CHECK(dump(parse("2*al*G[-1] + G[0]")) == "(add (mul (mul 2 al) G[-1]) G[0])");
  CHECK(dump(parse("-2*V[1]")) == "(mul (neg 2) V[1])");
  CHECK(dump(parse("1 - 2 - 3")) == "(sub (sub 1 2) 3)");
  CHECK(dump(parse("1 + 2*3")) == "(add 1 (mul 2 3))");
  CHECK(dump(parse("z^-2")) == "(pow -2 z)");
  CHECK(dump(parse("(z^2 - al^2)^-1")) == "(pow -1 (sub (pow 2 z) (pow 2 al)))");
  CHECK(dump(parse("3/2*s")) == "(mul (div 3 2) s)");
  const Expr d = parse("V*[-2]");
  CHECK(d.kind == Expr::Kind::Atom);
  CHECK(d.atom == BasisIndex{Family::Vdual, -2});
  CHECK(parse("phi*[3/2]").atom == BasisIndex{Family::phidual, half(3)});
  CHECK(parse(" C1J ( G[ 3 ] ) ") == parse("C1J(G[3])"));
}

TEST_CASE("parse errors carry offset and expected tokens") {
  const auto& e1 = syntax("bracket(V[0] V[1])");
  CHECK(e1.offset() == 13);
  CHECK(has(e1.expected(), "','"));
  CHECK(syntax("phi[4/2]").offset() == 4);
  CHECK(syntax("V[1/3]").offset() == 4);
  const auto& e2 = syntax("foo(1)");
  CHECK(e2.offset() == 0);
  CHECK(has(e2.expected(), "family name"));
  const auto& e3 = syntax("1 +");
  CHECK(e3.offset() == 3);
  CHECK(e3.found() == "end of input");
  CHECK(syntax("1 # 2").offset() == 2);
  CHECK(syntax("C1L(V[1], V[2])").offset() == 8);
  CHECK(syntax("V[1]]").offset() == 4);
  CHECK_THROWS_AS(parse("z^"), ParseError);
}

TEST_CASE("render and parse round trip") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 500; ++t) {
    const Expr e = random_expr(rng, 4);
    const std::string s = render(e);
    const Expr back = parse(s);
    CHECK_MESSAGE(back == e, s << " reparsed as " << dump(back) << " from " << dump(e));
    CHECK(render(back) == s);
  }
  for (const char* s : {"-(1 + 2)*V[1]", "((al))", "1 - (2 - 3)", "-(-z)^2", "2/(3/4)", "pair(V*[0], V[0])"}) {
    const Expr e = parse(s);
    CHECK(parse(render(e)) == e);
  }
}

TEST_CASE("evaluation examples") {
  const Context three = three_ctx(), two = two_ctx();
  CHECK(ev("c2(V[2], V[-2])", three) == "-6");
  CHECK(ev("bracket(e[1], e[-1])", two) == "-2*e[0]");
  CHECK(ev("C1J(G[3])", three) == "-3*G*[-3] - 2*al^2*G*[-1]");
  CHECK(ev("C1L(V[4])", three) == "-60*V*[-4] - 48*al^2*V*[-2]");
  CHECK(ev("bracket(V[0], V[1])", three) == "2*al^2*V[-1] + V[1]");
  CHECK(ev("jprod(a[1/2], a[-1/2])", two) == "-1/2*eps[0]");
  CHECK(ev("jprod(eps[1], a[-1/2])", two) == "1/2*a[1/2]");
  CHECK(ev("pair(V*[0], V[0])", three) == "1");
  CHECK(ev("pair(phi*[-1/2], phi[1/2])", three) == "0");
  CHECK(ev("coad(eps[2], eps*[0])", two) == "eps*[-2]");
  CHECK(ev("coad(e[0], e*[-2])", two) == "2*e*[-2]");
  CHECK(ev("V[1] - z*V[0] + al^2*V[-1]", three) == "0");
  CHECK_THROWS_AS(eval(parse("V[0]/z"), three), Error);
  CHECK(ev("dot(phi[1/2], phi[-1/2])", three) == "2*V[0]");
  CHECK(ev("(1 + s)^2", three) == "3 + 2*s");
  CHECK(ev("c2(b[3/2], b[-3/2])", two) == "4");
  // Mixed parity elements print both parts.
  CHECK(ev("V[0] - phi[1/2]", three) == "V[0] - phi[1/2]");
  // Numeric specialization.
  RunConfig rc;
  rc.beta = Rational(3, 2);
  CHECK(ev("c2(V[4], V[-2])", make_context(rc)) == "-243");
  CHECK(ev("al", make_context(rc)) == "9/4");
}

TEST_CASE("rendered values parse back to the same value") {
  const Context three = three_ctx(), two = two_ctx();
  for (const char* s : {"C1L(V[4])", "C1J(G[3])", "bracket(V[0], V[1])", "C1L(phi[7/2])", "coad(phi[1/2], V*[2])",
                        "2*al*G[-1] + G[0]", "(1 + s)/(al - 1)"}) {
    const Value v = eval(parse(s), three);
    const std::string r = render_value(v);
    CHECK_MESSAGE(same_value(eval(parse(r), three), v), s << " rendered as " << r);
  }
  for (const char* s : {"C1J(a[5/2])", "C1L(b[5/2])", "jprod(eps[2], a[1/2])"}) {
    const Value v = eval(parse(s), two);
    CHECK(same_value(eval(parse(render_value(v)), two), v));
  }
}

TEST_CASE("type and configuration errors") {
  const Context three = three_ctx();
  CHECK_THROWS_AS(eval(parse("V[1]*V[2]"), three), TypeError);
  CHECK_THROWS_AS(eval(parse("pair(V[0], V[0])"), three), TypeError);
  CHECK_THROWS_AS(eval(parse("bracket(1, V[0])"), three), TypeError);
  CHECK_THROWS_AS(eval(parse("C1J(V[1])"), three), TypeError);
  CHECK_THROWS_AS(eval(parse("V[1] + 1"), three), TypeError);
  CHECK_THROWS_AS(eval(parse("e[1]"), three), InvalidFamilyForConfig);
  CHECK_THROWS_AS(eval(parse("V[1/2]"), three), ParityMismatch);
  RunConfig bad;
  bad.points = 4;
  CHECK_THROWS_AS(make_context(bad), ConfigError);
  bad.points = 2;
  bad.beta = Rational(1);
  CHECK_THROWS_AS(make_context(bad), ConfigError);
  bad.points = 3;
  bad.beta = Rational(0);
  CHECK_THROWS_AS(make_context(bad), ConfigError);
  RunConfig conn;
  conn.connection = "V[0]";
  CHECK_THROWS_AS(make_context(conn), TypeError);
  conn.connection = "(z^2 - al^2)^-1";
  CHECK(make_context(conn).R.R == MeroFun::quadric_power(PunctureConfig::three_point(), -1));
}

TEST_CASE("suites") {
  RunConfig rc;
  rc.points = 2;
  rc.window = 6;
  const Report u = run_suite("uniqueness", rc);
  CHECK(u.ok());
  REQUIRE(u.checks.size() == 1);
  CHECK(u.to_json()["checks"][0]["status"] == "pass");
  CHECK(u.to_json()["suite"] == "uniqueness");
  CHECK(u.to_json()["config"]["window"] == 6);

  RunConfig r3;
  r3.window = 6;
  CHECK(run_suite("duality", r3).ok());
  const Report loc = run_suite("locality", r3);
  CHECK(loc.ok());
  CHECK(loc.checks[0].detail.find("{0, 2, 4}") != std::string::npos);

  RunConfig small;
  small.window = 3;
  small.seed = 5;
  const Report a = run_suite("axioms", small), b = run_suite("axioms", small);
  CHECK(a.ok());
  CHECK(a.to_json() == b.to_json());
  CHECK(run_suite("adjoint", small).ok());

  RunConfig broken;
  broken.window = 1;
  const Report f = run_suite("uniqueness", broken);
  CHECK(!f.ok());
  CHECK(f.checks[0].detail.rfind("ConfigError", 0) == 0);
  CHECK_THROWS_AS(run_suite("nosuch", rc), ConfigError);
  CHECK(a.to_csv().rfind("suite,id,status,detail\n", 0) == 0);
}

TEST_CASE("tables") {
  const Context three = three_ctx();
  const StructureTable t = build_table("C1J", three, 3);
  CHECK(table_pretty(t).find("C(G[3]) = -3*G*[-3] - 2*al^2*G*[-1]") != std::string::npos);
  CHECK_THROWS_AS(build_table("c3", three, 3), ConfigError);
}

TEST_CASE("tool exit codes") {
  CHECK(run_tool("eval \"c2(V[2], V[-2])\"") == 0);
  CHECK(run_tool("--points 2 --window 6 verify uniqueness") == 0);
  CHECK(run_tool("verify uniqueness --window 1") == 1);
  CHECK(run_tool("eval \"bracket(\"") == 2);
  CHECK(run_tool("--points 5 eval 1") == 2);
  CHECK(run_tool("--points 2 eval \"V[0]\"") == 3);
  CHECK(run_tool("--beta 0 eval 1") == 3);
  CHECK(run_tool("--format json table c2 --window 2") == 0);
}
