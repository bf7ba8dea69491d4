#include "knsuper/cli/suites.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "knsuper/abstract.hpp"

namespace knsuper::cli {

bool Report::ok() const {
  for (const auto& c : checks)
    if (c.status == Check::Status::Fail) return false;
  return true;
}

namespace {

const char* status_name(Check::Status s) {
  switch (s) {
    case Check::Status::Pass: return "pass";
    case Check::Status::Fail: return "fail";
    case Check::Status::Skip: return "skip";
  }
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"id", c.id}, {"status", status_name(c.status)}, {"detail", c.detail}});
  j["config"] = config;
  return j;
}

std::string Report::to_csv() const {
  std::string out = "suite,id,status,detail\n";
  for (const auto& c : checks)
    out += csv_field(suite) + "," + csv_field(c.id) + "," + status_name(c.status) + "," + csv_field(c.detail) + "\n";
  return out;
}

std::string Report::to_pretty() const {
  std::ostringstream os;
  std::size_t fails = 0;
  for (const auto& c : checks) {
    std::string tag = status_name(c.status);
    for (char& ch : tag) ch = char(std::toupper(static_cast<unsigned char>(ch)));
    os << tag << "  " << c.id << "  " << c.detail << "\n";
    fails += c.status == Check::Status::Fail;
  }
  os << suite << ": " << checks.size() - fails << "/" << checks.size() << " checks without failure\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms",   "cocycle2", "onecocycleL",
                                                 "onecocycleJ", "duality", "locality",
                                                 "connection-independence", "uniqueness", "adjoint"};
  return names;
}

namespace {

constexpr int kSamples = 100;

struct Suite {
  const Context& ctx;
  const RunConfig& rc;
  std::vector<Check>& out;

  const PunctureConfig& cfg() const { return ctx.cfg; }
  bool three() const { return cfg().mode() == PunctureMode::ThreePoint; }
  bool flat() const { return !rc.connection; }

  // Runs a check; a thrown library error becomes a failure.
  void check(const std::string& id, const std::function<std::string(bool&)>& body) {
    Check c{id, Check::Status::Pass, ""};
    try {
      bool ok = true;
      c.detail = body(ok);
      c.status = ok ? Check::Status::Pass : Check::Status::Fail;
    } catch (const Error& e) {
      c.status = Check::Status::Fail;
      c.detail = e.kind() + ": " + e.what();
    }
    out.push_back(std::move(c));
  }
  void skip(const std::string& id, const std::string& why) { out.push_back({id, Check::Status::Skip, why}); }

  std::mt19937_64 rng() const { return std::mt19937_64(rc.seed); }

  // Seeded samples of `arity` basis elements; the predicate reports failures.
  template <class F>
  std::string sample(const std::vector<BasisIndex>& basis, int arity, int count, bool& ok, F&& pred) {
    auto gen = rng();
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int t = 0; t < count; ++t) {
      std::vector<BasisIndex> xs;
      for (int k = 0; k < arity; ++k) xs.push_back(basis[pick(gen)]);
      if (!pred(xs)) {
        ok = false;
        std::string s = "counterexample (";
        for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + xs[k].to_string();
        return s + ")";
      }
    }
    return std::to_string(count) + " seeded samples";
  }

  SuperElement L(const BasisIndex& ix) const { return SuperElement::from_basis(ix, cfg()); }
  JordanElement J(const BasisIndex& ix) const { return JordanElement::from_basis(ix, cfg()); }

  static std::string first_or(const std::vector<std::string>& bad, bool& ok, const std::string& good) {
    if (bad.empty()) return good;
    ok = false;
    return std::to_string(bad.size()) + " mismatches, first " + bad.front();
  }

  void axioms() {
    const auto lb = lie_basis(cfg(), rc.window);
    check("lie-skew", [&](bool& ok) {
      return sample(lb, 2, kSamples, ok, [&](const auto& x) { return check_super_skew(L(x[0]), L(x[1])); });
    });
    check("lie-jacobi", [&](bool& ok) {
      return sample(lb, 3, kSamples, ok,
                    [&](const auto& x) { return check_super_jacobi(L(x[0]), L(x[1]), L(x[2])); });
    });
    const auto jb = jordan_basis(cfg(), rc.window);
    check("jordan-axioms", [&](bool& ok) {
      return sample(jb, 3, kSamples, ok, [&](const auto& x) {
        return check_antialgebra_axioms({{J(x[0]), J(x[1]), J(x[2])}}).ok();
      });
    });
  }

  void cocycle2_suite() {
    const auto lb = lie_basis(cfg(), rc.window);
    check("skew", [&](bool& ok) {
      return sample(lb, 2, kSamples, ok, [&](const auto& x) { return check_cocycle_skew(L(x[0]), L(x[1]), ctx.R); });
    });
    check("jacobi", [&](bool& ok) {
      return sample(lb, 3, kSamples, ok,
                    [&](const auto& x) { return check_cocycle_jacobi(L(x[0]), L(x[1]), L(x[2]), ctx.R); });
    });
    if (!flat()) return skip("closed-form", "closed forms are for the flat connection");
    check("closed-form", [&](bool& ok) {
      const auto bad = compare_c2_with_closed_form(table_c2(cfg(), rc.window), cfg(), rc.window);
      return first_or(bad, ok, "table matches on window " + std::to_string(rc.window));
    });
  }

  void onecocycle_L_suite() {
    const auto lb = lie_basis(cfg(), rc.window);
    check("identity", [&](bool& ok) {
      return sample(lb, 2, kSamples, ok, [&](const auto& x) { return check_onecocycle_L(L(x[0]), L(x[1]), ctx.R); });
    });
    if (flat()) {
      check("closed-form", [&](bool& ok) {
        return first_or(compare_C1L_with_closed_form(table_C1_L(cfg(), rc.window), cfg()), ok,
                        "table matches on window " + std::to_string(rc.window));
      });
    } else {
      skip("closed-form", "closed forms are for the flat connection");
    }
    duality_L();
  }

  void onecocycle_J_suite() {
    const auto jb = jordan_basis(cfg(), rc.window);
    check("identity", [&](bool& ok) {
      return sample(jb, 2, kSamples, ok, [&](const auto& x) { return check_onecocycle_J(J(x[0]), J(x[1]), ctx.R); });
    });
    if (flat()) {
      check("closed-form", [&](bool& ok) {
        return first_or(compare_C1J_with_closed_form(table_C1_J(cfg(), rc.window), cfg()), ok,
                        "table matches on window " + std::to_string(rc.window));
      });
    } else {
      skip("closed-form", "closed forms are for the flat connection");
    }
    if (three()) {
      check("odd-lines-agree-with-lie", [&](bool& ok) {
        std::size_t n = 0;
        for (const auto i : window_indices(Family::phi, rc.window)) {
          const BasisIndex ix{Family::phi, i};
          const auto a = expand(onecocycle_J(J(ix), ctx.R));
          const auto b = expand(onecocycle_L(L(ix), ctx.R));
          if (!a || !b || !same_coeffs(*a, *b)) {
            ok = false;
            return "differs at " + ix.to_string();
          }
          ++n;
        }
        return std::to_string(n) + " odd generators";
      });
    }
    duality_J();
  }

  // Seeded (x, u, y) draws with u from the dual basis.
  template <class F>
  std::string sample_dual(const std::vector<BasisIndex>& basis, const std::vector<BasisIndex>& duals, bool& ok,
                          F&& pred) {
    auto gen = rng();
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1), pickd(0, duals.size() - 1);
    for (int t = 0; t < kSamples; ++t) {
      const BasisIndex x = basis[pick(gen)], u = duals[pickd(gen)], y = basis[pick(gen)];
      if (!pred(x, u, y)) {
        ok = false;
        return "counterexample (" + x.to_string() + ", " + u.to_string() + ", " + y.to_string() + ")";
      }
    }
    return std::to_string(kSamples) + " seeded samples";
  }

  void duality_L() {
    check("coadjoint-duality-lie", [&](bool& ok) {
      return sample_dual(lie_basis(cfg(), rc.window), lie_dual_basis(cfg(), rc.window), ok,
                         [&](const auto& x, const auto& u, const auto& y) {
                           return check_coadjoint_duality_L(L(x), DualSuperElement::from_basis(u, cfg()), L(y));
                         });
    });
  }

  void duality_J() {
    check("coadjoint-duality-jordan", [&](bool& ok) {
      return sample_dual(jordan_basis(cfg(), rc.window), jordan_dual_basis(cfg(), rc.window), ok,
                         [&](const auto& x, const auto& u, const auto& y) {
                           return check_coadjoint_duality_J(J(x), DualJordanElement::from_basis(u, cfg()), J(y));
                         });
    });
  }

  void duality() {
    check("biorthogonality", [&](bool& ok) {
      std::size_t n = 0;
      for (Family f : {Family::V, Family::phi, Family::G, Family::e, Family::b, Family::eps, Family::a}) {
        if (!family_valid_for(f, cfg().mode())) continue;
        const auto idx = window_indices(f, rc.window);
        for (const auto i : idx)
          for (const auto j : idx) {
            const Scalar v = kn_pairing(basis(dual_of(f), i, cfg()), basis(f, j, cfg()));
            ++n;
            if (v != Scalar(long(i == j))) {
              ok = false;
              return "<" + BasisIndex{dual_of(f), i}.to_string() + ", " + BasisIndex{f, j}.to_string() +
                     "> = " + v.to_string();
            }
          }
      }
      return std::to_string(n) + " pairings form the identity";
    });
    duality_L();
    duality_J();
  }

  void locality() {
    check("c2-support", [&](bool& ok) {
      const auto support = c2_support_twice(table_c2(cfg(), rc.window));
      const std::set<int> allowed = three() ? std::set<int>{-4, 0, 2, 4, 8} : std::set<int>{0};
      auto show = [](const std::set<int>& set) {
        std::string s;
        for (int t : set) s += (s.empty() ? "" : ", ") + HalfInt::from_twice(t).to_string();
        return "{" + s + "}";
      };
      for (int t : support)
        if (!allowed.count(t)) ok = false;
      return "index sums i + j with c != 0: " + show(support) + " within " + show(allowed);
    });
  }

  void connection_independence() {
    std::vector<std::pair<std::string, ProjectiveConnection>> conns;
    if (!flat()) {
      conns.push_back({*rc.connection, ctx.R});
    } else if (three()) {
      const MeroFun q = MeroFun::quadric_power(cfg(), -1);
      conns = {{"1", {MeroFun::constant(cfg(), 1)}},
               {"(z^2 - al^2)^-1", {q}},
               {"z*(z^2 - al^2)^-1", {MeroFun::z(cfg()) * q}}};
    } else {
      conns = {{"1", {MeroFun::constant(cfg(), 1)}},
               {"z^-1", {MeroFun::z(cfg()).pow(-1)}},
               {"z^-2", {MeroFun::z(cfg()).pow(-2)}}};
    }
    const auto lb = lie_basis(cfg(), rc.window);
    for (const auto& [name, R] : conns) {
      check("witness R=" + name, [&](bool& ok) {
        for (const auto& x : lb)
          for (const auto& y : lb)
            if (!coboundary_witness_check(R, L(x), L(y))) {
              ok = false;
              return "fails at (" + x.to_string() + ", " + y.to_string() + ")";
            }
        return std::to_string(lb.size() * lb.size()) + " basis pairs";
      });
    }
  }

  void uniqueness() {
    check("interior-solution", [&](bool& ok) {
      const CocycleUnknowns u = unique_solver(rc.window);
      const auto bad = u.mismatches_with_closed_form();
      return first_or(bad, ok,
                      "W=" + std::to_string(rc.window) + ": rank " + std::to_string(u.rank) + " of " +
                          std::to_string(u.unknowns) + " unknowns; interior |index| <= " +
                          std::to_string(u.interior) + " fixed to -n delta, (k^2 - 1/4) delta");
    });
  }

  static std::string dims(const AbstractAlgebra& g) {
    return "(" + std::to_string(g.even_dim()) + "|" + std::to_string(g.odd_dim()) + ")";
  }

  void adjoint() {
    const AbstractAlgebra K = AbstractAlgebra::K3();
    const AbstractAlgebra osp = AbstractAlgebra::osp12();
    check("k3-antialgebra", [&](bool& ok) {
      const auto r = check_antialgebra_table(K);
      ok = r.ok();
      return ok ? std::to_string(r.checked) + " relations" : r.failures.front();
    });
    const AbstractAlgebra G = adjoint_superalgebra(K);
    check("adjoint-dimension", [&](bool& ok) {
      ok = G.even_dim() == 3 && G.odd_dim() == 2;
      return dims(G);
    });
    check("adjoint-jacobi", [&](bool& ok) {
      const auto r = check_lie_table(G);
      ok = r.ok() && r.skipped == 0;
      return ok ? std::to_string(r.checked) + " basis relations" : (r.ok() ? "undefined brackets" : r.failures.front());
    });
    auto witness = [&](const AbstractAlgebra& g) {
      return [&g, &osp](bool& ok) {
        const auto w = find_osp12_witness(g);
        ok = w && check_isomorphism(osp, g, w->images).empty();
        if (!ok) return std::string("no witness map found");
        std::string s;
        for (const auto& line : w->describe(g)) s += (s.empty() ? "" : "; ") + line;
        return s;
      };
    };
    check("adjoint-witness", witness(G));
    const Derivations d = derivations(K);
    check("derivations-dimension", [&](bool& ok) {
      ok = d.even.size() == 3 && d.odd.size() == 2;
      return dims(d.algebra);
    });
    check("derivations-jacobi", [&](bool& ok) {
      const auto r = check_lie_table(d.algebra);
      ok = r.ok();
      return ok ? std::to_string(r.checked) + " basis relations" : r.failures.front();
    });
    check("derivations-witness", witness(d.algebra));
    check("right-multiplication-is-odd-derivation", [&](bool& ok) {
      for (std::size_t i = 0; i < K.dim(); ++i) {
        if (!K.parity(i)) continue;
        const LinearMap R = right_multiplication(K, AbstractAlgebra::unit(i));
        if (!is_derivation(K, R, 1) || !coordinates_in(d.odd, R, K.dim())) {
          ok = false;
          return "fails for " + K.labels()[i];
        }
      }
      return std::string("a and b");
    });
    check("ak1-window-3-adjoint-jacobi", [&](bool& ok) {
      const AbstractAlgebra A = adjoint_superalgebra(AbstractAlgebra::AK1(3), true);
      const auto r = check_lie_table(A);
      ok = r.ok() && r.checked > 0;
      return ok ? dims(A) + ", " + std::to_string(r.checked) + " defined relations, " + std::to_string(r.skipped) +
                      " left out"
                : (r.ok() ? "nothing to check" : r.failures.front());
    });
  }

  void run(const std::string& name) {
    if (name == "axioms") axioms();
    else if (name == "cocycle2") cocycle2_suite();
    else if (name == "onecocycleL") onecocycle_L_suite();
    else if (name == "onecocycleJ") onecocycle_J_suite();
    else if (name == "duality") duality();
    else if (name == "locality") locality();
    else if (name == "connection-independence") connection_independence();
    else if (name == "uniqueness") uniqueness();
    else if (name == "adjoint") adjoint();
    else throw ConfigError("unknown suite " + name);
  }
};

}  // namespace

Report run_suite(const std::string& name, const RunConfig& rc) {
  if (name != "all" && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw ConfigError("unknown suite " + name);
  const Context ctx = make_context(rc);
  Report rep;
  rep.suite = name;
  rep.config = rc.to_json();
  if (name == "all") {
    for (const auto& s : suite_names()) {
      std::vector<Check> part;
      Suite{ctx, rc, part}.run(s);
      for (auto& c : part) {
        c.id = s + "/" + c.id;
        rep.checks.push_back(std::move(c));
      }
    }
  } else {
    Suite{ctx, rc, rep.checks}.run(name);
  }
  return rep;
}

StructureTable build_table(const std::string& which, const Context& ctx, int window) {
  if (which == "c2") return table_c2(ctx.cfg, window, &ctx.R);
  if (which == "C1L") return table_C1_L(ctx.cfg, window);
  if (which == "C1J") return table_C1_J(ctx.cfg, window);
  throw ConfigError("unknown table " + which + "; expected c2, C1L or C1J");
}

std::string table_pretty(const StructureTable& t) {
  std::ostringstream os;
  for (const auto& e : t.pairs)
    if (!e.value.is_zero()) os << "c(" << e.left.to_string() << ", " << e.right.to_string() << ") = " << e.value.to_string() << "\n";
  for (const auto& e : t.maps) os << "C(" << e.arg.to_string() << ") = " << render_coeffs(e.coeffs) << "\n";
  return os.str();
}

}  // namespace knsuper::cli
