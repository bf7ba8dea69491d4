#include "knsuper/cli/eval.hpp"

#include <set>

namespace knsuper::cli {

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["points"] = points;
  j["beta"] = beta ? nlohmann::json(beta->get_str()) : nlohmann::json(nullptr);
  j["window"] = window;
  j["connection"] = connection ? nlohmann::json(*connection) : nlohmann::json(nullptr);
  j["seed"] = seed;
  return j;
}

Context make_context(const RunConfig& rc) {
  if (rc.points != 2 && rc.points != 3) throw ConfigError("--points must be 2 or 3");
  if (rc.beta && rc.points != 3) throw ConfigError("--beta applies to three points only");
  PunctureConfig cfg = rc.points == 2 ? PunctureConfig::two_point()
                                      : (rc.beta ? PunctureConfig::three_point(*rc.beta) : PunctureConfig::three_point());
  Context ctx{cfg, ProjectiveConnection::zero(cfg)};
  if (rc.connection) {
    const Value v = eval(parse(*rc.connection), ctx);
    if (const auto* s = std::get_if<Scalar>(&v)) ctx.R = {MeroFun::constant(cfg, *s)};
    else if (const auto* f = std::get_if<MeroFun>(&v)) ctx.R = {*f};
    else throw TypeError("--connection must be a function of z, not a density");
  }
  return ctx;
}

namespace {

std::optional<Flavor> family_flavor(Family f) {
  switch (f) {
    case Family::phi:
    case Family::phidual: return std::nullopt;
    case Family::G:
    case Family::eps:
    case Family::a:
    case Family::Gdual:
    case Family::epsdual:
    case Family::adual: return Flavor::Jordan;
    default: return Flavor::Lie;
  }
}

std::optional<Flavor> merge_flavor(std::optional<Flavor> a, std::optional<Flavor> b) {
  if (a && b && *a != *b) throw TypeError("mixes Lie and Jordan elements (b vs a on two points)");
  return a ? a : b;
}

ElementValue element(const Density& d, std::optional<Flavor> fl) {
  ElementValue v;
  if (!d.is_zero()) v.parts.emplace(d.weight().twice(), d);
  v.flavor = fl;
  return v;
}

template <int E, int O>
ElementValue from_pair(const GradedPair<E, O>& x, Flavor fl) {
  ElementValue v;
  if (!x.even().is_zero()) v.parts.emplace(E, x.even());
  if (!x.odd().is_zero()) v.parts.emplace(O, x.odd());
  v.flavor = fl;
  return v;
}

ElementValue add(const ElementValue& x, const ElementValue& y, const Scalar& c) {
  ElementValue out = x;
  for (const auto& [w, d] : y.parts) {
    auto it = out.parts.find(w);
    if (it == out.parts.end()) out.parts.emplace(w, c * d);
    else it->second = it->second + c * d;
    if (out.parts.at(w).is_zero()) out.parts.erase(w);
  }
  out.flavor = merge_flavor(x.flavor, y.flavor);
  return out;
}

ElementValue scale(const ElementValue& x, const MeroFun& f) {
  ElementValue out;
  out.flavor = x.flavor;
  for (const auto& [w, d] : x.parts) {
    Density p(f * d.f(), d.weight());
    if (!p.is_zero()) out.parts.emplace(w, p);
  }
  return out;
}

std::string kind_name(const Value& v) {
  if (std::holds_alternative<Scalar>(v)) return "a scalar";
  if (std::holds_alternative<MeroFun>(v)) return "a function";
  return "a density";
}

MeroFun as_function(const Value& v, const PunctureConfig& cfg) {
  if (const auto* s = std::get_if<Scalar>(&v)) return MeroFun::constant(cfg, *s);
  return std::get<MeroFun>(v);
}

bool weights_within(const ElementValue& v, std::initializer_list<int> allowed) {
  const std::set<int> ok(allowed);
  for (const auto& [w, d] : v.parts)
    if (!ok.count(w)) return false;
  return true;
}

std::string weights_of(const ElementValue& v) {
  std::string out;
  for (const auto& [w, d] : v.parts) out += (out.empty() ? "" : ", ") + HalfInt::from_twice(w).to_string();
  return out.empty() ? "none" : out;
}

template <class P>
P as_pair(const ElementValue& v, const PunctureConfig& cfg, const char* what) {
  P out(cfg);
  for (const auto& [w, d] : v.parts) {
    if (w == P::even_weight.twice()) out = out + P::from_even(d.f());
    else if (w == P::odd_weight.twice()) out = out + P::from_odd(d.f());
    else
      throw TypeError(std::string(what) + " needs weights " + P::even_weight.to_string() + " and " +
                      P::odd_weight.to_string() + ", got " + weights_of(v));
  }
  return out;
}

const ElementValue& need_element(const Value& v, const std::string& call) {
  if (const auto* e = std::get_if<ElementValue>(&v)) return *e;
  throw TypeError(call + " takes densities, got " + kind_name(v));
}

Value call(const Expr& e, const Context& ctx) {
  std::vector<Value> args;
  for (const auto& a : e.args) args.push_back(eval(a, ctx));
  const PunctureConfig& cfg = ctx.cfg;
  const std::string& n = e.name;
  const ElementValue& x = need_element(args[0], n);
  if (n == "C1L") return from_pair(onecocycle_L(as_super(x, cfg), ctx.R), Flavor::Lie);
  if (n == "C1J") return from_pair(onecocycle_J(as_jordan(x, cfg), ctx.R), Flavor::Jordan);
  const ElementValue& y = need_element(args[1], n);
  if (n == "bracket") return from_pair(sbracket(as_super(x, cfg), as_super(y, cfg)), Flavor::Lie);
  if (n == "jprod") return from_pair(jproduct(as_jordan(x, cfg), as_jordan(y, cfg)), Flavor::Jordan);
  if (n == "c2") return cocycle2(as_super(x, cfg), as_super(y, cfg), ctx.R);
  if (n == "dot") {
    ElementValue out;
    out.flavor = merge_flavor(x.flavor, y.flavor);
    for (const auto& [w1, d1] : x.parts)
      for (const auto& [w2, d2] : y.parts) out = add(out, element(dens_dot(d1, d2), std::nullopt), Scalar(1L));
    return out;
  }
  if (n == "pair") {
    if (x.parts.empty() || y.parts.empty()) return Scalar();
    Scalar total;
    bool matched = false;
    for (const auto& [w1, d1] : x.parts)
      for (const auto& [w2, d2] : y.parts)
        if (w1 + w2 == 2) {
          total += kn_pairing(d1, d2);
          matched = true;
        }
    if (!matched)
      throw TypeError("pair needs weights summing to 1, got " + weights_of(x) + " against " + weights_of(y));
    return total;
  }
  if (n == "coad") {
    const bool lie = weights_within(x, {-2, -1}) && weights_within(y, {4, 3});
    const bool jordan = weights_within(x, {0, -1}) && weights_within(y, {2, 3});
    if (!lie && !jordan)
      throw TypeError("coad needs an element and a dual element, got weights " + weights_of(x) + " and " +
                      weights_of(y));
    // Purely odd arguments fit both actions; the flavor tags decide, Lie by default.
    const bool use_jordan = jordan && (!lie || merge_flavor(x.flavor, y.flavor) == Flavor::Jordan);
    if (use_jordan)
      return from_pair(coad_J(as_jordan(x, cfg), as_pair<DualJordanElement>(y, cfg, "coad")), Flavor::Jordan);
    return from_pair(coad_L(as_super(x, cfg), as_pair<DualSuperElement>(y, cfg, "coad")), Flavor::Lie);
  }
  throw TypeError("unknown call " + n);
}

}  // namespace

SuperElement as_super(const ElementValue& v, const PunctureConfig& cfg) {
  return as_pair<SuperElement>(v, cfg, "a Lie superalgebra argument");
}

JordanElement as_jordan(const ElementValue& v, const PunctureConfig& cfg) {
  return as_pair<JordanElement>(v, cfg, "a Jordan superalgebra argument");
}

Value eval(const Expr& e, const Context& ctx) {
  const PunctureConfig& cfg = ctx.cfg;
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Atom: return element(basis(e.atom, cfg), family_flavor(e.atom.family));
    case K::Number: return Scalar(e.number);
    case K::Alpha: return cfg.alpha();
    case K::Beta: return cfg.beta();
    case K::Sqrt2: return Scalar::sqrt2();
    case K::Z: return MeroFun::z(cfg);
    case K::Call: return call(e, ctx);
    default: break;
  }
  const Value a = eval(e.args[0], ctx);
  if (e.kind == K::Neg) {
    if (const auto* s = std::get_if<Scalar>(&a)) return -*s;
    if (const auto* f = std::get_if<MeroFun>(&a)) return -*f;
    return add(ElementValue{{}, std::get<ElementValue>(a).flavor}, std::get<ElementValue>(a), Scalar(-1L));
  }
  if (e.kind == K::Pow) {
    if (const auto* s = std::get_if<Scalar>(&a)) return s->pow(e.number);
    if (const auto* f = std::get_if<MeroFun>(&a)) return f->pow(int(e.number));
    throw TypeError("densities have no powers; use dot()");
  }
  const Value b = eval(e.args[1], ctx);
  const auto* ea = std::get_if<ElementValue>(&a);
  const auto* eb = std::get_if<ElementValue>(&b);
  switch (e.kind) {
    case K::Add:
    case K::Sub: {
      const Scalar sign(e.kind == K::Add ? 1L : -1L);
      if (ea && eb) return add(*ea, *eb, sign);
      if (ea || eb) throw TypeError("cannot add " + kind_name(a) + " and " + kind_name(b));
      if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
        return std::get<Scalar>(a) + sign * std::get<Scalar>(b);
      return as_function(a, cfg) + sign * as_function(b, cfg);
    }
    case K::Mul: {
      if (ea && eb) throw TypeError("product of two densities; use dot(), bracket() or jprod()");
      if (ea) return scale(*ea, as_function(b, cfg));
      if (eb) return scale(*eb, as_function(a, cfg));
      if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
        return std::get<Scalar>(a) * std::get<Scalar>(b);
      return as_function(a, cfg) * as_function(b, cfg);
    }
    case K::Div: {
      if (eb) throw TypeError("cannot divide by a density");
      if (const auto* s = std::get_if<Scalar>(&b)) {
        const Scalar inv = Scalar(1L) / *s;
        if (ea) return scale(*ea, MeroFun::constant(cfg, inv));
        if (const auto* sa = std::get_if<Scalar>(&a)) return *sa * inv;
        return inv * std::get<MeroFun>(a);
      }
      const MeroFun inv = std::get<MeroFun>(b).pow(-1);
      if (ea) return scale(*ea, inv);
      return as_function(a, cfg) * inv;
    }
    default: break;
  }
  throw TypeError("unsupported expression");
}

namespace {

struct Piece {
  std::string text;
  std::optional<CoeffMap> coeffs;
};

std::vector<Piece> pieces(const ElementValue& v) {
  std::vector<std::pair<int, const Density*>> order;
  for (const auto& [w, d] : v.parts) order.push_back({w, &d});
  // Even (integer) weights first.
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return (x.first % 2 != 0) < (y.first % 2 != 0);
  });
  std::vector<Piece> out;
  for (const auto& [w, d] : order) {
    if (d->is_zero()) continue;
    const auto ex = expand_exact(*d, v.flavor.value_or(Flavor::Lie));
    if (ex && ex->exact()) out.push_back({render_coeffs(ex->coeffs), ex->coeffs});
    else out.push_back({d->to_string(), std::nullopt});
  }
  return out;
}

}  // namespace

std::string render_value(const Value& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return s->to_string();
  if (const auto* f = std::get_if<MeroFun>(&v)) return f->to_string();
  std::string out;
  for (const auto& p : pieces(std::get<ElementValue>(v))) {
    if (out.empty()) out = p.text;
    else if (p.text[0] == '-') out += " - " + p.text.substr(1);
    else out += " + " + p.text;
  }
  return out.empty() ? "0" : out;
}

nlohmann::json value_json(const Value& v) {
  nlohmann::json j;
  j["value"] = render_value(v);
  if (std::holds_alternative<Scalar>(v)) {
    j["kind"] = "scalar";
  } else if (std::holds_alternative<MeroFun>(v)) {
    j["kind"] = "function";
  } else {
    j["kind"] = "element";
    nlohmann::json c = nlohmann::json::object();
    bool all = true;
    for (const auto& p : pieces(std::get<ElementValue>(v))) {
      if (!p.coeffs) {
        all = false;
        continue;
      }
      for (const auto& [ix, s] : *p.coeffs) c[ix.to_string()] = s.to_string();
    }
    if (all) j["coeffs"] = c;
  }
  return j;
}

}  // namespace knsuper::cli
