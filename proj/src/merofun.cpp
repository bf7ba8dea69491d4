#include "knsuper/merofun.hpp"

#include <algorithm>

#include "knsuper/errors.hpp"

namespace knsuper {

PunctureConfig PunctureConfig::two_point() {
  static const auto data = std::make_shared<const Data>(
      Data{PunctureMode::TwoPoint, true, Scalar::beta(), Scalar::alpha(), {Scalar()}});
  return PunctureConfig(data);
}

PunctureConfig PunctureConfig::three_point() {
  static const auto data = std::make_shared<const Data>(
      Data{PunctureMode::ThreePoint, true, Scalar::beta(), Scalar::alpha(),
           {Scalar::alpha(), -Scalar::alpha()}});
  return PunctureConfig(data);
}

PunctureConfig PunctureConfig::three_point(const Rational& beta) {
  if (sgn(beta) == 0) throw ConfigError("three-point configuration needs alpha != 0");
  const Scalar b(beta);
  const Scalar a = b * b;
  return PunctureConfig(
      std::make_shared<const Data>(Data{PunctureMode::ThreePoint, false, b, a, {a, -a}}));
}

bool PunctureConfig::is_in_point(const Scalar& p) const {
  return std::any_of(in_points().begin(), in_points().end(), [&](const Scalar& q) { return q == p; });
}

std::string PunctureConfig::describe() const {
  if (mode() == PunctureMode::TwoPoint) return "I = {0}, O = {inf}";
  return "I = {" + alpha().to_string() + ", " + (-alpha()).to_string() + "}, O = {inf}";
}

// ---------------------------------------------------------------------------

namespace {

ZPoly linear(const Scalar& root) { return ZPoly(std::vector<Scalar>{-root, Scalar(1L)}); }

ZPoly linear_power_poly(const Scalar& root, int k) {
  return ZPoly::linear_power(root, static_cast<std::size_t>(k));
}

void require_same_config(const MeroFun& f, const MeroFun& g) {
  if (!(f.config() == g.config()))
    throw IncompatibleConfig("meromorphic functions live on different puncture configurations");
}

MeroFun::Mode combine(MeroFun::Mode a, MeroFun::Mode b) {
  return (a == MeroFun::Mode::Oracle || b == MeroFun::Mode::Oracle) ? MeroFun::Mode::Oracle
                                                                    : MeroFun::Mode::Strict;
}

// Rendering of the point p inside a factor "(z - p)".
std::string factor_text(const Scalar& p) {
  if (p.is_zero()) return "z";
  const Scalar neg = -p;
  if (neg.is_single_term() && neg.to_string().front() != '-') return "(z+" + neg.to_string() + ")";
  if (p.is_single_term()) return "(z-" + p.to_string() + ")";
  return "(z-(" + p.to_string() + "))";
}

std::string power_text(const std::string& base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

MeroFun::MeroFun(PunctureConfig cfg, ZPoly numerator, std::vector<Pole> poles, Mode mode)
    : cfg_(std::move(cfg)), num_(std::move(numerator)), mode_(mode) {
  for (auto& p : poles) {
    if (p.order < 0) {
      num_ = num_ * linear_power_poly(p.point, -p.order);
      continue;
    }
    if (p.order == 0) continue;
    auto it = std::find_if(poles_.begin(), poles_.end(), [&](const Pole& q) { return q.point == p.point; });
    if (it == poles_.end()) poles_.push_back(std::move(p));
    else it->order += p.order;
  }
  reduce();
  check_strict();
}

MeroFun MeroFun::constant(const PunctureConfig& cfg, const Scalar& c) { return MeroFun(cfg, ZPoly(c)); }

MeroFun MeroFun::z(const PunctureConfig& cfg) { return MeroFun(cfg, ZPoly::monomial(Scalar(1L), 1)); }

MeroFun MeroFun::monomial(const PunctureConfig& cfg, const Scalar& c, int k) {
  if (k >= 0) return MeroFun(cfg, ZPoly::monomial(c, static_cast<std::size_t>(k)));
  return MeroFun(cfg, ZPoly(c), {Pole{Scalar(), -k}},
                 cfg.is_in_point(Scalar()) ? Mode::Strict : Mode::Oracle);
}

MeroFun MeroFun::linear_power(const PunctureConfig& cfg, const Scalar& point, int k, Mode mode) {
  if (k >= 0) return MeroFun(cfg, linear_power_poly(point, k));
  return MeroFun(cfg, ZPoly(Scalar(1L)), {Pole{point, -k}}, mode);
}

MeroFun MeroFun::quadric_power(const PunctureConfig& cfg, int k) {
  if (cfg.mode() != PunctureMode::ThreePoint)
    throw IncompatibleConfig("(z^2 - alpha^2)^k needs the three-point configuration");
  const Scalar& a = cfg.alpha();
  if (k >= 0) {
    const ZPoly q(std::vector<Scalar>{-(a * a), Scalar(), Scalar(1L)});
    ZPoly r(Scalar(1L));
    for (int i = 0; i < k; ++i) r = r * q;
    return MeroFun(cfg, r);
  }
  return MeroFun(cfg, ZPoly(Scalar(1L)), {Pole{a, -k}, Pole{-a, -k}});
}

void MeroFun::reduce() {
  if (num_.is_zero_poly()) {
    poles_.clear();
    return;
  }
  for (auto& p : poles_) {
    while (p.order > 0) {
      auto [q, r] = num_.divide_linear(p.point);
      if (!r.is_zero()) break;
      num_ = std::move(q);
      --p.order;
    }
  }
  std::erase_if(poles_, [](const Pole& p) { return p.order == 0; });
}

void MeroFun::check_strict() const {
  if (mode_ != Mode::Strict) return;
  for (const auto& p : poles_)
    if (!cfg_.is_in_point(p.point))
      throw StrayPole("pole at " + p.point.to_string() + " outside the puncture set " + cfg_.describe());
}

int MeroFun::pole_order(const Scalar& p) const {
  for (const auto& q : poles_)
    if (q.point == p) return q.order;
  return 0;
}

int MeroFun::total_pole_order() const {
  int e = 0;
  for (const auto& p : poles_) e += p.order;
  return e;
}

int MeroFun::degree_at_infinity() const { return num_.degree() - total_pole_order(); }

MeroFun MeroFun::as_oracle() const {
  MeroFun r = *this;
  r.mode_ = Mode::Oracle;
  return r;
}

MeroFun MeroFun::operator-() const {
  MeroFun r = *this;
  r.num_ = -r.num_;
  return r;
}

MeroFun operator+(const MeroFun& f, const MeroFun& g) {
  require_same_config(f, g);
  if (g.is_zero()) return f;
  if (f.is_zero()) return g;
  std::vector<Pole> poles = f.poles_;
  for (const auto& p : g.poles_) {
    auto it = std::find_if(poles.begin(), poles.end(), [&](const Pole& q) { return q.point == p.point; });
    if (it == poles.end()) poles.push_back(p);
    else it->order = std::max(it->order, p.order);
  }
  ZPoly nf = f.num_, ng = g.num_;
  for (const auto& p : poles) {
    const int ef = p.order - f.pole_order(p.point);
    const int eg = p.order - g.pole_order(p.point);
    if (ef > 0) nf = nf * linear_power_poly(p.point, ef);
    if (eg > 0) ng = ng * linear_power_poly(p.point, eg);
  }
  return MeroFun(f.cfg_, nf + ng, std::move(poles), combine(f.mode_, g.mode_));
}

MeroFun operator-(const MeroFun& f, const MeroFun& g) { return f + (-g); }

MeroFun operator*(const MeroFun& f, const MeroFun& g) {
  require_same_config(f, g);
  if (f.is_zero() || g.is_zero()) return MeroFun(f.cfg_);
  std::vector<Pole> poles = f.poles_;
  poles.insert(poles.end(), g.poles_.begin(), g.poles_.end());
  return MeroFun(f.cfg_, f.num_ * g.num_, std::move(poles), combine(f.mode_, g.mode_));
}

MeroFun operator*(const Scalar& c, const MeroFun& f) {
  if (c.is_zero()) return MeroFun(f.cfg_);
  MeroFun r = f;
  r.num_ = r.num_.scaled(c);
  return r;
}

bool operator==(const MeroFun& f, const MeroFun& g) {
  if (!(f.cfg_ == g.cfg_) || !(f.num_ == g.num_) || f.poles_.size() != g.poles_.size()) return false;
  for (const auto& p : f.poles_)
    if (g.pole_order(p.point) != p.order) return false;
  return true;
}

MeroFun MeroFun::derivative() const {
  if (poles_.empty()) return MeroFun(cfg_, num_.derivative(), {}, mode_);
  // f = N / prod (z-p_i)^e_i:
  // f' = (N' prod (z-p_i) - N sum_i e_i prod_{j != i} (z-p_j)) / prod (z-p_i)^(e_i+1)
  ZPoly all(Scalar(1L));
  for (const auto& p : poles_) all = all * linear(p.point);
  ZPoly sum;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    ZPoly others(Scalar(poles_[i].order));
    for (std::size_t j = 0; j < poles_.size(); ++j)
      if (j != i) others = others * linear(poles_[j].point);
    sum = sum + others;
  }
  std::vector<Pole> poles = poles_;
  for (auto& p : poles) ++p.order;
  return MeroFun(cfg_, num_.derivative() * all - num_ * sum, std::move(poles), mode_);
}

MeroFun MeroFun::derivative(int times) const {
  MeroFun r = *this;
  for (int i = 0; i < times; ++i) r = r.derivative();
  return r;
}

MeroFun MeroFun::pow(int e) const {
  if (e >= 0) {
    MeroFun r = constant(cfg_, Scalar(1L));
    r.mode_ = mode_;
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  if (is_zero()) throw DivisionByZero("negative power of the zero function");
  // Split the numerator into linear factors at admissible points.
  std::vector<Scalar> candidates = cfg_.in_points();
  for (const auto& p : poles_)
    if (std::none_of(candidates.begin(), candidates.end(), [&](const Scalar& q) { return q == p.point; }))
      candidates.push_back(p.point);
  ZPoly rest = num_;
  std::vector<Pole> inverse_poles;
  for (const auto& c : candidates) {
    int m = 0;
    while (rest.degree() > 0) {
      auto [q, r] = rest.divide_linear(c);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++m;
    }
    if (m > 0) inverse_poles.push_back({c, m});
  }
  if (rest.degree() > 0)
    throw StrayPole("inverse has poles outside the puncture set: numerator factor of degree " +
                    std::to_string(rest.degree()) + " does not split over the punctures");
  ZPoly inv_num(Scalar(1L) / rest.leading());
  for (const auto& p : poles_) inv_num = inv_num * linear_power_poly(p.point, p.order);
  const MeroFun inverse(cfg_, inv_num, inverse_poles, mode_);
  return inverse.pow(-e);
}

MeroFun MeroFun::inversion() const {
  if (is_zero()) return MeroFun(cfg_, ZPoly(), {}, Mode::Oracle);
  const int d = num_.degree();
  int total = 0;
  Scalar c(1L);
  std::vector<Pole> poles;
  for (const auto& p : poles_) {
    total += p.order;
    if (p.point.is_zero()) continue;
    c *= (-p.point).pow(p.order);
    poles.push_back({p.point.inverse(), p.order});
  }
  ZPoly num = num_.reversed().scaled(c.inverse());
  const int shift = total - d;
  if (shift >= 0) num = num.shifted(static_cast<std::size_t>(shift));
  else poles.push_back({Scalar(), -shift});
  return MeroFun(cfg_, std::move(num), std::move(poles), Mode::Oracle);
}

Scalar MeroFun::eval(const Scalar& at) const {
  Scalar den(1L);
  for (const auto& p : poles_) den *= (at - p.point).pow(p.order);
  if (den.is_zero()) throw DivisionByZero("evaluation at a pole");
  return num_.eval(at) / den;
}

std::string MeroFun::to_string() const {
  std::string num;
  bool first = true;
  for (std::size_t k = num_.coeffs().size(); k-- > 0;) {
    const Scalar& c = num_.coeffs()[k];
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.is_single_term() && coeff.front() == '-') {
      negative = true;
      coeff = coeff.substr(1);
    } else if (!c.is_single_term()) {
      coeff = "(" + coeff + ")";
    }
    std::string mono;
    if (k == 0) mono = coeff;
    else mono = (coeff == "1" ? "" : coeff + "*") + power_text("z", static_cast<int>(k));
    if (first) num = negative ? "-" + mono : mono;
    else num += (negative ? " - " : " + ") + mono;
    first = false;
  }
  if (first) return "0";
  if (poles_.empty()) return num;
  // Canonical order: 0, alpha, -alpha, then the rest as stored.
  std::vector<const Pole*> ordered;
  auto take = [&](const Scalar& pt) {
    for (const auto& p : poles_)
      if (p.point == pt) ordered.push_back(&p);
  };
  take(Scalar());
  if (cfg_.mode() == PunctureMode::ThreePoint) {
    take(cfg_.alpha());
    take(-cfg_.alpha());
  }
  for (const auto& p : poles_)
    if (std::find(ordered.begin(), ordered.end(), &p) == ordered.end()) ordered.push_back(&p);
  std::string den;
  for (const Pole* p : ordered) {
    if (!den.empty()) den += "*";
    den += power_text(factor_text(p->point), p->order);
  }
  return "(" + num + ")/(" + den + ")";
}

MeroFun mf_arith(const MeroFun& f, const MeroFun& g, MeroOp op) {
  switch (op) {
    case MeroOp::add: return f + g;
    case MeroOp::sub: return f - g;
    case MeroOp::mul: return f * g;
  }
  return MeroFun(f.config());
}

// ---------------------------------------------------------------------------
// Residues

std::vector<Scalar> taylor_coefficients(const ZPoly& p, const Scalar& z0, std::size_t count) {
  std::vector<Scalar> out;
  out.reserve(count);
  ZPoly rest = p;
  for (std::size_t j = 0; j < count; ++j) {
    if (rest.is_zero_poly()) {
      out.emplace_back();
      continue;
    }
    auto [q, r] = rest.divide_linear(z0);
    out.push_back(std::move(r));
    rest = std::move(q);
  }
  return out;
}

namespace {

// Taylor coefficients at t = 0 of (d + t)^(-e), d != 0: binom(-e, m) d^(-e-m).
std::vector<Scalar> inverse_power_series(const Scalar& d, int e, std::size_t count) {
  std::vector<Scalar> out;
  out.reserve(count);
  const Scalar inv_d = d.inverse();
  Scalar term = inv_d.pow(e);
  for (std::size_t m = 0; m < count; ++m) {
    out.push_back(term);
    // binom(-e, m+1) / binom(-e, m) = (-e - m) / (m + 1)
    term *= Scalar(make_rational(-e - static_cast<long>(m), static_cast<long>(m) + 1)) * inv_d;
  }
  return out;
}

std::vector<Scalar> truncated_product(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  const std::size_t n = a.size();
  std::vector<Scalar> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

Scalar residue_at(const MeroFun& f, const Scalar& z0) {
  const int p = f.pole_order(z0);
  if (p == 0) return {};
  const auto count = static_cast<std::size_t>(p);
  // (z - z0)^p f = N * H with H = prod_{q != z0} (z - q)^(-e_q), holomorphic at z0.
  // The (p-1)-st derivative divided by (p-1)! is the Leibniz sum of Taylor
  // coefficients of N and H.
  std::vector<Scalar> h(count);
  h[0] = Scalar(1L);
  for (const auto& q : f.poles()) {
    if (q.point == z0) continue;
    h = truncated_product(h, inverse_power_series(z0 - q.point, q.order, count));
  }
  const auto n = taylor_coefficients(f.numerator(), z0, count);
  Scalar res;
  for (std::size_t j = 0; j < count; ++j)
    if (!n[j].is_zero()) res += n[j] * h[count - 1 - j];
  return res;
}

Scalar residue_at_infinity(const MeroFun& f) {
  if (f.is_zero()) return {};
  const MeroFun g = f.inversion() * MeroFun(f.config(), ZPoly(Scalar(1L)), {Pole{Scalar(), 2}},
                                            MeroFun::Mode::Oracle);
  return -residue_at(g, Scalar());
}

Scalar cycle_integral(const MeroFun& f, const PunctureConfig& cfg) {
  if (!(f.config() == cfg)) throw IncompatibleConfig("cycle integral on a foreign configuration");
  for (const auto& p : f.poles())
    if (!cfg.is_in_point(p.point))
      throw StrayPole("pole at " + p.point.to_string() + " is neither an in-point nor an out-point");
  Scalar sum;
  for (const auto& p : cfg.in_points()) sum += residue_at(f, p);
  return sum;
}

}  // namespace knsuper
