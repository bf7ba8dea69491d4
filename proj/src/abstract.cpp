#include "knsuper/abstract.hpp"

#include <algorithm>
#include <sstream>

#include "knsuper/antijordan.hpp"
#include "knsuper/errors.hpp"
#include "knsuper/linalg.hpp"

namespace knsuper {

Vec vec_add(Vec a, const Vec& b, const Scalar& c) {
  for (const auto& [k, v] : b) {
    Scalar& slot = a[k];
    slot += c * v;
    if (slot.is_zero()) a.erase(k);
  }
  return a;
}

Vec vec_scale(const Vec& a, const Scalar& c) {
  Vec out;
  if (c.is_zero()) return out;
  for (const auto& [k, v] : a) out[k] = v * c;
  return out;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool vec_equal(const Vec& a, const Vec& b) { return vec_is_zero(vec_add(a, b, Scalar(-1L))); }

AbstractAlgebra::AbstractAlgebra(std::string name, Kind kind, std::vector<std::string> labels,
                                 std::vector<Parity> parities)
    : name_(std::move(name)), kind_(kind), labels_(std::move(labels)), parities_(std::move(parities)) {
  if (labels_.size() != parities_.size()) throw ConfigError("one parity per basis label");
  table_.assign(labels_.size() * labels_.size(), std::nullopt);
}

std::size_t AbstractAlgebra::even_dim() const {
  return std::size_t(std::count(parities_.begin(), parities_.end(), 0));
}

std::optional<std::size_t> AbstractAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return std::size_t(it - labels_.begin());
}

bool AbstractAlgebra::complete() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& e) { return e.has_value(); });
}

void AbstractAlgebra::set(std::size_t i, std::size_t j, Vec v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
  table_[i * dim() + j] = std::move(v);
}

std::optional<Vec> AbstractAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [i, a] : x) {
    if (a.is_zero()) continue;
    for (const auto& [j, b] : y) {
      if (b.is_zero()) continue;
      const auto& p = product(i, j);
      if (!p) return std::nullopt;
      out = vec_add(std::move(out), *p, a * b);
    }
  }
  return out;
}

Parity AbstractAlgebra::parity_of(const Vec& v) const {
  std::optional<Parity> p;
  for (const auto& [i, c] : v) {
    if (c.is_zero()) continue;
    if (p && *p != parities_[i]) throw NonHomogeneousInput("vector mixes parities");
    p = parities_[i];
  }
  return p.value_or(0);
}

std::string AbstractAlgebra::render(const Vec& v) const {
  CoeffMap terms;
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    bool neg = !coeff.empty() && coeff[0] == '-' && c.is_single_term();
    if (neg) coeff.erase(0, 1);
    if (!c.is_single_term()) coeff = "(" + coeff + ")";
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    if (coeff != "1") os << coeff << "*";
    os << labels_[i];
    first = false;
  }
  return first ? "0" : os.str();
}

nlohmann::json AbstractAlgebra::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["kind"] = kind_ == Kind::Lie ? "lie" : "jordan";
  j["basis"] = nlohmann::json::array();
  for (std::size_t i = 0; i < dim(); ++i) j["basis"].push_back({{"label", labels_[i]}, {"parity", parities_[i]}});
  j["products"] = nlohmann::json::array();
  j["undefined"] = nlohmann::json::array();
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b) {
      const auto& p = product(a, b);
      if (!p) {
        j["undefined"].push_back({labels_[a], labels_[b]});
        continue;
      }
      if (p->empty()) continue;
      nlohmann::json r = nlohmann::json::object();
      for (const auto& [k, c] : *p) r[labels_[k]] = c.to_string();
      j["products"].push_back({{"left", labels_[a]}, {"right", labels_[b]}, {"result", r}});
    }
  return j;
}

AbstractAlgebra AbstractAlgebra::K3() {
  AbstractAlgebra A("K3", Kind::Jordan, {"eps", "a", "b"}, {0, 1, 1});
  const Scalar h = Scalar(make_rational(1, 2));
  A.set(0, 0, unit(0));
  A.set(0, 1, vec_scale(unit(1), h));
  A.set(1, 0, vec_scale(unit(1), h));
  A.set(0, 2, vec_scale(unit(2), h));
  A.set(2, 0, vec_scale(unit(2), h));
  A.set(1, 2, vec_scale(unit(0), h));
  A.set(2, 1, vec_scale(unit(0), -h));
  A.set(1, 1, {});
  A.set(2, 2, {});
  return A;
}

AbstractAlgebra AbstractAlgebra::AK1(int window) {
  if (window < 1) throw ConfigError("AK(1) window must be >= 1");
  std::vector<BasisIndex> basis;
  for (int n = -window; n <= window; ++n) basis.push_back({Family::eps, n});
  for (int t = -2 * window + 1; t <= 2 * window - 1; t += 2) basis.push_back({Family::a, half(t)});
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (const auto& b : basis) {
    labels.push_back(b.to_string());
    parities.push_back(b.family == Family::a ? 1 : 0);
  }
  AbstractAlgebra A("AK1[" + std::to_string(window) + "]", Kind::Jordan, labels, parities);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Vec v;
      bool inside = true;
      for (const auto& [ix, c] : ak1_product(basis[i], basis[j])) {
        auto k = A.index_of(ix.to_string());
        if (!k) {
          inside = false;
          break;
        }
        v = vec_add(std::move(v), unit(*k), c);
      }
      if (inside) A.set(i, j, std::move(v));
    }
  return A;
}

AbstractAlgebra AbstractAlgebra::osp12() {
  // e_{-1}, e_0, e_1, b_{-1/2}, b_{1/2}; twice-indices for b.
  AbstractAlgebra g("osp(1|2)", Kind::Lie, {"e[-1]", "e[0]", "e[1]", "b[-1/2]", "b[1/2]"}, {0, 0, 0, 1, 1});
  auto e_at = [](int n) -> std::optional<std::size_t> {
    if (n < -1 || n > 1) return std::nullopt;
    return std::size_t(n + 1);
  };
  auto b_at = [](int t) -> std::optional<std::size_t> {
    if (t == -1) return 3;
    if (t == 1) return 4;
    return std::nullopt;
  };
  auto put = [&](std::size_t i, std::size_t j, std::optional<std::size_t> k, const Scalar& c) {
    g.set(i, j, (k && !c.is_zero()) ? vec_scale(unit(*k), c) : Vec{});
  };
  for (int n = -1; n <= 1; ++n)
    for (int m = -1; m <= 1; ++m) put(*e_at(n), *e_at(m), e_at(n + m), Scalar(long(m - n)));
  for (int n = -1; n <= 1; ++n)
    for (int t : {-1, 1}) {
      // (i - n/2) with i = t/2
      const Scalar c = Scalar(make_rational(t - n, 2));
      put(*e_at(n), *b_at(t), b_at(t + 2 * n), c);
      put(*b_at(t), *e_at(n), b_at(t + 2 * n), -c);
    }
  for (int t : {-1, 1})
    for (int u : {-1, 1}) put(*b_at(t), *b_at(u), e_at((t + u) / 2), Scalar(1L));
  return g;
}

namespace {

std::string triple_name(const AbstractAlgebra& A, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + A.labels()[i] + ", " + A.labels()[j] + ", " + A.labels()[k] + ")";
}

using U = AbstractAlgebra;

}  // namespace

TableCheck check_lie_table(const AbstractAlgebra& g) {
  TableCheck r;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& xy = g.product(i, j);
      const auto& yx = g.product(j, i);
      if (!xy || !yx) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      const Scalar s(long(parity_sign(g.parity(i), g.parity(j))));
      if (!vec_equal(*xy, vec_scale(*yx, -s)))
        r.failures.push_back("skew " + g.labels()[i] + ", " + g.labels()[j]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Parity pi = g.parity(i), pj = g.parity(j), pk = g.parity(k);
        auto term = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<Vec> {
          const auto& bc = g.product(b, c);
          if (!bc) return std::nullopt;
          return g.mul(U::unit(a), *bc);
        };
        const auto t1 = term(i, j, k), t2 = term(j, k, i), t3 = term(k, i, j);
        if (!t1 || !t2 || !t3) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        Vec sum = vec_scale(*t1, Scalar(long(parity_sign(pi, pk))));
        sum = vec_add(std::move(sum), *t2, Scalar(long(parity_sign(pj, pi))));
        sum = vec_add(std::move(sum), *t3, Scalar(long(parity_sign(pk, pj))));
        if (!vec_is_zero(sum)) r.failures.push_back("jacobi " + triple_name(g, i, j, k));
      }
  return r;
}

TableCheck check_antialgebra_table(const AbstractAlgebra& A) {
  TableCheck r;
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& xy = A.product(i, j);
      const auto& yx = A.product(j, i);
      if (!xy || !yx) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      const Scalar s(long(parity_sign(A.parity(i), A.parity(j))));
      if (!vec_equal(*xy, vec_scale(*yx, s)))
        r.failures.push_back("supercommutative " + A.labels()[i] + ", " + A.labels()[j]);
    }
  auto left = [&](std::size_t i, std::size_t j, std::size_t k) -> std::optional<Vec> {
    const auto& ij = A.product(i, j);
    if (!ij) return std::nullopt;
    return A.mul(*ij, U::unit(k));
  };
  auto right = [&](std::size_t i, std::size_t j, std::size_t k) -> std::optional<Vec> {
    const auto& jk = A.product(j, k);
    if (!jk) return std::nullopt;
    return A.mul(U::unit(i), *jk);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (A.parity(i) == 0 && A.parity(j) == 0 && A.parity(k) == 0) {
          const auto l = left(i, j, k), rr = right(i, j, k);
          if (!l || !rr) {
            ++r.skipped;
          } else {
            ++r.checked;
            if (!vec_equal(*l, *rr)) r.failures.push_back("associative " + triple_name(A, i, j, k));
          }
        }
        if (A.parity(k) == 1) {
          // (x.y).a = (x.a).y + (-1)^x x.(y.a)
          const auto lhs = left(i, j, k);
          const auto& xa = A.product(i, k);
          const auto& ya = A.product(j, k);
          std::optional<Vec> t1, t2;
          if (xa) t1 = A.mul(*xa, U::unit(j));
          if (ya) t2 = A.mul(U::unit(i), *ya);
          if (!lhs || !t1 || !t2) {
            ++r.skipped;
            continue;
          }
          ++r.checked;
          const Vec rhs = vec_add(*t1, *t2, Scalar(long(A.parity(i) ? -1 : 1)));
          if (!vec_equal(*lhs, rhs)) r.failures.push_back("odd derivation " + triple_name(A, i, j, k));
        }
      }
  return r;
}

AbstractAlgebra adjoint_superalgebra(const AbstractAlgebra& A, bool allow_partial) {
  if (!A.complete() && !allow_partial)
    throw NotFiniteDimensional(A.name() + " has undefined products; pass allow_partial for a truncation");
  std::vector<std::size_t> odd, even;
  std::vector<std::size_t> pos_in_odd(A.dim(), std::size_t(-1));
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (A.parity(i)) {
      pos_in_odd[i] = odd.size();
      odd.push_back(i);
    } else {
      even.push_back(i);
    }
  }
  const std::size_t m = odd.size();
  auto t = [m](std::size_t p, std::size_t q) { return p * m + q; };
  // Odd part of an A-vector, as coordinates on odd (positions 0..m-1).
  auto odd_coords = [&](const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v)
      if (!c.is_zero()) out[pos_in_odd.at(k)] = c;
    return out;
  };

  LinearSystem<Scalar> S(m * m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (p < q) S.add({{t(p, q), Scalar(1L)}, {t(q, p), Scalar(-1L)}});
      for (std::size_t e : even) {
        const auto& pa = A.product(odd[p], e);
        const auto& qa = A.product(odd[q], e);
        if (!pa || !qa) continue;
        LinearSystem<Scalar>::Row row;
        for (const auto& [r, c] : odd_coords(*pa)) row[t(r, q)] += c;
        for (const auto& [r, c] : odd_coords(*qa)) row[t(p, r)] -= c;
        S.add(row);
      }
    }

  // Free tensor coordinates index the even part of G_A.
  std::vector<std::size_t> free_vars;
  std::vector<std::size_t> where(m * m, std::size_t(-1));
  for (std::size_t v = 0; v < m * m; ++v)
    if (S.is_free(v)) {
      where[v] = free_vars.size();
      free_vars.push_back(v);
    }
  const std::size_t d0 = free_vars.size();

  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (std::size_t v : free_vars) {
    const std::size_t p = std::min(v / m, v % m), q = std::max(v / m, v % m);
    labels.push_back(A.labels()[odd[p]] + "." + A.labels()[odd[q]]);
    parities.push_back(0);
  }
  for (std::size_t p = 0; p < m; ++p) {
    labels.push_back(A.labels()[odd[p]]);
    parities.push_back(1);
  }
  AbstractAlgebra G("G(" + A.name() + ")", AbstractAlgebra::Kind::Lie, labels, parities);

  auto project = [&](const LinearSystem<Scalar>::Row& tensor) {
    Vec out;
    for (const auto& [v, c] : S.normal_form(tensor)) out = vec_add(std::move(out), U::unit(where.at(v)), c);
    return out;
  };
  auto lift_odd = [&](const Vec& oc) {  // odd position coordinates -> G indices
    Vec out;
    for (const auto& [p, c] : oc) out[d0 + p] = c;
    return out;
  };
  // x.(y.z) in A for odd positions, as odd coordinates.
  auto chain = [&](std::size_t x, std::size_t y, std::size_t z) -> std::optional<Vec> {
    const auto& yz = A.product(odd[y], odd[z]);
    if (!yz) return std::nullopt;
    auto r = A.mul(U::unit(odd[x]), *yz);
    if (!r) return std::nullopt;
    return odd_coords(*r);
  };

  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t d = 0; d < m; ++d) G.set(d0 + c, d0 + d, project({{t(c, d), Scalar(1L)}}));

  for (std::size_t u = 0; u < d0; ++u) {
    const std::size_t a = free_vars[u] / m, b = free_vars[u] % m;
    for (std::size_t c = 0; c < m; ++c) {
      const auto x = chain(a, b, c), y = chain(b, a, c);
      if (!x || !y) continue;
      const Vec v = lift_odd(vec_add(*x, *y));
      G.set(u, d0 + c, v);
      G.set(d0 + c, u, vec_scale(v, Scalar(-1L)));
    }
    for (std::size_t w = 0; w < d0; ++w) {
      const std::size_t c = free_vars[w] / m, d = free_vars[w] % m;
      const auto x = chain(a, b, c), y = chain(b, a, d);
      if (!x || !y) continue;
      LinearSystem<Scalar>::Row tensor;
      for (const auto& [r, k] : *x) tensor[t(r, d)] += Scalar(2L) * k;
      for (const auto& [r, k] : *y) tensor[t(r, c)] += Scalar(2L) * k;
      G.set(u, w, project(tensor));
    }
  }
  return G;
}

namespace {

// Composition and application of linear maps given by basis images.
Vec apply_map(const LinearMap& D, const Vec& x) {
  Vec out;
  for (const auto& [i, c] : x) out = vec_add(std::move(out), D[i], c);
  return out;
}

}  // namespace

bool is_derivation(const AbstractAlgebra& A, const LinearMap& D, Parity p) {
  if (!A.complete()) throw NotFiniteDimensional(A.name() + " has undefined products");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const Vec lhs = apply_map(D, *A.product(i, j));
      const Vec t1 = *A.mul(D[i], U::unit(j));
      const Vec t2 = *A.mul(U::unit(i), D[j]);
      if (!vec_equal(lhs, vec_add(t1, t2, Scalar(long(parity_sign(p, A.parity(i))))))) return false;
    }
  return true;
}

LinearMap right_multiplication(const AbstractAlgebra& A, const Vec& a) {
  LinearMap D;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    auto v = A.mul(U::unit(i), a);
    if (!v) throw NotFiniteDimensional(A.name() + " has undefined products");
    D.push_back(*v);
  }
  return D;
}

std::optional<std::vector<Scalar>> coordinates_in(const std::vector<LinearMap>& family, const LinearMap& D,
                                                  std::size_t dim) {
  LinearSystem<Scalar> sys(family.size());
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      LinearSystem<Scalar>::Row row;
      for (std::size_t k = 0; k < family.size(); ++k) {
        auto it = family[k][j].find(i);
        if (it != family[k][j].end()) row[k] = it->second;
      }
      auto it = D[j].find(i);
      if (!sys.add(row, it == D[j].end() ? Scalar() : it->second)) return std::nullopt;
    }
  return sys.particular();
}

Derivations derivations(const AbstractAlgebra& A) {
  if (!A.complete()) throw NotFiniteDimensional(A.name() + " has undefined products");
  const std::size_t n = A.dim();
  Derivations out;
  for (Parity p : {0, 1}) {
    // Unknown d(i, j): coefficient of e_i in D(e_j), only where parities allow.
    auto var = [n](std::size_t i, std::size_t j) { return i * n + j; };
    auto allowed = [&](std::size_t i, std::size_t j) { return (A.parity(i) ^ A.parity(j)) == p; };
    LinearSystem<Scalar> sys(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!allowed(i, j)) sys.add({{var(i, j), Scalar(1L)}});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec& jk = *A.product(j, k);
        const Scalar sj(long(parity_sign(p, A.parity(j))));
        for (std::size_t l = 0; l < n; ++l) {
          LinearSystem<Scalar>::Row row;
          for (const auto& [m, c] : jk) row[var(l, m)] += c;
          for (std::size_t i = 0; i < n; ++i) {
            const Vec& ik = *A.product(i, k);
            if (auto it = ik.find(l); it != ik.end()) row[var(i, j)] -= it->second;
            const Vec& ji = *A.product(j, i);
            if (auto it = ji.find(l); it != ji.end()) row[var(i, k)] -= sj * it->second;
          }
          sys.add(row);
        }
      }
    for (const auto& sol : sys.nullspace()) {
      LinearMap D(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!sol[var(i, j)].is_zero()) D[j][i] = sol[var(i, j)];
      (p ? out.odd : out.even).push_back(std::move(D));
    }
  }

  std::vector<LinearMap> all = out.even;
  all.insert(all.end(), out.odd.begin(), out.odd.end());
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const bool o = k >= out.even.size();
    labels.push_back(std::string(o ? "D1_" : "D0_") + std::to_string(o ? k - out.even.size() : k));
    parities.push_back(o ? 1 : 0);
  }
  out.algebra = AbstractAlgebra("Der(" + A.name() + ")", AbstractAlgebra::Kind::Lie, labels, parities);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < all.size(); ++b) {
      const Scalar s(long(parity_sign(parities[a], parities[b])));
      LinearMap C(n);
      for (std::size_t j = 0; j < n; ++j)
        C[j] = vec_add(apply_map(all[a], all[b][j]), apply_map(all[b], all[a][j]), -s);
      auto coords = coordinates_in(all, C, n);
      if (!coords) throw ConfigError("commutator of derivations left the derivation space");
      Vec v;
      for (std::size_t k = 0; k < coords->size(); ++k)
        if (!(*coords)[k].is_zero()) v[k] = (*coords)[k];
      out.algebra.set(a, b, v);
    }
  return out;
}

std::vector<std::string> WitnessMap::describe(const AbstractAlgebra& G) const {
  const AbstractAlgebra src = AbstractAlgebra::osp12();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < images.size(); ++i) out.push_back(src.labels()[i] + " -> " + G.render(images[i]));
  return out;
}

std::vector<std::string> check_isomorphism(const AbstractAlgebra& src, const AbstractAlgebra& dst,
                                           const std::vector<Vec>& images) {
  std::vector<std::string> bad;
  if (images.size() != src.dim()) return {"wrong number of images"};
  if (src.dim() != dst.dim()) bad.push_back("dimensions differ");
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) {
      const auto& sij = src.product(i, j);
      const auto lhs = dst.mul(images[i], images[j]);
      if (!sij || !lhs) {
        bad.push_back("undefined " + src.labels()[i] + ", " + src.labels()[j]);
        continue;
      }
      Vec rhs;
      for (const auto& [k, c] : *sij) rhs = vec_add(std::move(rhs), images[k], c);
      if (!vec_equal(*lhs, rhs)) bad.push_back("structure constant " + src.labels()[i] + ", " + src.labels()[j]);
    }
  LinearSystem<Scalar> rank_sys(dst.dim());
  for (const auto& v : images) rank_sys.add(LinearSystem<Scalar>::Row(v.begin(), v.end()));
  if (rank_sys.rank() != images.size()) bad.push_back("images are linearly dependent");
  return bad;
}

std::optional<WitnessMap> find_osp12_witness(const AbstractAlgebra& G) {
  if (!G.complete()) throw NotFiniteDimensional(G.name() + " has undefined brackets");
  if (G.even_dim() != 3 || G.odd_dim() != 2) return std::nullopt;
  const AbstractAlgebra src = AbstractAlgebra::osp12();
  std::vector<std::size_t> odd;
  for (std::size_t i = 0; i < G.dim(); ++i)
    if (G.parity(i)) odd.push_back(i);
  const std::size_t o1 = odd[0], o2 = odd[1];
  auto br = [&](const Vec& x, const Vec& y) { return *G.mul(x, y); };

  std::vector<Vec> candidates;
  for (long c1 : {1L, 0L, 2L, -1L})
    for (long c2 : {0L, 1L, 2L, -1L, -2L}) {
      if (c1 == 0 && c2 == 0) continue;
      Vec p;
      if (c1) p[o1] = Scalar(c1);
      if (c2) p[o2] = Scalar(c2);
      candidates.push_back(p);
    }
  for (const Vec& p : candidates) {
    const Vec P = br(p, p);
    const Vec minus_half_p = vec_scale(p, Scalar(make_rational(-1, 2)));
    // Coordinates x_0, x_1 of q on the odd basis.
    LinearSystem<Scalar> sys(2);
    bool ok = true;
    for (std::size_t coord = 0; coord < G.dim() && ok; ++coord) {
      LinearSystem<Scalar>::Row r1, r2;
      for (std::size_t k = 0; k < 2; ++k) {
        const Vec ok_ = U::unit(odd[k]);
        const Vec a = br(P, ok_);
        const Vec b = br(br(p, ok_), p);
        if (auto it = a.find(coord); it != a.end()) r1[k] = it->second;
        if (auto it = b.find(coord); it != b.end()) r2[k] = it->second;
      }
      auto at = [coord](const Vec& v) {
        auto it = v.find(coord);
        return it == v.end() ? Scalar() : it->second;
      };
      ok = sys.add(r1, at(p)) && sys.add(r2, at(minus_half_p));
    }
    if (!ok) continue;
    const auto x = sys.particular();
    Vec q;
    for (std::size_t k = 0; k < 2; ++k)
      if (!x[k].is_zero()) q[odd[k]] = x[k];
    WitnessMap w;
    w.images = {P, br(p, q), br(q, q), p, q};
    if (check_isomorphism(src, G, w.images).empty()) return w;
  }
  return std::nullopt;
}

}  // namespace knsuper
