#pragma once

// Incremental exact Gauss-Jordan elimination over a field, sparse rows.
// F needs +, -, *, /, unary -, == and a free is_zero(F).

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace knsuper {

template <class F>
class LinearSystem {
 public:
  using Row = std::map<std::size_t, F>;

  explicit LinearSystem(std::size_t variables) : nvars_(variables) {}

  std::size_t variables() const { return nvars_; }
  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }

  // Adds sum row[v] x_v = rhs. Returns false once the system is inconsistent.
  bool add(Row row, F rhs = F()) {
    prune(row);
    reduce(row, rhs);
    if (row.empty()) {
      if (!is_zero(rhs)) consistent_ = false;
      return consistent_;
    }
    const std::size_t p = row.begin()->first;
    const F inv = F(1L) / row.begin()->second;
    for (auto& [v, c] : row) c = c * inv;
    rhs = rhs * inv;
    // Keep every stored row free of the new pivot.
    for (auto& [q, eq] : pivots_) {
      auto it = eq.row.find(p);
      if (it == eq.row.end()) continue;
      const F f = it->second;
      for (const auto& [v, c] : row) eq.row[v] = eq.row[v] - f * c;
      eq.rhs = eq.rhs - f * rhs;
      prune(eq.row);
    }
    pivots_.emplace(p, Equation{std::move(row), std::move(rhs)});
    return consistent_;
  }

  // The value of x_v when it is fixed by the equations so far.
  std::optional<F> determined(std::size_t v) const {
    auto it = pivots_.find(v);
    if (it == pivots_.end() || it->second.row.size() != 1) return std::nullopt;
    return it->second.rhs;
  }

  bool is_free(std::size_t v) const { return pivots_.find(v) == pivots_.end(); }

  // One solution with all free variables set to zero; requires consistency.
  std::vector<F> particular() const {
    std::vector<F> x(nvars_);
    for (const auto& [p, eq] : pivots_) x[p] = eq.rhs;
    return x;
  }

  // Reduces v modulo the row space: the result has no pivot entries. With
  // homogeneous equations this is a normal form in the quotient by the rows.
  Row normal_form(Row v) const {
    F rhs{};
    prune(v);
    reduce(v, rhs);
    return v;
  }

  // Basis of the solution space of the homogeneous system.
  std::vector<std::vector<F>> nullspace() const {
    std::vector<std::vector<F>> out;
    for (std::size_t f = 0; f < nvars_; ++f) {
      if (!is_free(f)) continue;
      std::vector<F> x(nvars_);
      x[f] = F(1L);
      for (const auto& [p, eq] : pivots_) {
        auto it = eq.row.find(f);
        if (it != eq.row.end()) x[p] = -it->second;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  struct Equation {
    Row row;
    F rhs;
  };

  static void prune(Row& row) {
    for (auto it = row.begin(); it != row.end();) it = is_zero(it->second) ? row.erase(it) : std::next(it);
  }

  void reduce(Row& row, F& rhs) const {
    for (auto it = row.begin(); it != row.end();) {
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      const F f = it->second;
      const std::size_t key = it->first;
      for (const auto& [v, c] : piv->second.row) row[v] = row[v] - f * c;
      rhs = rhs - f * piv->second.rhs;
      prune(row);
      it = row.upper_bound(key);
    }
  }

  std::size_t nvars_;
  std::map<std::size_t, Equation> pivots_;
  bool consistent_ = true;
};

}  // namespace knsuper
