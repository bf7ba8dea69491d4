#include "knsuper/tables.hpp"

#include <algorithm>
#include <sstream>

namespace knsuper {

Scalar StructureTable::value(const BasisIndex& left, const BasisIndex& right) const {
  for (const auto& e : pairs)
    if (e.left == left && e.right == right) return e.value;
  return {};
}

CoeffMap StructureTable::coeffs(const BasisIndex& arg) const {
  for (const auto& e : maps)
    if (e.arg == arg) return e.coeffs;
  return {};
}

nlohmann::json StructureTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : pairs)
    rows.push_back({{"left", e.left.to_string()}, {"right", e.right.to_string()}, {"value", e.value.to_string()}});
  for (const auto& e : maps) {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [k, v] : e.coeffs) c[k.to_string()] = v.to_string();
    rows.push_back({{"arg", e.arg.to_string()}, {"coeffs", c}});
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\" ") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string StructureTable::to_csv() const {
  std::ostringstream os;
  if (!pairs.empty() || maps.empty()) {
    os << "left,right,value\n";
    for (const auto& e : pairs)
      os << csv_field(e.left.to_string()) << ',' << csv_field(e.right.to_string()) << ','
         << csv_field(e.value.to_string()) << '\n';
  }
  if (!maps.empty()) {
    os << "arg,label,value\n";
    for (const auto& e : maps)
      for (const auto& [k, v] : e.coeffs)
        os << csv_field(e.arg.to_string()) << ',' << csv_field(k.to_string()) << ',' << csv_field(v.to_string())
           << '\n';
  }
  return os.str();
}

CoeffMap canonical(CoeffMap m) {
  std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CoeffMap out;
  for (auto& [k, v] : m) {
    if (!out.empty() && out.back().first == k) out.back().second += v;
    else out.emplace_back(k, std::move(v));
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

bool same_coeffs(const CoeffMap& a, const CoeffMap& b) {
  const CoeffMap x = canonical(a), y = canonical(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i].first == y[i].first) || !(x[i].second == y[i].second)) return false;
  return true;
}

std::string render_coeffs(const CoeffMap& m) {
  std::string out;
  for (const auto& [k, c] : canonical(m)) {
    std::string cs = c.to_string();
    bool negative = false;
    if (c.is_single_term() && cs.front() == '-') {
      negative = true;
      cs.erase(0, 1);
    }
    std::string term;
    if (cs == "1") term = k.to_string();
    else if (c.is_single_term()) term = cs + "*" + k.to_string();
    else term = "(" + cs + ")*" + k.to_string();
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace knsuper
