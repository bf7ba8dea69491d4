#include "knsuper/cli/expr.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace knsuper::cli {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Atom: return a.atom == b.atom;
    case Expr::Kind::Number: return a.number == b.number;
    case Expr::Kind::Pow: return a.number == b.number && a.args == b.args;
    case Expr::Kind::Call: return a.name == b.name && a.args == b.args;
    default: return a.args == b.args;
  }
}

int call_arity(const std::string& name) {
  static const std::map<std::string, int> arity = {{"bracket", 2}, {"dot", 2},  {"jprod", 2}, {"c2", 2},
                                                   {"C1L", 1},     {"C1J", 1},  {"pair", 2},  {"coad", 2}};
  auto it = arity.find(name);
  return it == arity.end() ? -1 : it->second;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : ParseError("at byte " + std::to_string(offset) + ": expected " + join(expected) + ", found " + found),
      offset_(offset), expected_(std::move(expected)), found_(std::move(found)) {}

namespace {

struct Token {
  enum class Type { Int, Ident, Punct, End } type;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Type::Int, s.substr(start, i - start), start});
    } else if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      // A dual family is written with a star glued to the bracket: V*[n].
      if (i + 1 < s.size() && s[i] == '*' && s[i + 1] == '[') ++i;
      out.push_back({Token::Type::Ident, s.substr(start, i - start), start});
    } else if (std::string("+-*/^(),[]").find(char(c)) != std::string::npos) {
      out.push_back({Token::Type::Punct, std::string(1, char(c)), start});
      ++i;
    } else {
      throw SyntaxError(start, {"number", "name", "operator"}, "'" + std::string(1, char(c)) + "'");
    }
  }
  out.push_back({Token::Type::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().type != Token::Type::End) fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_punct(const char* p) const { return peek().type == Token::Type::Punct && peek().text == p; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.offset, std::move(expected), t.type == Token::Type::End ? "end of input" : "'" + t.text + "'");
  }

  void expect(const char* p) {
    if (!is_punct(p)) fail({std::string("'") + p + "'"});
    ++pos_;
  }

  long integer() {
    if (peek().type != Token::Type::Int) fail({"integer"});
    const Token& t = toks_[pos_];
    if (t.text.size() > 12) throw SyntaxError(t.offset, {"integer below 10^12"}, "'" + t.text + "'");
    ++pos_;
    return std::stol(t.text);
  }

  static Expr node(Expr::Kind k, std::size_t off, std::vector<Expr> args = {}) {
    Expr e;
    e.kind = k;
    e.offset = off;
    e.args = std::move(args);
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const auto kind = is_punct("+") ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      const std::size_t off = lhs.offset;
      lhs = node(kind, off, {std::move(lhs), term()});
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      const auto kind = is_punct("*") ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      const std::size_t off = lhs.offset;
      lhs = node(kind, off, {std::move(lhs), unary()});
    }
    return lhs;
  }

  Expr unary() {
    if (is_punct("-")) {
      const std::size_t off = peek().offset;
      ++pos_;
      return node(Expr::Kind::Neg, off, {unary()});
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!is_punct("^")) return base;
    ++pos_;
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      ++pos_;
    }
    const long k = integer();
    const std::size_t off = base.offset;
    Expr e = node(Expr::Kind::Pow, off, {std::move(base)});
    e.number = neg ? -k : k;
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    const std::size_t off = t.offset;
    if (t.type == Token::Type::Int) {
      Expr e = node(Expr::Kind::Number, off);
      e.number = integer();
      return e;
    }
    if (is_punct("(")) {
      ++pos_;
      Expr e = expr();
      expect(")");
      e.offset = off;
      return e;
    }
    if (t.type != Token::Type::Ident) fail({"number", "name", "'('", "'-'"});
    const std::string name = t.text;
    ++pos_;
    if (name == "al") return node(Expr::Kind::Alpha, off);
    if (name == "rt") return node(Expr::Kind::Beta, off);
    if (name == "s") return node(Expr::Kind::Sqrt2, off);
    if (name == "z") return node(Expr::Kind::Z, off);
    if (const int arity = call_arity(name); arity >= 0) {
      expect("(");
      Expr e = node(Expr::Kind::Call, off);
      e.name = name;
      for (int k = 0; k < arity; ++k) {
        if (k) expect(",");
        e.args.push_back(expr());
      }
      if (!is_punct(")")) fail({arity > 1 ? "')' after " + std::to_string(arity) + " arguments" : "')'"});
      ++pos_;
      return e;
    }
    const auto fam = family_from_name(name);
    if (!fam) {
      pos_--;
      fail({"family name", "call name", "al", "rt", "s", "z"});
    }
    expect("[");
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      ++pos_;
    }
    const std::size_t num_off = peek().offset;
    long p = integer();
    if (neg) p = -p;
    HalfInt index(p);
    if (is_punct("/")) {
      ++pos_;
      const std::size_t den_off = peek().offset;
      if (integer() != 2) throw SyntaxError(den_off, {"'2'"}, "another denominator");
      if (p % 2 == 0) throw SyntaxError(num_off, {"odd numerator over 2"}, "'" + std::to_string(p) + "'");
      index = HalfInt::from_twice(int(p));
    }
    expect("]");
    Expr e = node(Expr::Kind::Atom, off);
    e.atom = {*fam, index};
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  const std::string s = render(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Expr parse(const std::string& input) { return Parser(input).parse_all(); }

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Atom: return e.atom.to_string();
    case Expr::Kind::Number: return std::to_string(e.number);
    case Expr::Kind::Alpha: return "al";
    case Expr::Kind::Beta: return "rt";
    case Expr::Kind::Sqrt2: return "s";
    case Expr::Kind::Z: return "z";
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], 3);
    case Expr::Kind::Add: return wrap(e.args[0], 1) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::Sub: return wrap(e.args[0], 1) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::Mul: return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
    case Expr::Kind::Div: return wrap(e.args[0], 2) + "/" + wrap(e.args[1], 3);
    case Expr::Kind::Pow: return wrap(e.args[0], 5) + "^" + std::to_string(e.number);
    case Expr::Kind::Call: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? ", " : "") + render(e.args[i]);
      return out + ")";
    }
  }
  return {};
}

std::string dump(const Expr& e) {
  static const char* names[] = {"atom", "num", "al", "rt", "s", "z", "neg", "add", "sub", "mul", "div", "pow", "call"};
  switch (e.kind) {
    case Expr::Kind::Atom:
    case Expr::Kind::Number:
    case Expr::Kind::Alpha:
    case Expr::Kind::Beta:
    case Expr::Kind::Sqrt2:
    case Expr::Kind::Z: return render(e);
    default: break;
  }
  std::ostringstream os;
  os << "(" << (e.kind == Expr::Kind::Call ? e.name : names[int(e.kind)]);
  if (e.kind == Expr::Kind::Pow) os << " " << e.number;
  for (const auto& a : e.args) os << " " << dump(a);
  os << ")";
  return os.str();
}

}  // namespace knsuper::cli
