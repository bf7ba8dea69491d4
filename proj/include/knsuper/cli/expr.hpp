#pragma once

// Expression language of the command line:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := primary ('^' ['-'] integer)?
//   primary := integer | al | rt | s | z | atom | call | '(' expr ')'
//   atom  := family ['*'] '[' ['-'] integer ['/' '2'] ']'
//   call  := name '(' expr (',' expr)* ')'
// al is alpha, rt its square root beta, s is sqrt 2 and z the coordinate.

#include <cstddef>
#include <string>
#include <vector>

#include "knsuper/densities.hpp"
#include "knsuper/errors.hpp"

namespace knsuper::cli {

struct Expr {
  enum class Kind { Atom, Number, Alpha, Beta, Sqrt2, Z, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  BasisIndex atom{};       // Atom
  long number = 0;         // Number; exponent for Pow
  std::string name;        // Call
  std::vector<Expr> args;  // operands
  std::size_t offset = 0;  // byte offset of the first token

  // Structural equality; offsets are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

// Calls and their arities.
int call_arity(const std::string& name);  // -1 for unknown names

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

Expr parse(const std::string& input);
// Minimal parentheses; parse(render(e)) == e.
std::string render(const Expr& e);
// Lisp-like dump for diagnostics: (add (mul 2 al) G[0]).
std::string dump(const Expr& e);

}  // namespace knsuper::cli
