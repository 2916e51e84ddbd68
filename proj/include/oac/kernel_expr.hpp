#pragma once

// One-variable kernel expression language:
//
//   expr     := term (("+"|"-") term)* ;
//   term     := factor ("*" factor)* ;
//   factor   := rational | "r" | "-" factor | "(" expr ")" | call ;
//   call     := ("abs"|"min"|"max"|"pow"|"div"|"ifzero") "(" expr ("," expr)* ")" ;
//   rational := integer ("/" positive-integer)? .
//
// Arity: abs/1, min/2, max/2, pow/2 (exponent a nonnegative integer literal),
// div/2, ifzero/3. Evaluation is exact; ifzero only evaluates the selected branch.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "oac/rational.hpp"

namespace oac {

enum class ExprOp { literal, var, neg, add, sub, mul, abs, min, max, pow, div, ifzero };

class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr literal(const Rational& q);
  static Expr var();
  /// Folds negated literals into a single literal, so printing round-trips.
  static Expr negate(Expr e);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr abs(Expr a);
  static Expr min(Expr a, Expr b);
  static Expr max(Expr a, Expr b);
  static Expr pow(Expr base, unsigned exponent);
  static Expr div(Expr a, Expr b);
  static Expr ifzero(Expr test, Expr then_branch, Expr else_branch);

  ExprOp op() const noexcept;
  const Rational& value() const;  // literal only
  unsigned exponent() const;      // pow only
  const std::vector<Expr>& args() const;

  bool is_literal_zero() const noexcept;
  std::size_t depth() const;

  friend bool operator==(const Expr& a, const Expr& b);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline constexpr unsigned kMaxExponent = 256;

/// Throws ParseError (with byte offset) on syntax errors and on negative,
/// fractional or oversized pow exponents.
Expr parse_expr(std::string_view text);

/// Minimal-parenthesis printing; parse_expr(print(e)) == e.
std::string print(const Expr& e);

/// Exact value at r; throws EvalError on division by zero.
Rational eval(const Expr& e, const Rational& r);

}  // namespace oac
