#include "oac/kernel_expr.hpp"

#include <cctype>

#include "oac/error.hpp"

namespace oac {

struct Expr::Node {
  ExprOp op = ExprOp::literal;
  Rational value;
  unsigned exponent = 0;
  std::vector<Expr> args;
};

namespace {

std::shared_ptr<const Expr::Node> zero_node() {
  static const auto node = std::make_shared<const Expr::Node>();
  return node;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::literal(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->value = q;
  return Expr(std::move(n));
}

Expr Expr::var() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->op = ExprOp::var;
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return Expr(node);
}

namespace {

Expr::Node make_node(ExprOp op, std::vector<Expr> args) {
  Expr::Node n;
  n.op = op;
  n.args = std::move(args);
  return n;
}

}  // namespace

#define OAC_MAKE(op, ...) Expr(std::make_shared<const Node>(make_node(op, {__VA_ARGS__})))

Expr Expr::negate(Expr e) {
  if (e.op() == ExprOp::literal) return literal(-e.value());
  return OAC_MAKE(ExprOp::neg, std::move(e));
}
Expr Expr::add(Expr a, Expr b) { return OAC_MAKE(ExprOp::add, std::move(a), std::move(b)); }
Expr Expr::sub(Expr a, Expr b) { return OAC_MAKE(ExprOp::sub, std::move(a), std::move(b)); }
Expr Expr::mul(Expr a, Expr b) { return OAC_MAKE(ExprOp::mul, std::move(a), std::move(b)); }
Expr Expr::abs(Expr a) { return OAC_MAKE(ExprOp::abs, std::move(a)); }
Expr Expr::min(Expr a, Expr b) { return OAC_MAKE(ExprOp::min, std::move(a), std::move(b)); }
Expr Expr::max(Expr a, Expr b) { return OAC_MAKE(ExprOp::max, std::move(a), std::move(b)); }
Expr Expr::div(Expr a, Expr b) { return OAC_MAKE(ExprOp::div, std::move(a), std::move(b)); }
Expr Expr::ifzero(Expr test, Expr then_branch, Expr else_branch) {
  return OAC_MAKE(ExprOp::ifzero, std::move(test), std::move(then_branch), std::move(else_branch));
}

#undef OAC_MAKE

Expr Expr::pow(Expr base, unsigned exponent) {
  if (exponent > kMaxExponent) throw ParseError("pow exponent exceeds " + std::to_string(kMaxExponent), 0);
  auto n = std::make_shared<Node>(make_node(ExprOp::pow, {std::move(base)}));
  n->exponent = exponent;
  return Expr(std::move(n));
}

ExprOp Expr::op() const noexcept { return node_->op; }
const Rational& Expr::value() const { return node_->value; }
unsigned Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

bool Expr::is_literal_zero() const noexcept { return node_->op == ExprOp::literal && node_->value == 0; }

std::size_t Expr::depth() const {
  std::size_t d = 0;
  for (const auto& a : node_->args) d = std::max(d, a.depth());
  return d + 1;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return false;
  if (x.op == ExprOp::literal) return x.value == y.value;
  if (x.op == ExprOp::pow && x.exponent != y.exponent) return false;
  return x.args == y.args;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::add(std::move(lhs), term());
      else if (accept('-'))
        lhs = Expr::sub(std::move(lhs), term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (accept('*')) lhs = Expr::mul(std::move(lhs), factor());
    return lhs;
  }

  std::string digits() {
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr number() {
    const mpz_class num(digits(), 10);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const auto den_pos = pos_;
      const std::string den_text = digits();
      if (den_text.empty()) fail("expected denominator");
      const mpz_class den(den_text, 10);
      if (den == 0) throw ParseError("denominator must be positive", den_pos);
      Rational q(num, den);
      q.canonicalize();
      return Expr::literal(q);
    }
    return Expr::literal(Rational(num));
  }

  Expr factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '-') {
      ++pos_;
      return Expr::negate(factor());
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "r") return Expr::var();
      return call(word, start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr call(std::string_view name, std::size_t name_pos) {
    std::size_t arity = 0;
    if (name == "abs")
      arity = 1;
    else if (name == "min" || name == "max" || name == "pow" || name == "div")
      arity = 2;
    else if (name == "ifzero")
      arity = 3;
    else
      throw ParseError("unknown identifier '" + std::string(name) + "'", name_pos);

    expect('(');
    std::vector<Expr> args;
    std::vector<std::size_t> arg_pos;
    skip_ws();
    arg_pos.push_back(pos_);
    args.push_back(expr());
    auto arity_error = [&](const char* what) {
      return ParseError(std::string(name) + " expects " + std::to_string(arity) + " argument(s): " + what, pos_);
    };
    // Arity errors point at the extra ',' or the early ')'.
    for (skip_ws(); pos_ < text_.size() && text_[pos_] == ','; skip_ws()) {
      if (args.size() == arity) throw arity_error("too many");
      ++pos_;
      skip_ws();
      arg_pos.push_back(pos_);
      args.push_back(expr());
    }
    if (args.size() != arity && pos_ < text_.size() && text_[pos_] == ')') throw arity_error("too few");
    expect(')');

    if (name == "abs") return Expr::abs(args[0]);
    if (name == "min") return Expr::min(args[0], args[1]);
    if (name == "max") return Expr::max(args[0], args[1]);
    if (name == "div") return Expr::div(args[0], args[1]);
    if (name == "ifzero") return Expr::ifzero(args[0], args[1], args[2]);

    const Expr& ex = args[1];
    if (ex.op() != ExprOp::literal || ex.value().get_den() != 1)
      throw ParseError("pow exponent must be a nonnegative integer literal", arg_pos[1]);
    if (ex.value() < 0) throw ParseError("pow exponent must not be negative", arg_pos[1]);
    if (ex.value() > kMaxExponent) throw ParseError("pow exponent too large", arg_pos[1]);
    return Expr::pow(args[0], static_cast<unsigned>(ex.value().get_num().get_ui()));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer: precedence 0 = sum, 1 = product, 2 = factor.

int precedence(const Expr& e) {
  switch (e.op()) {
    case ExprOp::add:
    case ExprOp::sub: return 0;
    case ExprOp::mul: return 1;
    case ExprOp::literal: return e.value() < 0 ? 2 : 3;
    default: return 3;
  }
}

void print_to(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print_to(e, out);
    out += ')';
  } else {
    print_to(e, out);
  }
}

void print_call(const char* name, const Expr& e, std::string& out) {
  out += name;
  out += '(';
  for (std::size_t i = 0; i < e.args().size(); ++i) {
    if (i) out += ", ";
    print_to(e.args()[i], out);
  }
  if (e.op() == ExprOp::pow) out += ", " + std::to_string(e.exponent());
  out += ')';
}

void print_to(const Expr& e, std::string& out) {
  const auto& a = e.args();
  switch (e.op()) {
    case ExprOp::literal: out += to_string(e.value()); return;
    case ExprOp::var: out += 'r'; return;
    case ExprOp::neg:
      out += '-';
      print_at(a[0], 2, out);
      return;
    case ExprOp::add:
    case ExprOp::sub:
      print_at(a[0], 0, out);
      out += e.op() == ExprOp::add ? " + " : " - ";
      print_at(a[1], 1, out);
      return;
    case ExprOp::mul:
      print_at(a[0], 1, out);
      out += " * ";
      print_at(a[1], 2, out);
      return;
    case ExprOp::abs: print_call("abs", e, out); return;
    case ExprOp::min: print_call("min", e, out); return;
    case ExprOp::max: print_call("max", e, out); return;
    case ExprOp::pow: print_call("pow", e, out); return;
    case ExprOp::div: print_call("div", e, out); return;
    case ExprOp::ifzero: print_call("ifzero", e, out); return;
  }
}

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print(const Expr& e) {
  std::string out;
  print_to(e, out);
  return out;
}

Rational eval(const Expr& e, const Rational& r) {
  const auto& a = e.args();
  switch (e.op()) {
    case ExprOp::literal: return e.value();
    case ExprOp::var: return r;
    case ExprOp::neg: return -eval(a[0], r);
    case ExprOp::add: return eval(a[0], r) + eval(a[1], r);
    case ExprOp::sub: return eval(a[0], r) - eval(a[1], r);
    case ExprOp::mul: return eval(a[0], r) * eval(a[1], r);
    case ExprOp::abs: return abs_value(eval(a[0], r));
    case ExprOp::min: return min_of(eval(a[0], r), eval(a[1], r));
    case ExprOp::max: return max_of(eval(a[0], r), eval(a[1], r));
    case ExprOp::pow: {
      const Rational base = eval(a[0], r);
      Rational out;
      mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e.exponent());
      mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e.exponent());
      return out;
    }
    case ExprOp::div: {
      const Rational den = eval(a[1], r);
      if (den == 0) throw EvalError("division by zero in " + print(e) + " at r = " + to_string(r));
      return eval(a[0], r) / den;
    }
    case ExprOp::ifzero: return eval(a[0], r) == 0 ? eval(a[1], r) : eval(a[2], r);
  }
  throw EvalError("malformed expression");
}

}  // namespace oac
