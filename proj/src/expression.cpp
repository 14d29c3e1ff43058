#include "camforge/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "camforge/error.hpp"
#include "camforge/numfmt.hpp"

namespace camforge {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind{Tok::End};
  std::size_t offset{};
  std::string_view text;
  double number{};
};

struct Dual {
  double v;
  double d;
};

constexpr int kMaxPolynomialDegree = 64;
constexpr int kMaxExponent = 1 << 20;

}  // namespace

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : src_(text) { advance(); }

  Expression run() {
    Expression out;
    out.text_ = std::string(src_);
    nodes_ = &out.nodes_;
    out.root_ = parse_expr();
    if (tok_.kind != Tok::End) fail("operator or end of input");
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_{0};
  Token tok_;
  std::vector<Expression::Node>* nodes_{nullptr};

  [[noreturn]] void fail(const std::string& expected) const {
    std::ostringstream msg;
    msg << "parse error at offset " << tok_.offset << ": expected " << expected;
    if (tok_.kind == Tok::End) {
      msg << ", found end of input";
    } else {
      msg << ", found '" << tok_.text << "'";
    }
    throw ParseError(tok_.offset, expected, msg.str());
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
        ++end;
      }
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '-': tok_.kind = Tok::Minus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '/': tok_.kind = Tok::Slash; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default: {
        tok_.text = src_.substr(pos_, 1);
        std::ostringstream msg;
        msg << "parse error at offset " << pos_ << ": unexpected character '" << c << "'";
        throw ParseError(pos_, "number, X, function, '(' or operator", msg.str());
      }
    }
    tok_.text = src_.substr(pos_, 1);
    ++pos_;
  }

  void lex_number() {
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    };
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
        end = exp;
        digits();
      }
    }
    tok_.kind = Tok::Number;
    tok_.text = src_.substr(pos_, end - pos_);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) {
      std::ostringstream msg;
      msg << "parse error at offset " << pos_ << ": malformed number '" << tok_.text << "'";
      throw ParseError(pos_, "number", msg.str());
    }
    tok_.number = value;
    pos_ = end;
  }

  int add(Expression::Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    nodes_->push_back(Expression::Node{op, value, 0, lhs, rhs});
    return static_cast<int>(nodes_->size()) - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const auto op = tok_.kind == Tok::Plus ? Expression::Op::Add : Expression::Op::Sub;
      advance();
      lhs = add(op, lhs, parse_term());
    }
    return lhs;
  }

  int parse_term() {
    int lhs = parse_unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const auto op = tok_.kind == Tok::Star ? Expression::Op::Mul : Expression::Op::Div;
      advance();
      lhs = add(op, lhs, parse_unary());
    }
    return lhs;
  }

  int parse_unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return add(Expression::Op::Neg, parse_unary());
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  bool depends_on_x(int index) const {
    const auto& n = (*nodes_)[index];
    if (n.op == Expression::Op::Variable) return true;
    return (n.lhs >= 0 && depends_on_x(n.lhs)) || (n.rhs >= 0 && depends_on_x(n.rhs));
  }

  int parse_power() {
    const int base = parse_primary();
    if (tok_.kind != Tok::Caret) return base;
    advance();
    const std::size_t exp_offset = tok_.offset;
    const int exponent = parse_unary();
    auto reject = [&](const std::string& why) {
      std::ostringstream msg;
      msg << "exponent at offset " << exp_offset << " " << why;
      throw ParseError(exp_offset, "integer constant", msg.str(), ErrorCode::NonIntegerExponent);
    };
    if (depends_on_x(exponent)) reject("depends on X");
    Expression probe;
    probe.nodes_ = *nodes_;
    probe.root_ = exponent;
    const double value = probe.eval(0.0);
    if (!std::isfinite(value) || value != std::trunc(value)) reject("is not an integer");
    if (std::abs(value) > kMaxExponent) reject("is too large");
    const int node = add(Expression::Op::Pow, base);
    (*nodes_)[node].exponent = static_cast<int>(value);
    return node;
  }

  int parse_primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        const double value = tok_.number;
        advance();
        return add(Expression::Op::Number, -1, -1, value);
      }
      case Tok::LParen: {
        advance();
        const int inner = parse_expr();
        if (tok_.kind != Tok::RParen) fail("')'");
        advance();
        return inner;
      }
      case Tok::Ident: {
        const std::string_view name = tok_.text;
        if (name == "X" || name == "x") {
          advance();
          return add(Expression::Op::Variable);
        }
        Expression::Op op;
        if (name == "sin") op = Expression::Op::Sin;
        else if (name == "cos") op = Expression::Op::Cos;
        else if (name == "tanh") op = Expression::Op::Tanh;
        else if (name == "exp") op = Expression::Op::Exp;
        else if (name == "sqrt") op = Expression::Op::Sqrt;
        else if (name == "abs") op = Expression::Op::Abs;
        else fail("X or one of sin, cos, tanh, exp, sqrt, abs");
        advance();
        if (tok_.kind != Tok::LParen) fail("'('");
        advance();
        const int arg = parse_expr();
        if (tok_.kind != Tok::RParen) fail("')'");
        advance();
        return add(op, arg);
      }
      default:
        fail("number, X, function or '('");
    }
  }
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

namespace {

template <typename Visit>
auto walk(const std::vector<Expression::Node>& nodes, int index, const Visit& visit)
    -> decltype(visit(nodes[0], nullptr, nullptr)) {
  const auto& n = nodes[index];
  using R = decltype(visit(n, nullptr, nullptr));
  if (n.lhs < 0) return visit(n, nullptr, nullptr);
  R a = walk(nodes, n.lhs, visit);
  if (n.rhs < 0) return visit(n, &a, nullptr);
  R b = walk(nodes, n.rhs, visit);
  return visit(n, &a, &b);
}

}  // namespace

double Expression::eval(double x) const {
  return walk(nodes_, root_, [x](const Node& n, const double* a, const double* b) -> double {
    switch (n.op) {
      case Op::Number: return n.value;
      case Op::Variable: return x;
      case Op::Neg: return -*a;
      case Op::Add: return *a + *b;
      case Op::Sub: return *a - *b;
      case Op::Mul: return *a * *b;
      case Op::Div: return *a / *b;
      case Op::Pow: return std::pow(*a, n.exponent);
      case Op::Sin: return std::sin(*a);
      case Op::Cos: return std::cos(*a);
      case Op::Tanh: return std::tanh(*a);
      case Op::Exp: return std::exp(*a);
      case Op::Sqrt: return std::sqrt(*a);
      case Op::Abs: return std::abs(*a);
    }
    return 0.0;
  });
}

std::pair<double, double> Expression::eval_with_derivative(double x) const {
  const Dual r = walk(nodes_, root_, [x](const Node& n, const Dual* a, const Dual* b) -> Dual {
    switch (n.op) {
      case Op::Number: return {n.value, 0.0};
      case Op::Variable: return {x, 1.0};
      case Op::Neg: return {-a->v, -a->d};
      case Op::Add: return {a->v + b->v, a->d + b->d};
      case Op::Sub: return {a->v - b->v, a->d - b->d};
      case Op::Mul: return {a->v * b->v, a->d * b->v + a->v * b->d};
      case Op::Div: return {a->v / b->v, (a->d * b->v - a->v * b->d) / (b->v * b->v)};
      case Op::Pow: {
        if (n.exponent == 0) return {1.0, 0.0};
        return {std::pow(a->v, n.exponent), n.exponent * std::pow(a->v, n.exponent - 1) * a->d};
      }
      case Op::Sin: return {std::sin(a->v), std::cos(a->v) * a->d};
      case Op::Cos: return {std::cos(a->v), -std::sin(a->v) * a->d};
      case Op::Tanh: {
        const double t = std::tanh(a->v);
        return {t, (1.0 - t * t) * a->d};
      }
      case Op::Exp: {
        const double e = std::exp(a->v);
        return {e, e * a->d};
      }
      case Op::Sqrt: {
        const double s = std::sqrt(a->v);
        return {s, a->d / (2.0 * s)};
      }
      case Op::Abs: {
        const double sign = a->v > 0.0 ? 1.0 : (a->v < 0.0 ? -1.0 : 0.0);
        return {std::abs(a->v), sign * a->d};
      }
    }
    return {0.0, 0.0};
  });
  return {r.v, r.d};
}

namespace {

using Poly = std::vector<double>;

Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  return p;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return trim(std::move(out));
}

Poly combine(const Poly& a, const Poly& b, double sign) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + sign * b[i];
  return trim(std::move(out));
}

}  // namespace

std::optional<std::vector<double>> Expression::as_polynomial() const {
  using MaybePoly = std::optional<Poly>;
  auto result = walk(nodes_, root_,
                     [](const Node& n, const MaybePoly* a, const MaybePoly* b) -> MaybePoly {
    if ((a && !*a) || (b && !*b)) return std::nullopt;
    auto is_const = [](const Poly& p) { return p.size() == 1; };
    switch (n.op) {
      case Op::Number: return Poly{n.value};
      case Op::Variable: return Poly{0.0, 1.0};
      case Op::Neg: {
        Poly p = **a;
        for (double& c : p) c = -c;
        return p;
      }
      case Op::Add: return combine(**a, **b, 1.0);
      case Op::Sub: return combine(**a, **b, -1.0);
      case Op::Mul: {
        if ((*a)->size() + (*b)->size() - 2 > kMaxPolynomialDegree) return std::nullopt;
        return multiply(**a, **b);
      }
      case Op::Div: {
        if (!is_const(**b) || (**b)[0] == 0.0) return std::nullopt;
        Poly p = **a;
        for (double& c : p) c = c / (**b)[0];
        return trim(std::move(p));
      }
      case Op::Pow: {
        const Poly& base = **a;
        if (is_const(base)) return Poly{std::pow(base[0], n.exponent)};
        if (n.exponent < 0) return std::nullopt;
        if ((base.size() - 1) * static_cast<std::size_t>(n.exponent) > kMaxPolynomialDegree) {
          return std::nullopt;
        }
        Poly p{1.0};
        for (int i = 0; i < n.exponent; ++i) p = multiply(p, base);
        return p;
      }
      default: {
        // Functions only fold when their argument is constant.
        if (!is_const(**a)) return std::nullopt;
        const double v = (**a)[0];
        switch (n.op) {
          case Op::Sin: return Poly{std::sin(v)};
          case Op::Cos: return Poly{std::cos(v)};
          case Op::Tanh: return Poly{std::tanh(v)};
          case Op::Exp: return Poly{std::exp(v)};
          case Op::Sqrt: return Poly{std::sqrt(v)};
          case Op::Abs: return Poly{std::abs(v)};
          default: return std::nullopt;
        }
      }
    }
  });
  if (!result) return std::nullopt;
  for (double c : *result) {
    if (!std::isfinite(c)) return std::nullopt;
  }
  return result;
}

std::string format_polynomial(const std::vector<double>& coefficients) {
  std::string out;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const double c = coefficients[k];
    if (c == 0.0) continue;
    if (!out.empty()) out += " + ";
    out += format_shortest(c);
    if (k > 0) out += "*X^" + std::to_string(k);
  }
  return out.empty() ? std::string("0") : out;
}

}  // namespace camforge
