#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace camforge {

/// Parsed arithmetic expression in the single variable X.
///
/// Grammar (lowest to highest precedence):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' unary)?          right associative
///     primary := number | 'X' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | tanh | exp | sqrt | abs
///
/// Exponents must be constant integers. Lower-case 'x' is accepted as X.
class Expression {
 public:
  /// Throws ParseError (with byte offset) or ParseError coded NonIntegerExponent.
  static Expression parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }

  double eval(double x) const;

  /// Value and exact derivative d/dX by forward-mode differentiation.
  std::pair<double, double> eval_with_derivative(double x) const;

  /// Ascending coefficients when the tree is a polynomial in X (constant
  /// subtrees are folded). Trailing zeros are trimmed, at least one
  /// coefficient is kept. Degrees above 64 are not normalised.
  std::optional<std::vector<double>> as_polynomial() const;

  enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Tanh, Exp, Sqrt, Abs };

  struct Node {
    Op op{Op::Number};
    double value{};
    int exponent{};
    int lhs{-1};
    int rhs{-1};
  };

 private:
  friend class ExpressionParser;

  std::string text_;
  std::vector<Node> nodes_;
  int root_{-1};
};

/// Writes ascending coefficients as "c0 + c1*X^1 + ..." using shortest
/// round-trip decimals so that parsing the result reproduces them exactly.
std::string format_polynomial(const std::vector<double>& coefficients);

}  // namespace camforge
