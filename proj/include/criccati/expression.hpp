#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace criccati {

/// Immutable expression tree in the coordinates x and y with exact partial
/// derivatives.
///
/// Besides the elementary kinds there are three integral kinds used to
/// represent antiderivatives exactly enough to differentiate:
///   integral_x(g, x0) = int_{x0}^{x} g(s, y) ds
///   integral_y(h, y0) = int_{y0}^{y} h(x, s) ds
///   at_x(g, x0)       = g(x0, y)
/// Their values come from adaptive Gauss-Legendre quadrature; their
/// derivatives are exact (fundamental theorem of calculus plus
/// differentiation under the integral sign).
///
/// Construction folds constants and drops neutral elements. Integrals of
/// integrands that do not depend on the integration variable are built in
/// closed form.
class Expression {
 public:
  enum class Kind {
    kConstant,
    kX,
    kY,
    kSum,
    kProduct,
    kQuotient,
    kPower,
    kExp,
    kSin,
    kCos,
    kIntegralX,
    kIntegralY,
    kAtX,
  };

  /// The constant 0.
  Expression();

  static Expression constant(double c);
  static Expression x();
  static Expression y();
  static Expression integral_x(const Expression& integrand, double x0);
  static Expression integral_y(const Expression& integrand, double y0);
  static Expression at_x(const Expression& g, double x0);

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);
  friend Expression operator+(const Expression& a, double b) { return a + constant(b); }
  friend Expression operator+(double a, const Expression& b) { return constant(a) + b; }
  friend Expression operator-(const Expression& a, double b) { return a - constant(b); }
  friend Expression operator-(double a, const Expression& b) { return constant(a) - b; }
  friend Expression operator*(const Expression& a, double b) { return a * constant(b); }
  friend Expression operator*(double a, const Expression& b) { return constant(a) * b; }
  friend Expression operator/(const Expression& a, double b) { return a / constant(b); }
  friend Expression operator/(double a, const Expression& b) { return constant(a) / b; }

  friend Expression pow(const Expression& base, int exponent);
  friend Expression exp(const Expression& a);
  friend Expression sin(const Expression& a);
  friend Expression cos(const Expression& a);

  Kind kind() const;
  std::optional<double> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }
  bool depends_on_x() const;
  bool depends_on_y() const;
  bool has_integral() const;
  std::size_t node_count() const;

  /// Throws SingularityError when a quotient denominator (or the base of a
  /// negative power) has modulus below 1e-14.
  double operator()(double x, double y) const;

  Expression dx() const;
  Expression dy() const;

  std::string str() const;

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend struct ExpressionAccess;

  std::shared_ptr<const Node> node_;
};

// Convenience wrappers built from the primitive kinds.
Expression tan(const Expression& a);
Expression sinh(const Expression& a);
Expression cosh(const Expression& a);
Expression tanh(const Expression& a);

/// Parses `+ - * / ^` (integer exponents), parentheses, numbers, `x`, `y`,
/// `pi`, and the functions exp, sin, cos, tan, sinh, cosh, tanh. Throws
/// ParseError with the character offset on malformed input.
Expression parse_expression(std::string_view text);

}  // namespace criccati
