#include "criccati/expression.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "criccati/errors.hpp"
#include "criccati/gauss_legendre.hpp"

namespace criccati {

namespace {
constexpr double kSingularityGuard = 1e-14;
}  // namespace

struct Expression::Node {
  Kind kind = Kind::kConstant;
  double value = 0.0;  // constant value, or the anchor of an integral kind
  int exponent = 0;
  std::shared_ptr<const Node> a, b;
  bool dep_x = false;
  bool dep_y = false;
  bool integral = false;
};

// Grants the free helpers below access to the private node constructor.
struct ExpressionAccess {
  static Expression make(Expression::Node node) {
    return Expression(std::make_shared<const Expression::Node>(std::move(node)));
  }
  static const Expression::Node& node(const Expression& e) { return *e.node_; }
  static const Expression::Node* ptr(const Expression& e) { return e.node_.get(); }
  static Expression wrap(const std::shared_ptr<const Expression::Node>& p) {
    return Expression(p);
  }
  static std::shared_ptr<const Expression::Node> share(const Expression& e) {
    return e.node_;
  }
};

namespace {

using Kind = Expression::Kind;
using Node = Expression::Node;

const Node& N(const Expression& e) { return ExpressionAccess::node(e); }
Expression E(const std::shared_ptr<const Node>& p) { return ExpressionAccess::wrap(p); }
std::shared_ptr<const Node> S(const Expression& e) { return ExpressionAccess::share(e); }

Expression make_unary(Kind kind, const Expression& a) {
  Node n;
  n.kind = kind;
  n.a = S(a);
  n.dep_x = N(a).dep_x;
  n.dep_y = N(a).dep_y;
  n.integral = N(a).integral;
  return ExpressionAccess::make(std::move(n));
}

Expression make_binary(Kind kind, const Expression& a, const Expression& b) {
  Node n;
  n.kind = kind;
  n.a = S(a);
  n.b = S(b);
  n.dep_x = N(a).dep_x || N(b).dep_x;
  n.dep_y = N(a).dep_y || N(b).dep_y;
  n.integral = N(a).integral || N(b).integral;
  return ExpressionAccess::make(std::move(n));
}

double checked_denominator(double d) {
  if (!(std::abs(d) >= kSingularityGuard)) {
    std::ostringstream os;
    os << "singular quotient: |denominator| = " << std::abs(d) << " < 1e-14";
    throw SingularityError(os.str());
  }
  return d;
}

double int_pow(double base, int n) {
  if (n < 0) return 1.0 / int_pow(checked_denominator(base), -n);
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// Per-point memo for subtrees containing integral nodes, so that shared
// subtrees of differentiated expressions are integrated once.
using Memo = std::unordered_map<const Node*, double>;

double eval(const Expression& e, double x, double y, Memo& memo);

double eval_node(const Node& n, double x, double y, Memo& memo) {
  switch (n.kind) {
    case Kind::kConstant:
      return n.value;
    case Kind::kX:
      return x;
    case Kind::kY:
      return y;
    case Kind::kSum:
      return eval(E(n.a), x, y, memo) + eval(E(n.b), x, y, memo);
    case Kind::kProduct:
      return eval(E(n.a), x, y, memo) * eval(E(n.b), x, y, memo);
    case Kind::kQuotient: {
      const double num = eval(E(n.a), x, y, memo);
      return num / checked_denominator(eval(E(n.b), x, y, memo));
    }
    case Kind::kPower:
      return int_pow(eval(E(n.a), x, y, memo), n.exponent);
    case Kind::kExp:
      return std::exp(eval(E(n.a), x, y, memo));
    case Kind::kSin:
      return std::sin(eval(E(n.a), x, y, memo));
    case Kind::kCos:
      return std::cos(eval(E(n.a), x, y, memo));
    case Kind::kIntegralX: {
      const Expression& g = E(n.a);
      return integrate_adaptive([&](double s) { return g(s, y); }, n.value, x).value;
    }
    case Kind::kIntegralY: {
      const Expression& h = E(n.a);
      return integrate_adaptive([&](double s) { return h(x, s); }, n.value, y).value;
    }
    case Kind::kAtX:
      return E(n.a)(n.value, y);
  }
  return 0.0;
}

double eval(const Expression& e, double x, double y, Memo& memo) {
  const Node& n = N(e);
  if (!n.integral) return eval_node(n, x, y, memo);
  const Node* key = ExpressionAccess::ptr(e);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const double v = eval_node(n, x, y, memo);
  memo.emplace(key, v);
  return v;
}

// Replaces x by the constant x0 wherever that can be done structurally.
Expression substitute_x(const Expression& e, double x0) {
  const Node& n = N(e);
  if (!n.dep_x) return e;
  switch (n.kind) {
    case Kind::kX:
      return Expression::constant(x0);
    case Kind::kSum:
      return substitute_x(E(n.a), x0) + substitute_x(E(n.b), x0);
    case Kind::kProduct:
      return substitute_x(E(n.a), x0) * substitute_x(E(n.b), x0);
    case Kind::kQuotient:
      return substitute_x(E(n.a), x0) / substitute_x(E(n.b), x0);
    case Kind::kPower:
      return pow(substitute_x(E(n.a), x0), n.exponent);
    case Kind::kExp:
      return exp(substitute_x(E(n.a), x0));
    case Kind::kSin:
      return sin(substitute_x(E(n.a), x0));
    case Kind::kCos:
      return cos(substitute_x(E(n.a), x0));
    case Kind::kIntegralY:
      return Expression::integral_y(substitute_x(E(n.a), x0), n.value);
    default: {
      // integral_x with a free upper limit: keep the evaluation wrapper.
      Node w;
      w.kind = Kind::kAtX;
      w.a = S(e);
      w.value = x0;
      w.dep_y = n.dep_y;
      w.integral = true;
      return ExpressionAccess::make(std::move(w));
    }
  }
}

enum class Axis { kX, kY };

using DerivMemo = std::unordered_map<const Node*, Expression>;

Expression derive(const Expression& e, Axis axis, DerivMemo& memo);

Expression derive_node(const Expression& e, Axis axis, DerivMemo& memo) {
  const Node& n = N(e);
  auto d = [&](const Expression& c) { return derive(c, axis, memo); };
  switch (n.kind) {
    case Kind::kConstant:
      return Expression();
    case Kind::kX:
      return Expression::constant(axis == Axis::kX ? 1.0 : 0.0);
    case Kind::kY:
      return Expression::constant(axis == Axis::kY ? 1.0 : 0.0);
    case Kind::kSum:
      return d(E(n.a)) + d(E(n.b));
    case Kind::kProduct:
      return d(E(n.a)) * E(n.b) + E(n.a) * d(E(n.b));
    case Kind::kQuotient:
      return d(E(n.a)) / E(n.b) - E(n.a) * d(E(n.b)) / pow(E(n.b), 2);
    case Kind::kPower:
      return static_cast<double>(n.exponent) * pow(E(n.a), n.exponent - 1) * d(E(n.a));
    case Kind::kExp:
      return e * d(E(n.a));
    case Kind::kSin:
      return cos(E(n.a)) * d(E(n.a));
    case Kind::kCos:
      return -(sin(E(n.a)) * d(E(n.a)));
    case Kind::kIntegralX:
      if (axis == Axis::kX) return E(n.a);
      return Expression::integral_x(d(E(n.a)), n.value);
    case Kind::kIntegralY:
      if (axis == Axis::kY) return E(n.a);
      return Expression::integral_y(d(E(n.a)), n.value);
    case Kind::kAtX:
      if (axis == Axis::kX) return Expression();
      return Expression::at_x(d(E(n.a)), n.value);
  }
  return Expression();
}

Expression derive(const Expression& e, Axis axis, DerivMemo& memo) {
  const Node& n = N(e);
  if (axis == Axis::kX ? !n.dep_x : !n.dep_y) return Expression();
  const Node* key = ExpressionAccess::ptr(e);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Expression out = derive_node(e, axis, memo);
  memo.emplace(key, out);
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Binding strength used to decide on parentheses when printing.
int precedence(Kind k) {
  switch (k) {
    case Kind::kSum:
      return 1;
    case Kind::kProduct:
    case Kind::kQuotient:
      return 2;
    case Kind::kPower:
      return 3;
    default:
      return 4;
  }
}

void print(const Expression& e, std::ostringstream& os);

void print_child(const Expression& c, int min_prec, std::ostringstream& os) {
  const bool negative_const = c.constant_value() && *c.constant_value() < 0;
  if (precedence(c.kind()) < min_prec || (negative_const && min_prec > 1)) {
    os << '(';
    print(c, os);
    os << ')';
  } else {
    print(c, os);
  }
}

void print(const Expression& e, std::ostringstream& os) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::kConstant:
      os << format_number(n.value);
      break;
    case Kind::kX:
      os << 'x';
      break;
    case Kind::kY:
      os << 'y';
      break;
    case Kind::kSum:
      print_child(E(n.a), 1, os);
      os << " + ";
      print_child(E(n.b), 2, os);
      break;
    case Kind::kProduct:
      print_child(E(n.a), 2, os);
      os << '*';
      print_child(E(n.b), 3, os);
      break;
    case Kind::kQuotient:
      print_child(E(n.a), 2, os);
      os << '/';
      print_child(E(n.b), 3, os);
      break;
    case Kind::kPower:
      print_child(E(n.a), 4, os);
      os << '^';
      if (n.exponent < 0) {
        os << '(' << n.exponent << ')';
      } else {
        os << n.exponent;
      }
      break;
    case Kind::kExp:
    case Kind::kSin:
    case Kind::kCos:
      os << (n.kind == Kind::kExp ? "exp(" : n.kind == Kind::kSin ? "sin(" : "cos(");
      print(E(n.a), os);
      os << ')';
      break;
    case Kind::kIntegralX:
      os << "int_x[" << format_number(n.value) << "](";
      print(E(n.a), os);
      os << ')';
      break;
    case Kind::kIntegralY:
      os << "int_y[" << format_number(n.value) << "](";
      print(E(n.a), os);
      os << ')';
      break;
    case Kind::kAtX:
      os << "at_x[" << format_number(n.value) << "](";
      print(E(n.a), os);
      os << ')';
      break;
  }
}

std::size_t count(const Expression& e) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::kConstant:
    case Kind::kX:
    case Kind::kY:
      return 1;
    case Kind::kSum:
    case Kind::kProduct:
    case Kind::kQuotient:
      return 1 + count(E(n.a)) + count(E(n.b));
    default:
      return 1 + count(E(n.a));
  }
}

}  // namespace

Expression::Expression() : Expression(constant(0.0)) {}

Expression Expression::constant(double c) {
  Node n;
  n.kind = Kind::kConstant;
  n.value = c;
  return ExpressionAccess::make(std::move(n));
}

Expression Expression::x() {
  Node n;
  n.kind = Kind::kX;
  n.dep_x = true;
  return ExpressionAccess::make(std::move(n));
}

Expression Expression::y() {
  Node n;
  n.kind = Kind::kY;
  n.dep_y = true;
  return ExpressionAccess::make(std::move(n));
}

Expression Expression::integral_x(const Expression& g, double x0) {
  if (!g.depends_on_x()) return g * (x() - x0);
  Node n;
  n.kind = Kind::kIntegralX;
  n.a = S(g);
  n.value = x0;
  n.dep_x = true;
  n.dep_y = g.depends_on_y();
  n.integral = true;
  return ExpressionAccess::make(std::move(n));
}

Expression Expression::integral_y(const Expression& h, double y0) {
  if (!h.depends_on_y()) return h * (y() - y0);
  Node n;
  n.kind = Kind::kIntegralY;
  n.a = S(h);
  n.value = y0;
  n.dep_x = h.depends_on_x();
  n.dep_y = true;
  n.integral = true;
  return ExpressionAccess::make(std::move(n));
}

Expression Expression::at_x(const Expression& g, double x0) { return substitute_x(g, x0); }

Expression operator+(const Expression& a, const Expression& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  return make_binary(Kind::kSum, a, b);
}

Expression operator-(const Expression& a) {
  if (auto c = a.constant_value()) return Expression::constant(-*c);
  return Expression::constant(-1.0) * a;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return Expression();
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  if (cb) return b * a;  // constants go left
  if (ca && b.kind() == Kind::kProduct) {
    const Node& nb = N(b);
    if (auto inner = E(nb.a).constant_value()) return (*ca * *inner) * E(nb.b);
  }
  return make_binary(Kind::kProduct, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && *ca == 0.0) return Expression();
  if (cb && *cb == 1.0) return a;
  if (ca && cb && std::abs(*cb) >= kSingularityGuard) return Expression::constant(*ca / *cb);
  if (cb && std::abs(*cb) >= kSingularityGuard) return (1.0 / *cb) * a;
  return make_binary(Kind::kQuotient, a, b);
}

Expression pow(const Expression& base, int exponent) {
  if (exponent == 0) return Expression::constant(1.0);
  if (exponent == 1) return base;
  if (auto c = base.constant_value()) {
    if (exponent > 0 || std::abs(*c) >= kSingularityGuard) {
      return Expression::constant(int_pow(*c, exponent));
    }
  }
  Node n;
  n.kind = Kind::kPower;
  n.a = S(base);
  n.exponent = exponent;
  n.dep_x = base.depends_on_x();
  n.dep_y = base.depends_on_y();
  n.integral = base.has_integral();
  return ExpressionAccess::make(std::move(n));
}

Expression exp(const Expression& a) {
  if (auto c = a.constant_value()) return Expression::constant(std::exp(*c));
  return make_unary(Kind::kExp, a);
}

Expression sin(const Expression& a) {
  if (auto c = a.constant_value()) return Expression::constant(std::sin(*c));
  return make_unary(Kind::kSin, a);
}

Expression cos(const Expression& a) {
  if (auto c = a.constant_value()) return Expression::constant(std::cos(*c));
  return make_unary(Kind::kCos, a);
}

Expression tan(const Expression& a) { return sin(a) / cos(a); }
Expression sinh(const Expression& a) { return 0.5 * (exp(a) - exp(-a)); }
Expression cosh(const Expression& a) { return 0.5 * (exp(a) + exp(-a)); }
Expression tanh(const Expression& a) { return (exp(a) - exp(-a)) / (exp(a) + exp(-a)); }

Expression::Kind Expression::kind() const { return node_->kind; }

std::optional<double> Expression::constant_value() const {
  if (node_->kind == Kind::kConstant) return node_->value;
  return std::nullopt;
}

bool Expression::depends_on_x() const { return node_->dep_x; }
bool Expression::depends_on_y() const { return node_->dep_y; }
bool Expression::has_integral() const { return node_->integral; }
std::size_t Expression::node_count() const { return count(*this); }

double Expression::operator()(double x, double y) const {
  Memo memo;
  return eval(*this, x, y, memo);
}

Expression Expression::dx() const {
  DerivMemo memo;
  return derive(*this, Axis::kX, memo);
}

Expression Expression::dy() const {
  DerivMemo memo;
  return derive(*this, Axis::kY, memo);
}

std::string Expression::str() const {
  std::ostringstream os;
  print(*this, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    Expression e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "expression parse error at offset " << pos_ << ": " << msg << " in '" << text_
       << "'";
    throw ParseError(os.str());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expression parse_sum() {
    Expression e = parse_product();
    for (;;) {
      if (accept('+')) {
        e = e + parse_product();
      } else if (accept('-')) {
        e = e - parse_product();
      } else {
        return e;
      }
    }
  }

  Expression parse_product() {
    Expression e = parse_unary();
    for (;;) {
      if (accept('*')) {
        e = e * parse_unary();
      } else if (accept('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expression parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    if (!accept('^')) return base;
    const bool paren = accept('(');
    skip_space();
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_space();
    int exponent = 0;
    const char* first = text_.data() + pos_;
    auto res = std::from_chars(first, text_.data() + text_.size(), exponent);
    if (res.ec != std::errc() || res.ptr == first) fail("exponent must be an integer literal");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e')) {
      fail("exponent must be an integer literal");
    }
    if (paren) expect(')');
    return pow(base, sign * exponent);
  }

  Expression parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = text_.data() + pos_;
      auto res = std::from_chars(first, text_.data() + text_.size(), v);
      if (res.ec != std::errc()) fail("malformed number");
      pos_ += static_cast<std::size_t>(res.ptr - first);
      return Expression::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return Expression::x();
      if (name == "y") return Expression::y();
      if (name == "pi") return Expression::constant(std::numbers::pi);
      using Fn = Expression (*)(const Expression&);
      Fn fn = nullptr;
      if (name == "exp") fn = [](const Expression& a) { return exp(a); };
      if (name == "sin") fn = [](const Expression& a) { return sin(a); };
      if (name == "cos") fn = [](const Expression& a) { return cos(a); };
      if (name == "tan") fn = &tan;
      if (name == "sinh") fn = &sinh;
      if (name == "cosh") fn = &cosh;
      if (name == "tanh") fn = &tanh;
      if (fn == nullptr) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      expect('(');
      Expression arg = parse_sum();
      expect(')');
      return fn(arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace criccati
