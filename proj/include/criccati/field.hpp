#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "criccati/domain.hpp"
#include "criccati/expression.hpp"

namespace criccati {

using Complex = std::complex<double>;

/// Real scalar field on a rectangle, backed either by an Expression (exact
/// derivatives) or by a uniform grid of samples (second-order finite
/// differences, bilinear interpolation between nodes).
///
/// Fields are immutable; copies share their backend.
class ScalarField {
 public:
  /// The constant 0 on the unit square [-1, 1]^2.
  ScalarField();

  ScalarField(Expression expr, DomainSpec domain);
  /// `samples` holds ny rows of nx values, y increasing per row. Throws
  /// ParameterError on a size mismatch or non-finite sample.
  ScalarField(DomainSpec grid, std::vector<double> samples);

  static ScalarField constant(double c, const DomainSpec& domain);
  /// Samples `source` at the nodes of `grid`.
  static ScalarField sample(const ScalarField& source, const DomainSpec& grid);

  bool is_grid() const { return !samples_.empty(); }
  const DomainSpec& domain() const { return domain_; }
  /// Null for grid-backed fields.
  const Expression* expression() const { return is_grid() ? nullptr : &expr_; }
  std::span<const double> samples() const { return samples_; }
  double node(int i, int j) const { return samples_[j * domain_.nx() + i]; }

  /// Throws DomainError outside the rectangle.
  double operator()(Point p) const;
  double operator()(double x, double y) const { return (*this)(Point{x, y}); }

  ScalarField dx() const;
  ScalarField dy() const;
  /// Expression: exact. Grid: 5-point stencil inside, second-order one-sided
  /// second differences on the boundary (3-point when the grid has 3 nodes).
  ScalarField laplacian() const;

  /// Same rectangle, new base point. The backend is unchanged.
  ScalarField with_domain(const DomainSpec& d) const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);
  friend ScalarField operator+(const ScalarField& a, double b);
  friend ScalarField operator+(double a, const ScalarField& b) { return b + a; }
  friend ScalarField operator-(const ScalarField& a, double b) { return a + (-b); }
  friend ScalarField operator-(double a, const ScalarField& b) { return -b + a; }
  friend ScalarField operator*(const ScalarField& a, double b);
  friend ScalarField operator*(double a, const ScalarField& b) { return b * a; }
  friend ScalarField operator/(const ScalarField& a, double b) { return a * (1.0 / b); }
  friend ScalarField operator/(double a, const ScalarField& b);
  friend ScalarField exp(const ScalarField& a);

 private:
  template <typename ExprOp, typename SampleOp>
  static ScalarField combine(const ScalarField& a, const ScalarField& b, ExprOp eop,
                             SampleOp sop);
  template <typename ExprOp, typename SampleOp>
  ScalarField map(ExprOp eop, SampleOp sop) const;

  DomainSpec domain_;
  Expression expr_;
  std::vector<double> samples_;
};

/// Complex field stored as real and imaginary ScalarFields on one rectangle.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(ScalarField re, ScalarField im);
  /// Purely real field.
  explicit ComplexField(ScalarField re);

  static ComplexField constant(Complex c, const DomainSpec& domain);
  static ComplexField sample(const ComplexField& source, const DomainSpec& grid);

  const ScalarField& re() const { return re_; }
  const ScalarField& im() const { return im_; }
  const DomainSpec& domain() const { return re_.domain(); }
  bool is_grid() const { return re_.is_grid() || im_.is_grid(); }

  Complex operator()(Point p) const { return {re_(p), im_(p)}; }
  Complex operator()(double x, double y) const { return (*this)(Point{x, y}); }

  ComplexField conj() const { return {re_, -im_}; }
  ScalarField modulus_squared() const { return re_ * re_ + im_ * im_; }

  friend ComplexField operator+(const ComplexField& a, const ComplexField& b);
  friend ComplexField operator-(const ComplexField& a, const ComplexField& b);
  friend ComplexField operator*(const ComplexField& a, const ComplexField& b);
  friend ComplexField operator/(const ComplexField& a, const ComplexField& b);
  friend ComplexField operator-(const ComplexField& a) { return {-a.re_, -a.im_}; }
  friend ComplexField operator*(const ComplexField& a, const ScalarField& b);
  friend ComplexField operator*(const ScalarField& a, const ComplexField& b) { return b * a; }
  friend ComplexField operator/(const ComplexField& a, const ScalarField& b);
  friend ComplexField operator*(const ComplexField& a, Complex c);
  friend ComplexField operator*(Complex c, const ComplexField& a) { return a * c; }
  friend ComplexField operator+(const ComplexField& a, Complex c);
  friend ComplexField operator-(const ComplexField& a, Complex c) { return a + (-c); }

 private:
  ScalarField re_, im_;
};

}  // namespace criccati
