#pragma once

#include <stdexcept>
#include <string>

namespace criccati {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the rectangle a field or contour is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quotient denominator fell below the singularity guard.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A grid is too coarse for the requested stencil.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A field that must be nonvanishing has a (near) zero on its sample set.
class ZeroSetError : public Error {
 public:
  ZeroSetError(const std::string& what, double x, double y, double value)
      : Error(what), x_(x), y_(y), value_(value) {}
  double x() const { return x_; }
  double y() const { return y_; }
  double value() const { return value_; }

 private:
  double x_, y_, value_;
};

/// The compatibility condition needed for a path-independent antiderivative
/// is violated.
class CompatibilityError : public Error {
 public:
  CompatibilityError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// An input does not satisfy the equation a theorem assumes it solves.
class NotASolutionError : public Error {
 public:
  NotASolutionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Two inputs of the Picard identity coincide somewhere on the sample set.
class DegeneratePairError : public Error {
 public:
  DegeneratePairError(const std::string& what, int i, int j)
      : Error(what), first_(i), second_(j) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_, second_;
};

class ContourError : public Error {
 public:
  using Error::Error;
};

/// Bad constructor or factory arguments.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (expressions, configs, CSV). `line` is 1-based, 0
/// when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A syntactically valid configuration that fails validation. `field` names
/// the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace criccati
