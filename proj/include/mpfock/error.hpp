#pragma once

#include <stdexcept>
#include <string>

namespace mpfock {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (see tools/cli.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid truncation or run configuration (dim < 2, margin >= dim, too few
/// quadrature nodes, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or output in a numerical kernel.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the domain of an operation: singular physics parameters
/// (m^2 = eps^2), degenerate vacuum radicand, points outside the unit disk.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The truncated space is too small for the requested state.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what, double tail = 0.0)
      : Error(what), tail_(tail) {}
  double tail_mass() const { return tail_; }

 private:
  double tail_;
};

/// A numerical self-check failed (disentangling oracle, Bogoliubov projection).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpfock
