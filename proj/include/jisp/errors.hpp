// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace jisp {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at (or within the guard radius of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative evaluation failed to reach its tolerance within its cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A value left the representable floating-point range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share JacobiParams do not.
class ParamMismatchError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must live on identical grids do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// The spectral mode carries no constraint (lambda^2 + rho^2 + m = 0).
class DegenerateModeError : public Error {
 public:
  using Error::Error;
};

/// A function required to lie in the graph space has a non-finite norm.
class HNormError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jisp
