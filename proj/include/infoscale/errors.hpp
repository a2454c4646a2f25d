#pragma once

#include <stdexcept>
#include <string>

namespace infoscale {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A divergence is not finite because absolute continuity fails.
class DivergenceUndefinedError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structural precondition on a chain or lattice failed (reducible, periodic, too large).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// The cumulant generating function is infinite for every c > 0.
class UnboundedObservableError : public Error {
 public:
  using Error::Error;
};

/// An iterative or quadrature routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The requested model combination has no closed form here.
class UnsupportedCombinationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace infoscale
