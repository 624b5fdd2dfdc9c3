#pragma once

#include <stdexcept>
#include <string>

namespace gqtoda {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Möbius shift x/(1 - k eps x) hit (or came within the guard band of) its pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of log, 1/x, or a positivity requirement.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vanishing denominator P(p_i + p_j) (or of the triple coefficient).
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// Operator composition exceeded the configured band.
class BandOverflowError : public Error {
 public:
  using Error::Error;
};

/// An algebraic identity that must hold failed beyond tolerance (signals a bug).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state or stability bound violated during time stepping.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gqtoda
