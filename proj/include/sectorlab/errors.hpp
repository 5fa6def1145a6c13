#pragma once

#include <stdexcept>
#include <string>

namespace sectorlab {

/// Argument outside the mathematical domain of an operation (negative radius,
/// point outside the sector, empty sample, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A weight evaluator returned a non-positive value.
class InvalidWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation needs data the caller did not supply (e.g. a certificate).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function evaluation produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The function has infinite weighted norm, i.e. it is not an element of X.
class NotInSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Witness construction failed because the annuli series diverges.
class WitnessInvalidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sectorlab
