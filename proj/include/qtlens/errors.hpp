#pragma once

#include <stdexcept>
#include <string>

namespace qtlens {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// More logical qubits than the target or simulator can hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Parameter vector length does not match the circuit's parameter count.
class BindingError : public Error {
 public:
  using Error::Error;
};

class TranslationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedGeneratorError : public Error {
 public:
  using Error::Error;
};

class ConfigMismatchError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, parsed or validated. The message carries the
/// offending path and field.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtlens
