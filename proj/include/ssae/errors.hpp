#pragma once

#include <stdexcept>
#include <string>

namespace ssae {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or numerically at) a pole of Gamma/digamma or of a
/// quantity built from them.
class PoleError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class CouplingOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Declared Frobenius data is inconsistent with the potential.
class SeriesFailure : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

class NoDecaySeparation : public Error {
 public:
  using Error::Error;
};

class ExtrapolationFailure : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (bad flags, malformed JSON, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssae
