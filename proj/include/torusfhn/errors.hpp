#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace torusfhn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State vector length does not match the lattice it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidModeError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// No sign change of the Hopf residual inside the requested bracket.
class NoBoundaryError : public Error {
 public:
  using Error::Error;
};

/// Real part crosses zero with a vanishing imaginary part (steady-state, not Hopf).
class DegenerateCrossingError : public Error {
 public:
  using Error::Error;
};

class NotAtHopfError : public Error {
 public:
  using Error::Error;
};

class TransformUndefinedError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(double t, const std::string& what) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Signal too short, not oscillating, or two signals without a common frequency.
class SignalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what) : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class TrajectoryFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace torusfhn
