#pragma once

#include <stdexcept>
#include <string>

namespace magnomech {

// Base class for every failure raised by the library. The CLI maps each
// derived type to its own exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter set, override, or sweep description.
class ConfigError : public Error {
public:
  using Error::Error;
};

class InvalidSpec : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class UnknownFigure : public ConfigError {
public:
  explicit UnknownFigure(const std::string& id)
      : ConfigError("unknown figure id '" + id + "'") {}
};

// Drift matrix has an eigenvalue with non-negative real part: no steady state.
// branch is +1 / -1 when raised from the +|dB| / -|dB| leg of a paired
// evaluation, 0 otherwise.
class Unstable : public Error {
public:
  explicit Unstable(double margin, int branch = 0)
      : Error(message(margin, branch)), margin_(margin), branch_(branch) {}

  double margin() const noexcept { return margin_; }
  int branch() const noexcept { return branch_; }

private:
  static std::string message(double margin, int branch) {
    std::string msg = "drift matrix is unstable (margin " + std::to_string(margin) + ")";
    if (branch > 0) msg += " on the +|delta_B| branch";
    if (branch < 0) msg += " on the -|delta_B| branch";
    return msg;
  }

  double margin_;
  int branch_;
};

class NonConvergence : public Error {
public:
  explicit NonConvergence(int iterations)
      : Error("steady-state fixed point did not converge after " +
              std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  int iterations() const noexcept { return iterations_; }

private:
  int iterations_;
};

class EigenFailure : public Error {
public:
  using Error::Error;
};

class SingularSystem : public Error {
public:
  using Error::Error;
};

// Covariance matrix violates the uncertainty relation.
class Unphysical : public Error {
public:
  using Error::Error;
};

// The two symplectic-eigenvalue routes disagree beyond tolerance.
class RouteMismatch : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace magnomech
