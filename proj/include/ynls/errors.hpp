#pragma once

#include <stdexcept>
#include <string>

namespace ynls {

/// Rejected configuration (parameter constraints, caps, table coverage).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Blow-up, non-finite values or a Picard iteration that did not converge.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, long step = -1, double last_residual = -1.0)
      : std::runtime_error(what), step_(step), last_residual_(last_residual) {}
  long step() const { return step_; }
  double last_residual() const { return last_residual_; }

 private:
  long step_;
  double last_residual_;
};

}  // namespace ynls
