#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cpcav {

/// Argument outside the domain of a function or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature (or an iterative sum) ran out of budget. Carries the
/// best estimate reached so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  std::complex<double> estimate_;
  double error_;
};

/// Bracketed extremum search found no sign change of the slope.
class ExtremumNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration input. `line` is 1-based, 0 when not applicable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(format(what, line, field)), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& what, int line, const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + what;
  }

  int line_;
  std::string field_;
};

}  // namespace cpcav
