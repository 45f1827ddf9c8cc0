#pragma once

#include <stdexcept>
#include <string>

namespace vacuum {

// Every failure the library raises carries one of these kinds so drivers can
// map it onto an exit code without string matching.
enum class ErrorKind {
  invalid_parameters,
  domain_error,
  step_size_underflow,
  pattern_not_found,
  insufficient_span,
  invalid_grid,
  map_degenerate,
  cfl_underflow,
  unknown_preset,
  history_too_short,
  invalid_theta,
  insufficient_samples,
  all_nonpositive,
  config_error,
  io_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the solver when the Lagrangian map stops being a diffeomorphism.
class MapDegenerate : public Error {
 public:
  MapDegenerate(double t, double eta_x_min, const std::string& where)
      : Error(ErrorKind::map_degenerate,
              where + " at t=" + std::to_string(t) +
                  " (min eta_x=" + std::to_string(eta_x_min) + ")"),
        time_(t),
        eta_x_min_(eta_x_min) {}

  double time() const noexcept { return time_; }
  double eta_x_min() const noexcept { return eta_x_min_; }

 private:
  double time_;
  double eta_x_min_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace vacuum
