#include "vacuum/gas_parameters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vacuum/error.hpp"

namespace vacuum {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameters: return "InvalidParameters";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::step_size_underflow: return "StepSizeUnderflow";
    case ErrorKind::pattern_not_found: return "PatternNotFound";
    case ErrorKind::insufficient_span: return "InsufficientSpan";
    case ErrorKind::invalid_grid: return "InvalidGrid";
    case ErrorKind::map_degenerate: return "MapDegenerate";
    case ErrorKind::cfl_underflow: return "CflUnderflow";
    case ErrorKind::unknown_preset: return "UnknownPreset";
    case ErrorKind::history_too_short: return "HistoryTooShort";
    case ErrorKind::invalid_theta: return "InvalidTheta";
    case ErrorKind::insufficient_samples: return "InsufficientSamples";
    case ErrorKind::all_nonpositive: return "AllNonpositive";
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::io_error: return "IoError";
  }
  return "Unknown";
}

bool GasParameters::global_existence_regime() const {
  if (lambda < 1.0) return lambda > 0.0 && mu > 0.0;
  return lambda == 1.0 && mu > 2.0;
}

double GasParameters::damping(double t) const {
  return mu / std::pow(1.0 + t, lambda);
}

int GasParameters::derivative_count() const {
  const int base = 4 + static_cast<int>(std::floor(alpha()));
  if (lambda_below_one()) return base;
  return std::min(base, static_cast<int>(std::floor(mu + 2.0 / (gamma + 1.0))));
}

GasParameters make_parameters(double gamma, double lambda, double mu,
                              std::optional<double> delta) {
  GasParameters p;
  p.gamma = gamma;
  p.lambda = lambda;
  p.mu = mu;
  p.delta = delta.value_or(0.5 * p.delta_upper_bound());
  validate(p);
  return p;
}

void validate(const GasParameters& p) {
  if (!std::isfinite(p.gamma) || !(p.gamma > 1.0))
    fail(ErrorKind::invalid_parameters,
         "gamma must exceed 1, got " + std::to_string(p.gamma));
  if (!std::isfinite(p.mu) || !(p.mu > 0.0))
    fail(ErrorKind::invalid_parameters,
         "mu must be positive, got " + std::to_string(p.mu));
  if (!(p.lambda > 0.0 && p.lambda <= 1.0))
    fail(ErrorKind::invalid_parameters,
         "lambda must lie in (0, 1], got " + std::to_string(p.lambda));
  if (!(p.delta > 0.0 && p.delta < p.delta_upper_bound()))
    fail(ErrorKind::invalid_parameters,
         "delta must lie in (0, " + std::to_string(p.delta_upper_bound()) +
             "), got " + std::to_string(p.delta));
}

}  // namespace vacuum
