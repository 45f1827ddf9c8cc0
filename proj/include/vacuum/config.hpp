#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vacuum/rates.hpp"
#include "vacuum/simulation.hpp"

namespace vacuum {

// Everything one CLI invocation needs. Text form:
//
//   [gas]
//   gamma = 1.5
//   delta = auto        # midpoint of the admissible interval
//   [run]
//   t_end = 1000
//
// Keys are addressed as section.key by overrides. Unknown sections or keys
// are errors.
struct RunConfig {
  SimulationConfig sim;
  std::optional<double> delta;  // nullopt: midpoint default
  FitWindow fit{10.0, 1000.0};

  double correction_t_end = 1e6;
  int correction_k_max = 3;

  std::vector<int> refine_n{100, 200, 400, 800};
  double refine_t_probe = 1.0;

  std::vector<double> sweep_gamma{1.5};
  std::vector<double> sweep_lambda{0.5};
  std::vector<double> sweep_mu{1.0};
  int sweep_threads = 0;  // 0: hardware concurrency

  std::vector<int> hardy_n{100, 200, 400, 800, 1600};
  std::vector<double> hardy_theta;  // empty: 1.5, 2, alpha+1, alpha+2

  std::vector<double> barenblatt_times{0.0, 1.0, 10.0, 100.0};
  int barenblatt_points = 201;

  std::string output_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

// Reads the text form on top of the defaults. ConfigError on syntax errors,
// unknown keys and values that do not parse; semantic checks are left to
// validate_config.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Canonical text: every key, fixed order, shortest round-trip numbers.
std::string serialize_config(const RunConfig& config);

// Applies "section.key=value"; ConfigError if malformed or unknown.
void apply_override(RunConfig& config, std::string_view assignment);

// Resolves delta and checks every field; Error(invalid_parameters or
// config_error) on the first violation.
void validate_config(RunConfig& config);

// FNV-1a 64 of the canonical text.
std::uint64_t config_hash(const RunConfig& config);
std::string config_hash_hex(const RunConfig& config);

}  // namespace vacuum
