#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vacuum/barenblatt.hpp"
#include "vacuum/config.hpp"
#include "vacuum/error.hpp"
#include "vacuum/metrics.hpp"

namespace vacuum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitMapDegenerate = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorKind kind);

struct CommandOutcome {
  int exit_code = kExitOk;
  std::string summary;  // one human-readable line
};

// Every command expects a validated config and writes into `out`, which is
// created if missing. Each emitted file starts with "config_hash=<hex>" and
// "command=<name>" header lines (CSV comments or JSON fields).
CommandOutcome cmd_barenblatt(const RunConfig& config, const std::filesystem::path& out);
CommandOutcome cmd_correction(const RunConfig& config, const std::filesystem::path& out);
// Exit code 3 when the run ends with map degeneracy or CFL underflow; the
// outputs up to that time are still written.
CommandOutcome cmd_simulate(const RunConfig& config, const std::filesystem::path& out);
CommandOutcome cmd_refine(const RunConfig& config, const std::filesystem::path& out);
// One simulate run per (gamma, lambda, mu) cell in out/cell_NNN, in parallel.
// A failing cell is recorded in the aggregate and does not stop the others.
CommandOutcome cmd_sweep(const RunConfig& config, const std::filesystem::path& out);
// Re-fits rates from the summary.csv and diagnostics.csv of a finished
// simulate run in `input`.
CommandOutcome cmd_rates(const RunConfig& config, const std::filesystem::path& input,
                         const std::filesystem::path& out);
CommandOutcome cmd_hardy(const RunConfig& config, const std::filesystem::path& out);

// Dispatch by name with exceptions mapped to exit codes. `input` is only
// used by "rates" (defaults to `out`).
CommandOutcome run_command(std::string_view name, RunConfig config,
                           const std::filesystem::path& out,
                           const std::filesystem::path& input = {});

// Hardy ratio of one test function at one exponent across grids.
struct HardySeries {
  std::string function;  // "one" or "cos"
  double theta = 0.0;
  std::vector<int> n_cells;
  std::vector<HardyResult> results;
  double variation = 0.0;  // (max - min) / min of the ratios
};

// Test functions F = 1 and F = cos(pi x / (2L)); an empty theta list means
// {1.5, 2, alpha+1, alpha+2}.
std::vector<HardySeries> hardy_study(const GasParameters& params,
                                     const BarenblattProfile& profile,
                                     const std::vector<int>& n_cells,
                                     std::vector<double> thetas);

}  // namespace vacuum
