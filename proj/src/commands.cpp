#include "vacuum/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "vacuum/correction.hpp"
#include "vacuum/csv.hpp"
#include "vacuum/reports.hpp"
#include "vacuum/simulation.hpp"

namespace vacuum {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> header_lines(const RunConfig& config, std::string_view command) {
  return {"config_hash=" + config_hash_hex(config), "command=" + std::string(command)};
}

Json json_header(const RunConfig& config, std::string_view command) {
  Json j;
  j["config_hash"] = config_hash_hex(config);
  j["command"] = std::string(command);
  return j;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json to_json(const BarenblattProfile& p) {
  return Json{{"A", p.A}, {"B", p.B}, {"L", p.L}, {"mass", p.mass},
              {"normalization", p.normalization}};
}

Json to_json(const GasParameters& p) {
  return Json{{"gamma", p.gamma},
              {"lambda", p.lambda},
              {"mu", p.mu},
              {"delta", p.delta},
              {"alpha", p.alpha()},
              {"expansion_exponent", p.expansion_exponent()},
              {"global_existence_regime", p.global_existence_regime()},
              {"derivative_count", p.derivative_count()}};
}

Json to_json(const RateComparison& r) {
  Json j{{"quantity", r.quantity},
         {"fitted", r.fitted},
         {"exponent", r.fit.exponent},
         {"predicted", r.predicted},
         {"predicted_delta0", r.predicted_delta0},
         {"deviation", r.deviation},
         {"tolerance", r.tolerance},
         {"two_sided", r.two_sided},
         {"pass", r.pass},
         {"pass_delta0", r.pass_delta0},
         {"r2", r.fit.r2},
         {"exponent_stderr", r.fit.exponent_stderr},
         {"samples_used", r.fit.samples_used},
         {"samples_excluded", r.fit.samples_excluded}};
  if (!r.fitted) j["fit_error"] = r.fit_error;
  return j;
}

Json to_json(const RateTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  return Json{{"window", {t.window.t_lo, t.window.t_hi}}, {"all_pass", t.all_pass()},
              {"rows", rows}};
}

Json to_json(const EnergyDecayReport& e) {
  Json rows = Json::array();
  for (const auto& b : e.boundedness) {
    rows.push_back(Json{{"quantity", b.quantity},
                        {"reference", b.reference},
                        {"sup_ratio", b.sup_ratio},
                        {"sup_ratio_before_final_decade", b.sup_ratio_before_final_decade},
                        {"drift", b.drift},
                        {"finite", b.finite},
                        {"pass", b.pass}});
  }
  return Json{{"drift_tolerance", e.drift_tolerance},
              {"all_bounded", e.all_bounded()},
              {"boundedness", rows},
              {"embedding_ratio", e.embedding_ratio},
              {"decay", to_json(e.decay)}};
}

Json to_json(const PhasePlaneReport& p) {
  return Json{{"found", p.found},
              {"reason", p.reason},
              {"t0", p.t0},
              {"t1", p.t1},
              {"t2", p.t2},
              {"interval_pass", {p.interval_pass[0], p.interval_pass[1], p.interval_pass[2],
                                 p.interval_pass[3]}},
              {"all_intervals_pass", p.all_intervals_pass()}};
}

void write_rates_csv(const fs::path& path, const RunConfig& config, std::string_view command,
                     const RateTable& theorem2, const RateTable& decay) {
  CsvWriter csv(path, header_lines(config, command),
                {"quantity", "fitted", "exponent", "predicted", "predicted_delta0", "tolerance",
                 "two_sided", "pass", "pass_delta0", "r2", "exponent_stderr", "samples_used"});
  for (const RateTable* table : {&theorem2, &decay}) {
    for (const auto& r : table->rows) {
      csv.row(std::vector<std::string>{
          r.quantity, r.fitted ? "1" : "0", format_number(r.fit.exponent),
          format_number(r.predicted), format_number(r.predicted_delta0),
          format_number(r.tolerance), r.two_sided ? "1" : "0", r.pass ? "1" : "0",
          r.pass_delta0 ? "1" : "0", format_number(r.fit.r2),
          format_number(r.fit.exponent_stderr), std::to_string(r.fit.samples_used)});
    }
  }
  csv.close();
}

double energy_or_nan(const EnergyReport& e, std::size_t j) {
  return j < e.E.size() ? e.E[j] : std::numeric_limits<double>::quiet_NaN();
}

const std::vector<std::string> kSummaryColumns{"t",    "E0",     "E1",      "E2",
                                               "sup_w", "sup_wt", "x_minus", "x_plus",
                                               "mass", "eta_x_min", "dt"};
const std::vector<std::string> kDiagnosticColumns{
    "t",          "h",          "eta_tilde_x", "sup_density_difference",
    "sup_velocity_difference", "dx_plus_1", "dx_plus_2", "dx_plus_3",
    "sup_wtt",    "sup_wttt",   "total_energy", "weighted_sup_total"};

struct SimulationArtifacts {
  SimulationResult result;
  RateTable theorem2;
  EnergyDecayReport energy;
  CommandOutcome outcome;
};

SimulationArtifacts simulate_into(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  SimulationArtifacts a;
  a.result = run_simulation(config.sim);
  const SimulationResult& r = a.result;
  a.theorem2 = theorem2_report(r, config.fit);
  a.energy = energy_decay_report(r, config.fit);

  const auto header = header_lines(config, "simulate");
  {
    CsvWriter csv(out / "summary.csv", header, kSummaryColumns);
    for (const auto& s : r.samples) {
      const auto& e = s.energy;
      csv.row(std::vector<double>{s.t, energy_or_nan(e, 0), energy_or_nan(e, 1),
                                  energy_or_nan(e, 2), e.sup_w, e.sup_wt, e.x_minus, e.x_plus,
                                  e.mass, e.eta_x_min, s.dt});
    }
    csv.close();
  }
  {
    std::vector<std::string> h = header;
    const GasParameters& p = config.sim.params;
    h.push_back("gamma=" + format_number(p.gamma));
    h.push_back("lambda=" + format_number(p.lambda));
    h.push_back("mu=" + format_number(p.mu));
    h.push_back("delta=" + format_number(p.delta));
    CsvWriter csv(out / "diagnostics.csv", h, kDiagnosticColumns);
    for (const auto& s : r.samples) {
      const auto& e = s.energy;
      csv.row(std::vector<double>{s.t, s.h, s.eta_tilde_x, s.sup_density_difference,
                                  s.sup_velocity_difference, s.boundary[1], s.boundary[2],
                                  s.boundary[3], e.sup_wtt, e.sup_wttt, e.total_energy,
                                  e.sup.total});
    }
    csv.close();
  }
  if (!r.snapshots.empty()) {
    fs::create_directories(out / "snapshots");
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
      const Snapshot& snap = r.snapshots[k];
      const EulerianSnapshot& e = snap.eulerian;
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
      std::vector<std::string> h = header;
      h.push_back("t=" + format_number(e.t));
      CsvWriter csv(out / "snapshots" / name, h,
                    {"x", "w", "w_t", "rho", "u", "rho_bar", "u_bar", "rho_minus_rho_bar",
                     "u_minus_u_bar"});
      for (std::size_t i = 0; i < e.x.size(); ++i) {
        csv.row(std::vector<double>{e.x[i], snap.w[i], snap.w_t[i], e.density[i],
                                    e.velocity[i], e.barenblatt_density[i],
                                    e.barenblatt_velocity[i], e.density_difference[i],
                                    e.velocity_difference[i]});
      }
      csv.close();
    }
  }
  write_rates_csv(out / "rates.csv", config, "simulate", a.theorem2, a.energy.decay);

  a.outcome.exit_code = r.completed() ? kExitOk : kExitMapDegenerate;
  Json j = json_header(config, "simulate");
  j["status"] = to_string(r.status);
  j["exit_code"] = a.outcome.exit_code;
  j["terminal_time"] = r.terminal_time;
  j["terminal_eta_x_min"] = r.terminal_eta_x_min;
  j["terminal_message"] = r.terminal_message;
  j["steps"] = r.final_state.step_count;
  j["parameters"] = to_json(config.sim.params);
  j["profile"] = to_json(r.profile);
  j["theorem2"] = to_json(a.theorem2);
  j["energy_decay"] = to_json(a.energy);
  j["config"] = serialize_config(config);
  write_json(out / "report.json", j);

  char line[256];
  std::snprintf(line, sizeof line, "simulate: %s at t=%.6g after %ld steps", to_string(r.status),
                r.terminal_time, r.final_state.step_count);
  a.outcome.summary = line;
  return a;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameters:
    case ErrorKind::domain_error:
    case ErrorKind::insufficient_span:
    case ErrorKind::invalid_grid:
    case ErrorKind::unknown_preset:
    case ErrorKind::invalid_theta:
    case ErrorKind::insufficient_samples:
    case ErrorKind::all_nonpositive:
    case ErrorKind::config_error:
      return kExitValidation;
    case ErrorKind::map_degenerate:
    case ErrorKind::cfl_underflow:
      return kExitMapDegenerate;
    case ErrorKind::io_error:
      return kExitIo;
    case ErrorKind::step_size_underflow:
    case ErrorKind::pattern_not_found:
    case ErrorKind::history_too_short:
      return kExitInternal;
  }
  return kExitInternal;
}

CommandOutcome cmd_barenblatt(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const GasParameters& p = config.sim.params;
  const BarenblattProfile profile = derive_profile(p, config.sim.mass);
  const auto header = header_lines(config, "barenblatt");

  CsvWriter table(out / "barenblatt.csv", header, {"t", "x", "rho_bar", "u_bar"});
  CsvWriter summary(out / "barenblatt_summary.csv", header, {"t", "mass", "x_minus", "x_plus"});
  const int n = config.barenblatt_points;
  for (double t : config.barenblatt_times) {
    const auto [lo, hi] = barenblatt_boundary(profile, p, t);
    for (int i = 0; i < n; ++i) {
      const double x = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
      table.row(std::vector<double>{t, x, barenblatt_density_clamped(profile, p, x, t),
                                    barenblatt_velocity(p, x, t)});
    }
    summary.row(std::vector<double>{t, barenblatt_mass(profile, p, t), lo, hi});
  }
  table.close();
  summary.close();

  Json j = json_header(config, "barenblatt");
  j["parameters"] = to_json(p);
  j["profile"] = to_json(profile);
  write_json(out / "profile.json", j);
  return {kExitOk, "barenblatt: A=" + format_number(profile.A) + " B=" + format_number(profile.B) +
                       " L=" + format_number(profile.L)};
}

CommandOutcome cmd_correction(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const GasParameters& p = config.sim.params;
  const int k_max = config.correction_k_max;
  const CorrectionTrajectory traj =
      CorrectionTrajectory::integrate(p, config.correction_t_end, config.sim.ode_tol);
  const auto header = header_lines(config, "correction");

  std::vector<std::string> columns{"t", "h", "h_t", "eta_x"};
  for (int k = 1; k <= k_max; ++k) columns.push_back("d" + std::to_string(k) + "_eta_x");
  {
    CsvWriter csv(out / "correction.csv", header, columns);
    for (double t : log_schedule(config.correction_t_end, 400)) {
      const CorrectionState s = traj.at(t);
      const AnsatzEvaluation a = ansatz_derivatives(traj, t, k_max);
      std::vector<double> row{t, s.h, s.z, a.eta_x};
      for (int k = 1; k <= k_max; ++k) row.push_back(a.derivative(k));
      csv.row(row);
    }
    csv.close();
  }

  const PhasePlaneReport phase = phase_plane_check(traj.nodes());
  const DecayReport decay = verify_decay_rates(traj, k_max);
  {
    CsvWriter csv(out / "decay.csv", header,
                  {"k", "predicted_exponent", "log_branch", "boundary_case", "fitted_exponent",
                   "fit_r2", "sup_ratio", "sup_ratio_early", "inf_ratio"});
    for (const auto& r : decay.rows) {
      csv.row(std::vector<double>{double(r.k), r.predicted_exponent, r.log_branch ? 1.0 : 0.0,
                                  r.boundary_case ? 1.0 : 0.0, r.fitted_exponent, r.fit_r2,
                                  r.sup_ratio, r.sup_ratio_early, r.inf_ratio});
    }
    csv.close();
  }

  double h_min = std::numeric_limits<double>::infinity();
  for (const auto& s : traj.nodes()) h_min = std::min(h_min, s.h);
  Json j = json_header(config, "correction");
  j["parameters"] = to_json(p);
  j["t_end"] = config.correction_t_end;
  j["accepted_steps"] = traj.nodes().size();
  j["h_max"] = traj.h_max();
  j["h_min"] = h_min;
  j["h_end"] = traj.at(config.correction_t_end).h;
  j["phase_plane"] = to_json(phase);
  j["decay_window"] = {decay.fit_t_lo, decay.fit_t_hi};
  write_json(out / "correction_report.json", j);
  return {kExitOk, std::string("correction: phase-plane pattern ") +
                       (phase.found ? "found" : "not found") +
                       ", h_max=" + format_number(traj.h_max())};
}

CommandOutcome cmd_simulate(const RunConfig& config, const fs::path& out) {
  return simulate_into(config, out).outcome;
}

CommandOutcome cmd_refine(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const RefinementReport report = refine(config.sim, config.refine_n, config.refine_t_probe);
  CsvWriter csv(out / "refine.csv", header_lines(config, "refine"),
                {"n_coarse", "diff_l2_coarse", "diff_l2_fine", "order_l2", "diff_max_coarse",
                 "diff_max_fine", "order_max"});
  for (const auto& o : report.orders) {
    csv.row(std::vector<double>{double(o.n_coarse), o.diff_l2_coarse, o.diff_l2_fine,
                                o.order_l2, o.diff_max_coarse, o.diff_max_fine, o.order_max});
  }
  csv.close();
  Json levels = Json::array();
  for (const auto& l : report.levels) levels.push_back({{"n_cells", l.n_cells}, {"steps", l.steps}});
  Json j = json_header(config, "refine");
  j["t_probe"] = report.t_probe;
  j["levels"] = levels;
  j["monotone"] = report.monotone;
  j["min_order_l2"] = report.min_order_l2;
  j["min_order_max"] = report.min_order_max;
  write_json(out / "refine.json", j);
  return {kExitOk, "refine: min observed order " + format_number(report.min_order_l2) +
                       " (L2), " + format_number(report.min_order_max) + " (max)"};
}

CommandOutcome cmd_sweep(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  struct Cell {
    RunConfig config;
    fs::path dir;
    int exit_code = kExitOk;
    std::string message;
    bool ran = false;
    RateTable theorem2;
    EnergyDecayReport energy;
    double terminal_time = 0.0;
    std::string status = "not_run";
  };
  std::vector<Cell> cells;
  for (double g : config.sweep_gamma)
    for (double l : config.sweep_lambda)
      for (double m : config.sweep_mu) {
        Cell c;
        c.config = config;
        c.config.sim.params.gamma = g;
        c.config.sim.params.lambda = l;
        c.config.sim.params.mu = m;
        char name[32];
        std::snprintf(name, sizeof name, "cell_%03zu", cells.size());
        c.dir = out / name;
        cells.push_back(std::move(c));
      }

  const auto run_cell = [](Cell& c) {
    try {
      validate_config(c.config);
      SimulationArtifacts a = simulate_into(c.config, c.dir);
      c.ran = true;
      c.exit_code = a.outcome.exit_code;
      c.message = a.outcome.summary;
      c.status = to_string(a.result.status);
      c.terminal_time = a.result.terminal_time;
      c.theorem2 = std::move(a.theorem2);
      c.energy = std::move(a.energy);
    } catch (const Error& e) {
      c.exit_code = exit_code_for(e.kind());
      c.message = e.what();
      c.status = "error";
    } catch (const std::exception& e) {
      c.exit_code = kExitInternal;
      c.message = e.what();
      c.status = "error";
    }
  };

  unsigned threads = config.sweep_threads > 0 ? unsigned(config.sweep_threads)
                                              : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(cells.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < cells.size(); k = next++) run_cell(cells[k]);
    });
  }
  for (auto& t : pool) t.join();

  const auto exponent = [](const Cell& c, std::string_view q) {
    if (!c.ran) return std::numeric_limits<double>::quiet_NaN();
    const auto& r = c.theorem2.row(q);
    return r.fitted ? r.fit.exponent : std::numeric_limits<double>::quiet_NaN();
  };
  const auto sup_ratio = [](const Cell& c, std::string_view q) {
    return c.ran ? c.energy.row(q).sup_ratio : std::numeric_limits<double>::quiet_NaN();
  };

  CsvWriter csv(out / "sweep.csv", header_lines(config, "sweep"),
                {"cell", "gamma", "lambda", "mu", "status", "exit_code", "terminal_time",
                 "boundary_exponent", "velocity_exponent", "density_exponent",
                 "dx_plus_1_exponent", "dx_plus_2_exponent", "E0_sup_ratio", "E1_sup_ratio"});
  Json rows = Json::array();
  int failures = 0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells[k];
    const GasParameters& p = c.config.sim.params;
    if (c.exit_code != kExitOk) ++failures;
    csv.row(std::vector<std::string>{
        std::to_string(k), format_number(p.gamma), format_number(p.lambda), format_number(p.mu),
        c.status, std::to_string(c.exit_code), format_number(c.terminal_time),
        format_number(exponent(c, "boundary")), format_number(exponent(c, "velocity_difference")),
        format_number(exponent(c, "density_difference")),
        format_number(exponent(c, "boundary_derivative_1")),
        format_number(exponent(c, "boundary_derivative_2")), format_number(sup_ratio(c, "E0")),
        format_number(sup_ratio(c, "E1"))});
    rows.push_back({{"cell", k},
                    {"dir", c.dir.filename().string()},
                    {"gamma", p.gamma},
                    {"lambda", p.lambda},
                    {"mu", p.mu},
                    {"status", c.status},
                    {"exit_code", c.exit_code},
                    {"message", c.message}});
  }
  csv.close();
  Json j = json_header(config, "sweep");
  j["cells"] = rows;
  j["failures"] = failures;
  write_json(out / "sweep.json", j);
  return {kExitOk, "sweep: " + std::to_string(cells.size()) + " cells, " +
                       std::to_string(failures) + " not completed"};
}

CommandOutcome cmd_rates(const RunConfig& config, const fs::path& input, const fs::path& out) {
  fs::create_directories(out);
  const CsvTable summary = read_csv(input / "summary.csv");
  const CsvTable diag = read_csv(input / "diagnostics.csv");
  if (summary.rows.size() != diag.rows.size())
    fail(ErrorKind::io_error, "summary.csv and diagnostics.csv have different lengths");

  // Parameters come from the run being re-fitted, not from the current config.
  SimulationResult run;
  run.config = config.sim;
  GasParameters& p = run.config.params;
  const auto header_number = [&](const std::string& key) {
    const std::string v = diag.header_value(key);
    if (v.empty()) fail(ErrorKind::io_error, "diagnostics.csv lacks the '" + key + "' header");
    return std::stod(v);
  };
  p.gamma = header_number("gamma");
  p.lambda = header_number("lambda");
  p.mu = header_number("mu");
  p.delta = header_number("delta");
  validate(p);

  const auto t = summary.numeric("t");
  const auto E0 = summary.numeric("E0"), E1 = summary.numeric("E1"), E2 = summary.numeric("E2");
  const auto sup_w = summary.numeric("sup_w"), sup_wt = summary.numeric("sup_wt");
  const auto x_plus = summary.numeric("x_plus");
  const auto rho = diag.numeric("sup_density_difference");
  const auto vel = diag.numeric("sup_velocity_difference");
  const auto d1 = diag.numeric("dx_plus_1"), d2 = diag.numeric("dx_plus_2"),
             d3 = diag.numeric("dx_plus_3");
  const auto sup_wtt = diag.numeric("sup_wtt"), sup_wttt = diag.numeric("sup_wttt");
  const auto total = diag.numeric("total_energy"), sup_total = diag.numeric("weighted_sup_total");
  for (std::size_t i = 0; i < t.size(); ++i) {
    SampleRecord s;
    s.t = t[i];
    s.sup_density_difference = rho[i];
    s.sup_velocity_difference = vel[i];
    s.boundary = {x_plus[i], d1[i], d2[i], d3[i]};
    s.energy.t = t[i];
    for (double e : {E0[i], E1[i], E2[i]})
      if (!std::isnan(e)) s.energy.E.push_back(e);
    s.energy.sup_w = sup_w[i];
    s.energy.sup_wt = sup_wt[i];
    s.energy.sup_wtt = sup_wtt[i];
    s.energy.sup_wttt = sup_wttt[i];
    s.energy.total_energy = total[i];
    s.energy.sup.total = sup_total[i];
    run.samples.push_back(std::move(s));
  }

  const RateTable theorem2 = theorem2_report(run, config.fit);
  const EnergyDecayReport energy = energy_decay_report(run, config.fit);
  write_rates_csv(out / "rates.csv", config, "rates", theorem2, energy.decay);
  Json j = json_header(config, "rates");
  j["source_config_hash"] = summary.header_value("config_hash");
  j["theorem2"] = to_json(theorem2);
  j["energy_decay"] = to_json(energy);
  write_json(out / "rates.json", j);
  return {kExitOk, std::string("rates: theorem rows ") + (theorem2.all_pass() ? "pass" : "fail")};
}

std::vector<HardySeries> hardy_study(const GasParameters& params,
                                     const BarenblattProfile& profile,
                                     const std::vector<int>& n_cells,
                                     std::vector<double> thetas) {
  if (thetas.empty()) thetas = {1.5, 2.0, params.alpha() + 1.0, params.alpha() + 2.0};
  std::vector<HardySeries> out;
  for (const std::string function : {"one", "cos"}) {
    for (double theta : thetas) {
      HardySeries s;
      s.function = function;
      s.theta = theta;
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (int n : n_cells) {
        const Grid grid = build_grid(profile, n);
        std::vector<double> F(grid.size(), 1.0);
        if (function == "cos")
          for (std::size_t i = 0; i < F.size(); ++i)
            F[i] = std::cos(0.5 * std::numbers::pi * grid.nodes[i] / profile.L);
        s.n_cells.push_back(n);
        s.results.push_back(hardy_ratio(grid, F, theta));
        lo = std::min(lo, s.results.back().ratio);
        hi = std::max(hi, s.results.back().ratio);
      }
      s.variation = lo > 0.0 ? (hi - lo) / lo : 0.0;
      out.push_back(std::move(s));
    }
  }
  return out;
}

CommandOutcome cmd_hardy(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const GasParameters& p = config.sim.params;
  const BarenblattProfile profile = derive_profile(p, config.sim.mass);
  const auto study = hardy_study(p, profile, config.hardy_n, config.hardy_theta);
  CsvWriter csv(out / "hardy.csv", header_lines(config, "hardy"),
                {"function", "theta", "n_cells", "ratio", "numerator", "denominator",
                 "degenerate"});
  Json series = Json::array();
  double worst = 0.0;
  for (const auto& s : study) {
    for (std::size_t k = 0; k < s.n_cells.size(); ++k) {
      const HardyResult& r = s.results[k];
      csv.row(std::vector<std::string>{s.function, format_number(s.theta),
                                       std::to_string(s.n_cells[k]), format_number(r.ratio),
                                       format_number(r.numerator), format_number(r.denominator),
                                       r.degenerate ? "1" : "0"});
    }
    worst = std::max(worst, s.variation);
    series.push_back({{"function", s.function}, {"theta", s.theta}, {"variation", s.variation}});
  }
  csv.close();
  Json j = json_header(config, "hardy");
  j["series"] = series;
  j["max_variation"] = worst;
  write_json(out / "hardy.json", j);
  return {kExitOk, "hardy: max ratio variation " + format_number(worst)};
}

CommandOutcome run_command(std::string_view name, RunConfig config, const fs::path& out,
                           const fs::path& input) {
  try {
    static constexpr std::string_view kCommands[] = {"barenblatt", "correction", "simulate",
                                                     "refine", "sweep", "rates", "hardy"};
    if (std::find(std::begin(kCommands), std::end(kCommands), name) == std::end(kCommands))
      return {kExitValidation, "unknown command '" + std::string(name) + "'"};
    validate_config(config);
    fs::create_directories(out);
    write_text(out / (std::string(name) + "_config.ini"),
               "# config_hash=" + config_hash_hex(config) + "\n" + serialize_config(config));
    if (name == "barenblatt") return cmd_barenblatt(config, out);
    if (name == "correction") return cmd_correction(config, out);
    if (name == "simulate") return cmd_simulate(config, out);
    if (name == "refine") return cmd_refine(config, out);
    if (name == "sweep") return cmd_sweep(config, out);
    if (name == "rates") return cmd_rates(config, input.empty() ? out : input, out);
    return cmd_hardy(config, out);
  } catch (const Error& e) {
    return {exit_code_for(e.kind()), e.what()};
  } catch (const fs::filesystem_error& e) {
    return {kExitIo, e.what()};
  } catch (const std::exception& e) {
    return {kExitInternal, e.what()};
  }
}

}  // namespace vacuum
