#include "vacuum/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "vacuum/error.hpp"

namespace vacuum {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorKind::config_error,
         "'" + std::string(key) + "' expects a number, got '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, std::string_view key) {
  s = trim(s);
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorKind::config_error,
         "'" + std::string(key) + "' expects an integer, got '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s, std::string_view key) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(ErrorKind::config_error,
       "'" + std::string(key) + "' expects true or false, got '" + std::string(s) + "'");
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view s, std::string_view key, Parse parse) {
  std::vector<T> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse(s.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T, class Format>
std::string format_list(const std::vector<T>& v, Format format) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format(v[i]);
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class Member>
Field real_field(std::string section, std::string key, Member member) {
  const std::string name = section + "." + key;
  return {section, key,
          [member](const RunConfig& c) { return format_double(member(c)); },
          [member, name](RunConfig& c, std::string_view v) { member(c) = parse_double(v, name); }};
}

template <class Member>
Field int_field(std::string section, std::string key, Member member) {
  const std::string name = section + "." + key;
  return {section, key,
          [member](const RunConfig& c) { return std::to_string(member(c)); },
          [member, name](RunConfig& c, std::string_view v) { member(c) = parse_int(v, name); }};
}

template <class Member>
Field bool_field(std::string section, std::string key, Member member) {
  const std::string name = section + "." + key;
  return {section, key,
          [member](const RunConfig& c) {
            return std::string(member(c) ? "true" : "false");
          },
          [member, name](RunConfig& c, std::string_view v) { member(c) = parse_bool(v, name); }};
}

template <class Member>
Field string_field(std::string section, std::string key, Member member) {
  return {section, key,
          [member](const RunConfig& c) { return member(c); },
          [member](RunConfig& c, std::string_view v) { member(c) = std::string(trim(v)); }};
}

template <class Member>
Field real_list_field(std::string section, std::string key, Member member) {
  const std::string name = section + "." + key;
  return {section, key,
          [member](const RunConfig& c) {
            return format_list(member(c), format_double);
          },
          [member, name](RunConfig& c, std::string_view v) {
            member(c) = parse_list<double>(v, name, parse_double);
          }};
}

template <class Member>
Field int_list_field(std::string section, std::string key, Member member) {
  const std::string name = section + "." + key;
  return {section, key,
          [member](const RunConfig& c) {
            return format_list(member(c),
                               [](int i) { return std::to_string(i); });
          },
          [member, name](RunConfig& c, std::string_view v) {
            member(c) = parse_list<int>(v, name, parse_int);
          }};
}

// Accessor usable on both const and mutable configs.
#define VACUUM_MEMBER(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real_field("gas", "gamma", VACUUM_MEMBER(sim.params.gamma)));
    f.push_back(real_field("gas", "lambda", VACUUM_MEMBER(sim.params.lambda)));
    f.push_back(real_field("gas", "mu", VACUUM_MEMBER(sim.params.mu)));
    f.push_back({"gas", "delta",
                 [](const RunConfig& c) {
                   return c.delta ? format_double(*c.delta) : std::string("auto");
                 },
                 [](RunConfig& c, std::string_view v) {
                   if (trim(v) == "auto")
                     c.delta.reset();
                   else
                     c.delta = parse_double(v, "gas.delta");
                 }});
    f.push_back(real_field("gas", "mass", VACUUM_MEMBER(sim.mass)));
    f.push_back(int_field("grid", "n_cells", VACUUM_MEMBER(sim.n_cells)));
    f.push_back(real_field("grid", "cfl", VACUUM_MEMBER(sim.cfl)));
    f.push_back(real_field("grid", "max_dt", VACUUM_MEMBER(sim.max_dt)));
    f.push_back(real_field("run", "t_end", VACUUM_MEMBER(sim.t_end)));
    f.push_back(string_field("run", "preset", VACUUM_MEMBER(sim.preset)));
    f.push_back(real_field("run", "amplitude", VACUUM_MEMBER(sim.amplitude)));
    f.push_back(real_field("run", "ode_tol", VACUUM_MEMBER(sim.ode_tol)));
    f.push_back(int_field("run", "samples", VACUUM_MEMBER(sim.samples)));
    f.push_back(int_field("run", "snapshots", VACUUM_MEMBER(sim.snapshots)));
    f.push_back(bool_field("run", "frozen_correction", VACUUM_MEMBER(sim.frozen_correction)));
    f.push_back(int_field("energy", "j_max", VACUUM_MEMBER(sim.energy.j_max)));
    f.push_back(int_field("energy", "i_max", VACUUM_MEMBER(sim.energy.i_max)));
    f.push_back(bool_field("energy", "use_j3_fd", VACUUM_MEMBER(sim.energy.use_j3_fd)));
    f.push_back(real_field("fit", "t_lo", VACUUM_MEMBER(fit.t_lo)));
    f.push_back(real_field("fit", "t_hi", VACUUM_MEMBER(fit.t_hi)));
    f.push_back(real_field("correction", "t_end", VACUUM_MEMBER(correction_t_end)));
    f.push_back(int_field("correction", "k_max", VACUUM_MEMBER(correction_k_max)));
    f.push_back(int_list_field("refine", "n_list", VACUUM_MEMBER(refine_n)));
    f.push_back(real_field("refine", "t_probe", VACUUM_MEMBER(refine_t_probe)));
    f.push_back(real_list_field("sweep", "gamma", VACUUM_MEMBER(sweep_gamma)));
    f.push_back(real_list_field("sweep", "lambda", VACUUM_MEMBER(sweep_lambda)));
    f.push_back(real_list_field("sweep", "mu", VACUUM_MEMBER(sweep_mu)));
    f.push_back(int_field("sweep", "threads", VACUUM_MEMBER(sweep_threads)));
    f.push_back(int_list_field("hardy", "n_list", VACUUM_MEMBER(hardy_n)));
    f.push_back(real_list_field("hardy", "theta", VACUUM_MEMBER(hardy_theta)));
    f.push_back(real_list_field("barenblatt", "times", VACUUM_MEMBER(barenblatt_times)));
    f.push_back(int_field("barenblatt", "points", VACUUM_MEMBER(barenblatt_points)));
    f.push_back(string_field("output", "dir", VACUUM_MEMBER(output_dir)));
    return f;
  }();
  return table;
}

#undef VACUUM_MEMBER

const Field& find_field(std::string_view section, std::string_view key) {
  for (const auto& f : fields())
    if (f.section == section && f.key == key) return f;
  fail(ErrorKind::config_error,
       "unknown configuration key '" + std::string(section) + "." + std::string(key) + "'");
}

std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' || line[i] == ';') {
      if (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t') return line.substr(0, i);
    }
  }
  return line;
}

void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) fail(kind, message);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": bad section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty())
      fail(ErrorKind::config_error,
           "line " + std::to_string(line_no) + ": key outside of any section");
    find_field(section, trim(line.substr(0, eq))).set(config, line.substr(eq + 1));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    fail(ErrorKind::config_error,
         "override '" + std::string(assignment) + "' must look like section.key=value");
  const std::string_view name = trim(assignment.substr(0, eq));
  const auto dot = name.find('.');
  if (dot == std::string_view::npos)
    fail(ErrorKind::config_error,
         "override key '" + std::string(name) + "' must be written section.key");
  find_field(name.substr(0, dot), name.substr(dot + 1)).set(config, assignment.substr(eq + 1));
}

void validate_config(RunConfig& config) {
  auto& sim = config.sim;
  GasParameters& p = sim.params;
  p.delta = config.delta ? *config.delta : 0.5 * p.delta_upper_bound();
  validate(p);
  const auto invalid = ErrorKind::invalid_parameters;
  require(sim.mass > 0.0 && std::isfinite(sim.mass), invalid, "gas.mass must be positive");
  require(sim.n_cells >= 8 && sim.n_cells % 2 == 0, ErrorKind::invalid_grid,
          "grid.n_cells must be even and at least 8");
  require(sim.cfl > 0.0 && sim.cfl <= 1.0, invalid, "grid.cfl must lie in (0, 1]");
  require(sim.max_dt > 0.0, invalid, "grid.max_dt must be positive");
  require(sim.t_end > 0.0 && std::isfinite(sim.t_end), invalid, "run.t_end must be positive");
  parse_preset(sim.preset);
  require(std::isfinite(sim.amplitude), invalid, "run.amplitude must be finite");
  require(sim.ode_tol > 0.0 && sim.ode_tol < 1e-3, invalid, "run.ode_tol must lie in (0, 1e-3)");
  require(sim.samples >= 1, invalid, "run.samples must be at least 1");
  require(sim.snapshots >= 0, invalid, "run.snapshots must be non-negative");
  require(sim.energy.j_max >= 0 && sim.energy.j_max <= 2, invalid, "energy.j_max must be 0, 1 or 2");
  require(sim.energy.i_max >= 0 && sim.energy.i_max <= 2, invalid, "energy.i_max must be 0, 1 or 2");
  sim.energy.m_paper = p.derivative_count();
  require(config.fit.t_lo > 0.0 && config.fit.t_hi >= 10.0 * config.fit.t_lo, invalid,
          "fit window must be positive and span at least one decade");
  require(config.correction_t_end > 0.0, invalid, "correction.t_end must be positive");
  require(config.correction_k_max >= 0 && config.correction_k_max <= kMaxAnsatzOrder, invalid,
          "correction.k_max must lie in [0, 4]");
  require(config.refine_n.size() >= 3, invalid, "refine.n_list needs at least three grids");
  for (std::size_t i = 0; i < config.refine_n.size(); ++i) {
    const int n = config.refine_n[i];
    require(n >= 8 && n % 2 == 0, ErrorKind::invalid_grid, "refine.n_list entries must be even and >= 8");
    if (i >= 2)
      require(n * config.refine_n[i - 2] == config.refine_n[i - 1] * config.refine_n[i - 1] &&
                  n % config.refine_n[i - 1] == 0,
              ErrorKind::invalid_grid, "refine.n_list must grow by a constant integer ratio");
  }
  require(config.refine_t_probe > 0.0, invalid, "refine.t_probe must be positive");
  require(!config.sweep_gamma.empty() && !config.sweep_lambda.empty() && !config.sweep_mu.empty(),
          invalid, "sweep lists must not be empty");
  require(config.sweep_threads >= 0, invalid, "sweep.threads must be non-negative");
  require(!config.hardy_n.empty(), invalid, "hardy.n_list must not be empty");
  for (int n : config.hardy_n)
    require(n >= 8 && n % 2 == 0, ErrorKind::invalid_grid, "hardy.n_list entries must be even and >= 8");
  for (double th : config.hardy_theta)
    require(th > 1.0, ErrorKind::invalid_theta, "hardy.theta entries must exceed 1");
  require(!config.barenblatt_times.empty(), invalid, "barenblatt.times must not be empty");
  for (double t : config.barenblatt_times)
    require(t >= 0.0 && std::isfinite(t), invalid, "barenblatt.times must be non-negative");
  require(config.barenblatt_points >= 2, invalid, "barenblatt.points must be at least 2");
  require(!config.output_dir.empty(), ErrorKind::config_error, "output.dir must not be empty");
}

std::uint64_t config_hash(const RunConfig& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_config(config)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash_hex(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  return buf;
}

}  // namespace vacuum
