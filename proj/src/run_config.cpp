#include "spindyn/run_config.hpp"

#include <cctype>
#include <climits>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "spindyn/common.hpp"
#include "spindyn/eswr.hpp"
#include "spindyn/evolve.hpp"
#include "spindyn/landau_lifshitz.hpp"
#include "spindyn/matrix_rep.hpp"

namespace spindyn {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError("config key '" + key + "': expected " + expected +
                    ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE ||
      !std::isfinite(x)) {
    bad_value(key, value, "a finite number");
  }
  return x;
}

long to_long(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    bad_value(key, value, "an integer");
  }
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  const long x = to_long(key, value);
  if (x < INT_MIN || x > INT_MAX) bad_value(key, value, "an integer");
  return static_cast<int>(x);
}

unsigned long long to_ull(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE ||
      value[0] == '-') {
    bad_value(key, value, "a non-negative integer");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value, "'true' or 'false'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  return parts;
}

std::vector<double> to_double_list(const std::string& key,
                                   const std::string& value) {
  std::vector<double> out;
  for (const std::string& part : split_list(value)) {
    out.push_back(to_double(key, part));
  }
  if (out.empty()) bad_value(key, value, "a comma-separated number list");
  return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const std::string& part : split_list(value)) {
    out.push_back(to_int(key, part));
  }
  if (out.empty()) bad_value(key, value, "a comma-separated integer list");
  return out;
}

Boundary to_chain_boundary(const std::string& key, const std::string& value) {
  if (value == "open") return Boundary::Open;
  if (value == "periodic") return Boundary::Periodic;
  bad_value(key, value, "'open' or 'periodic'");
}

Frame to_frame(const std::string& key, const std::string& value) {
  if (value == "lab") return Frame::Lab;
  if (value == "rotating") return Frame::Rotating;
  bad_value(key, value, "'lab' or 'rotating'");
}

classical::FieldBoundary to_field_boundary(const std::string& key,
                                           const std::string& value) {
  if (value == "pinned") return classical::FieldBoundary::Pinned;
  if (value == "free") return classical::FieldBoundary::Free;
  if (value == "periodic") return classical::FieldBoundary::Periodic;
  bad_value(key, value, "'pinned', 'free' or 'periodic'");
}

const char* chain_boundary_name(Boundary b) {
  return b == Boundary::Open ? "open" : "periodic";
}

const char* frame_name(Frame f) { return f == Frame::Lab ? "lab" : "rotating"; }

const char* field_boundary_name(classical::FieldBoundary b) {
  switch (b) {
    case classical::FieldBoundary::Pinned: return "pinned";
    case classical::FieldBoundary::Free: return "free";
    case classical::FieldBoundary::Periodic: return "periodic";
  }
  return "pinned";
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_full(xs[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

void check_writable_dir(const std::string& key, const std::string& path) {
  if (path.empty()) return;
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw ConfigError("config key '" + key + "': directory '" +
                      parent.string() + "' does not exist");
  }
}

void require_one_of(const std::string& key, const std::string& value,
                    const std::set<std::string>& allowed) {
  if (allowed.count(value)) return;
  std::string expected = "one of {";
  bool first = true;
  for (const std::string& a : allowed) {
    if (!first) expected += ", ";
    expected += a;
    first = false;
  }
  expected += "}";
  bad_value(key, value, expected);
}

RunConfig build_config(std::map<std::string, std::string>& raw) {
  RunConfig c;
  auto take = [&raw](const char* key) -> std::optional<std::string> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    std::string value = it->second;
    raw.erase(it);
    return value;
  };

  if (auto v = take("config_version")) {
    c.config_version = to_int("config_version", *v);
  } else {
    throw ConfigError("missing required key 'config_version'");
  }
  if (auto v = take("mode")) {
    c.mode = *v;
  } else {
    throw ConfigError("missing required key 'mode'");
  }

  if (auto v = take("chain.sites")) c.chain.sites = to_int("chain.sites", *v);
  if (auto v = take("chain.omega0")) c.chain.omega0 = to_double("chain.omega0", *v);
  if (auto v = take("chain.exchange")) c.chain.exchange = to_double("chain.exchange", *v);
  if (auto v = take("chain.lattice_const")) c.chain.lattice_const = to_double("chain.lattice_const", *v);
  if (auto v = take("chain.boundary")) c.chain.boundary = to_chain_boundary("chain.boundary", *v);
  if (auto v = take("chain.frame")) c.chain.frame = to_frame("chain.frame", *v);
  if (auto v = take("drive.omega")) c.chain.omega = to_double("drive.omega", *v);
  if (auto v = take("drive.rabi")) c.chain.rabi = to_double("drive.rabi", *v);

  if (auto v = take("grid.points")) c.grid_points = to_int("grid.points", *v);
  if (auto v = take("grid.dz")) c.grid_dz = to_double("grid.dz", *v);
  if (auto v = take("grid.boundary")) c.grid_boundary = to_field_boundary("grid.boundary", *v);

  if (auto v = take("init.state")) c.init_state = *v;
  if (auto v = take("init.tilt")) c.init_tilt = to_double("init.tilt", *v);

  if (auto v = take("numerics.dt")) c.dt = to_double("numerics.dt", *v);
  if (auto v = take("numerics.steps")) c.steps = to_long("numerics.steps", *v);
  if (auto v = take("numerics.sample_every")) c.sample_every = to_long("numerics.sample_every", *v);
  if (auto v = take("numerics.seed")) c.seed = to_ull("numerics.seed", *v);

  if (auto v = take("ringdown.periods")) c.ringdown_periods = to_long("ringdown.periods", *v);
  if (auto v = take("ringdown.samples_per_period")) c.ringdown_samples_per_period = to_int("ringdown.samples_per_period", *v);
  if (auto v = take("ringdown.dt_fraction")) c.ringdown_dt_fraction = to_double("ringdown.dt_fraction", *v);
  if (auto v = take("ringdown.min_prominence")) c.ringdown_min_prominence = to_double("ringdown.min_prominence", *v);

  if (auto v = take("spectrum.min_prominence")) c.spectrum_min_prominence = to_double("spectrum.min_prominence", *v);

  if (auto v = take("sweep.kind")) c.sweep_kind = *v;
  if (auto v = take("sweep.factors")) c.sweep_factors = to_double_list("sweep.factors", *v);
  if (auto v = take("sweep.points")) c.sweep_points = to_int_list("sweep.points", *v);

  if (auto v = take("verify.site")) c.verify_site = to_int("verify.site", *v);
  if (auto v = take("verify.component")) c.verify_component = *v;
  if (auto v = take("verify.form")) c.verify_form = *v;

  if (auto v = take("duality.e")) c.duality_e = to_double_list("duality.e", *v);
  if (auto v = take("duality.h")) c.duality_h = to_double_list("duality.h", *v);

  if (auto v = take("raman.enabled")) c.raman_enabled = to_bool("raman.enabled", *v);
  if (auto v = take("raman.cross_term")) c.raman_cross_term = to_bool("raman.cross_term", *v);

  if (auto v = take("io.in")) c.in = *v;
  if (auto v = take("io.out")) c.out = *v;
  if (auto v = take("io.peaks_out")) c.peaks_out = *v;
  if (auto v = take("io.emit")) c.emit = *v;

  if (!raw.empty()) {
    throw ConfigError("unknown config key '" + raw.begin()->first + "'");
  }

  if (c.init_state.empty()) {
    c.init_state = (c.mode == "lattice" || c.mode == "continuum") ? "tilt"
                                                                  : "all-down";
  }
  // Semantic validation happens in run(): the caller may still adjust the
  // parsed configuration (e.g. the command line overrides the mode).
  return c;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.config_version == b.config_version && a.mode == b.mode &&
         a.chain.sites == b.chain.sites && a.chain.omega0 == b.chain.omega0 &&
         a.chain.omega == b.chain.omega && a.chain.rabi == b.chain.rabi &&
         a.chain.exchange == b.chain.exchange &&
         a.chain.lattice_const == b.chain.lattice_const &&
         a.chain.boundary == b.chain.boundary &&
         a.chain.frame == b.chain.frame && a.grid_points == b.grid_points &&
         a.grid_dz == b.grid_dz && a.grid_boundary == b.grid_boundary &&
         a.init_state == b.init_state && a.init_tilt == b.init_tilt &&
         a.dt == b.dt && a.steps == b.steps &&
         a.sample_every == b.sample_every && a.seed == b.seed &&
         a.ringdown_periods == b.ringdown_periods &&
         a.ringdown_samples_per_period == b.ringdown_samples_per_period &&
         a.ringdown_dt_fraction == b.ringdown_dt_fraction &&
         a.ringdown_min_prominence == b.ringdown_min_prominence &&
         a.spectrum_min_prominence == b.spectrum_min_prominence &&
         a.sweep_kind == b.sweep_kind && a.sweep_factors == b.sweep_factors &&
         a.sweep_points == b.sweep_points && a.verify_site == b.verify_site &&
         a.verify_component == b.verify_component &&
         a.verify_form == b.verify_form && a.duality_e == b.duality_e &&
         a.duality_h == b.duality_h && a.raman_enabled == b.raman_enabled &&
         a.raman_cross_term == b.raman_cross_term && a.out == b.out &&
         a.in == b.in && a.peaks_out == b.peaks_out && a.emit == b.emit;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    }
    if (value.empty()) {
      throw ConfigError("config key '" + key + "': empty value");
    }
    if (!raw.emplace(key, value).second) {
      throw ConfigError("config key '" + key + "': duplicated");
    }
  }
  return build_config(raw);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  auto kv = [&out](const char* key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  kv("config_version", std::to_string(c.config_version));
  kv("mode", c.mode);
  kv("chain.sites", std::to_string(c.chain.sites));
  kv("chain.omega0", format_full(c.chain.omega0));
  kv("chain.exchange", format_full(c.chain.exchange));
  kv("chain.lattice_const", format_full(c.chain.lattice_const));
  kv("chain.boundary", chain_boundary_name(c.chain.boundary));
  kv("chain.frame", frame_name(c.chain.frame));
  kv("drive.omega", format_full(c.chain.omega));
  kv("drive.rabi", format_full(c.chain.rabi));
  kv("grid.points", std::to_string(c.grid_points));
  kv("grid.dz", format_full(c.grid_dz));
  kv("grid.boundary", field_boundary_name(c.grid_boundary));
  kv("init.state", c.init_state);
  kv("init.tilt", format_full(c.init_tilt));
  kv("numerics.dt", format_full(c.dt));
  kv("numerics.steps", std::to_string(c.steps));
  kv("numerics.sample_every", std::to_string(c.sample_every));
  kv("numerics.seed", std::to_string(c.seed));
  kv("ringdown.periods", std::to_string(c.ringdown_periods));
  kv("ringdown.samples_per_period", std::to_string(c.ringdown_samples_per_period));
  kv("ringdown.dt_fraction", format_full(c.ringdown_dt_fraction));
  kv("ringdown.min_prominence", format_full(c.ringdown_min_prominence));
  kv("spectrum.min_prominence", format_full(c.spectrum_min_prominence));
  kv("sweep.kind", c.sweep_kind);
  kv("sweep.factors", join_doubles(c.sweep_factors));
  kv("sweep.points", join_ints(c.sweep_points));
  kv("verify.site", std::to_string(c.verify_site));
  kv("verify.component", c.verify_component);
  kv("verify.form", c.verify_form);
  kv("duality.e", join_doubles(c.duality_e));
  kv("duality.h", join_doubles(c.duality_h));
  kv("raman.enabled", c.raman_enabled ? "true" : "false");
  kv("raman.cross_term", c.raman_cross_term ? "true" : "false");
  if (!c.in.empty()) kv("io.in", c.in);
  if (!c.out.empty()) kv("io.out", c.out);
  if (!c.peaks_out.empty()) kv("io.peaks_out", c.peaks_out);
  kv("io.emit", c.emit);
  return out.str();
}

void validate_run_config(const RunConfig& c) {
  if (c.config_version != 1) {
    throw ConfigError("config_version: this toolkit reads version 1, got " +
                      std::to_string(c.config_version));
  }
  static const std::set<std::string> kModes = {
      "verify-algebra", "duality",  "exact",         "lattice",
      "continuum",      "spectrum", "raman-compare", "sweep"};
  require_one_of("mode", c.mode, kModes);
  require_one_of("io.emit", c.emit, {"text", "json"});

  c.chain.validate();
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) {
    throw ConfigError("numerics.dt must be a positive number");
  }
  if (c.steps < 1) throw ConfigError("numerics.steps must be >= 1");
  if (c.sample_every < 1) throw ConfigError("numerics.sample_every must be >= 1");
  if (!(c.grid_dz > 0.0)) throw ConfigError("grid.dz must be positive");
  if (c.grid_points < 2) throw ConfigError("grid.points must be >= 2");
  if (!std::isfinite(c.init_tilt)) throw ConfigError("init.tilt must be finite");

  if (c.mode == "exact") {
    require_one_of("init.state", c.init_state, {"all-down", "all-up", "tilt"});
    if (c.chain.sites > algebra::kMaxDenseSites) {
      throw GuardError("exact mode holds dense states: chain.sites must be <= " +
                       std::to_string(algebra::kMaxDenseSites));
    }
    quantum::check_step_guard(c.chain, c.dt);
  } else if (c.mode == "lattice" || c.mode == "continuum") {
    require_one_of("init.state", c.init_state, {"uniform-z", "tilt"});
    if (c.mode == "continuum" && c.grid_points < 3) {
      throw ConfigError("continuum mode needs grid.points >= 3");
    }
    classical::check_step_guard(c.chain, c.grid_dz, c.dt, c.raman_enabled);
  } else if (c.mode == "spectrum") {
    if (c.in.empty()) throw ConfigError("spectrum mode requires io.in");
    if (!(c.spectrum_min_prominence > 0.0 && c.spectrum_min_prominence < 1.0)) {
      throw ConfigError("spectrum.min_prominence must lie in (0, 1)");
    }
  } else if (c.mode == "raman-compare" || c.mode == "sweep") {
    ringdown_params(c).validate();
    if (c.mode == "sweep") {
      require_one_of("sweep.kind", c.sweep_kind, {"exchange", "length"});
      if (c.sweep_kind == "exchange" && c.sweep_factors.empty()) {
        throw ConfigError("sweep.factors must be non-empty");
      }
      if (c.sweep_kind == "length") {
        if (c.sweep_points.empty()) throw ConfigError("sweep.points must be non-empty");
        for (int n : c.sweep_points) {
          if (n < 4) throw ConfigError("sweep.points entries must be >= 4");
        }
      }
    }
  } else if (c.mode == "verify-algebra") {
    require_one_of("verify.component", c.verify_component,
                   {"z", "plus", "minus", "all"});
    require_one_of("verify.form", c.verify_form, {"component", "determinant"});
    if (c.verify_site < 2 || c.verify_site > c.chain.sites - 1) {
      throw ConfigError("verify.site must be an interior site (2..sites-1)");
    }
  } else if (c.mode == "duality") {
    if (c.duality_e.size() != 3) throw ConfigError("duality.e needs exactly 3 components");
    if (c.duality_h.size() != 3) throw ConfigError("duality.h needs exactly 3 components");
  }

  check_writable_dir("io.out", c.out);
  check_writable_dir("io.peaks_out", c.peaks_out);
}

spectra::RingdownParams ringdown_params(const RunConfig& c) {
  spectra::RingdownParams p;
  p.points = c.grid_points;
  p.dz = c.grid_dz;
  p.tilt = c.init_tilt;
  p.periods = c.ringdown_periods;
  p.samples_per_period = c.ringdown_samples_per_period;
  p.dt_fraction = c.ringdown_dt_fraction;
  p.min_prominence = c.ringdown_min_prominence;
  return p;
}

std::string default_output_path(const RunConfig& c) {
  if (c.mode == "exact" || c.mode == "lattice" || c.mode == "continuum") {
    return "trajectory.csv";
  }
  if (c.mode == "spectrum") return "spectrum.csv";
  if (c.mode == "raman-compare") return "raman_compare.json";
  if (c.mode == "sweep") return "sweep_fits.json";
  if (c.mode == "verify-algebra") return "derivation_report.json";
  return "duality.json";
}

}  // namespace spindyn
