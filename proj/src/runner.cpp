#include "spindyn/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "spindyn/common.hpp"
#include "spindyn/derivation.hpp"
#include "spindyn/evolve.hpp"
#include "spindyn/field_tensor.hpp"
#include "spindyn/landau_lifshitz.hpp"
#include "spindyn/spin_field.hpp"
#include "spindyn/state_vector.hpp"

namespace spindyn {

namespace {

using nlohmann::ordered_json;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw PipelineError("write failed for '" + path + "'");
}

void write_json_file(const std::string& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// "name.csv" -> "name<suffix>.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  const std::filesystem::path renamed =
      p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  return renamed.string();
}

std::vector<std::pair<std::string, std::string>> config_echo(
    const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream lines(emit_config(config));
  std::string line;
  while (std::getline(lines, line)) {
    const std::size_t sep = line.find(" = ");
    if (sep == std::string::npos) continue;
    pairs.emplace_back(line.substr(0, sep), line.substr(sep + 3));
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// exact

classical::SpinField make_classical_init(const RunConfig& c) {
  classical::SpinField field;
  field.spacing = c.grid_dz;
  field.boundary = c.grid_boundary;
  Eigen::Vector3d v(0.0, 0.0, 1.0);
  if (c.init_state == "tilt") {
    v = Eigen::Vector3d(std::sin(c.init_tilt), 0.0, std::cos(c.init_tilt));
  }
  field.values.assign(static_cast<std::size_t>(c.grid_points), v);
  if (field.boundary == classical::FieldBoundary::Pinned) {
    field.values.front() = Eigen::Vector3d(0.0, 0.0, 1.0);
    field.values.back() = Eigen::Vector3d(0.0, 0.0, 1.0);
  }
  return field;
}

std::string run_exact(const RunConfig& c, std::vector<std::string>& outputs) {
  quantum::StateVector state = [&c] {
    if (c.init_state == "all-down") {
      return quantum::StateVector::all_down(c.chain.sites);
    }
    if (c.init_state == "all-up") {
      return quantum::StateVector::all_up(c.chain.sites);
    }
    const std::vector<quantum::BlochAngles> angles(
        static_cast<std::size_t>(c.chain.sites),
        quantum::BlochAngles{c.init_tilt, 0.0});
    return quantum::StateVector::product(angles);
  }();
  const Trajectory tr =
      quantum::evolve(state, c.chain, c.dt, c.steps, c.sample_every);
  write_trajectory_csv(tr, c.out, "site");
  outputs.push_back(c.out);
  return "exact: " + std::to_string(c.chain.sites) + " site(s), " +
         std::to_string(c.steps) + " steps -> " + c.out + " (" +
         std::to_string(tr.n_times()) + " samples)";
}

std::string run_classical(const RunConfig& c, std::vector<std::string>& outputs) {
  const classical::Model model = c.mode == "lattice"
                                     ? classical::Model::Lattice
                                     : classical::Model::Continuum;
  const char* coord = model == classical::Model::Lattice ? "site" : "z";
  if (c.raman_enabled) {
    classical::RamanState state{make_classical_init(c), make_classical_init(c)};
    auto [tr1, tr2] = classical::integrate_raman(state, c.chain, c.dt, c.steps,
                                                 c.sample_every, c.raman_cross_term);
    const std::string out1 = with_suffix(c.out, "_sigma1");
    const std::string out2 = with_suffix(c.out, "_sigma2");
    write_trajectory_csv(tr1, out1, coord);
    write_trajectory_csv(tr2, out2, coord);
    outputs.push_back(out1);
    outputs.push_back(out2);
    return c.mode + " (two-component): " + std::to_string(c.grid_points) +
           " points, " + std::to_string(c.steps) + " steps -> " + out1 + ", " +
           out2;
  }
  classical::SpinField field = make_classical_init(c);
  const Trajectory tr =
      classical::integrate(field, c.chain, model, c.dt, c.steps, c.sample_every);
  write_trajectory_csv(tr, c.out, coord);
  outputs.push_back(c.out);
  return c.mode + ": " + std::to_string(c.grid_points) + " points, " +
         std::to_string(c.steps) + " steps -> " + c.out + " (" +
         std::to_string(tr.n_times()) + " samples)";
}

ordered_json fit_json(const spectra::ModeFit& fit) {
  ordered_json j;
  j["omega0_fit"] = fit.omega0_fit;
  j["c"] = fit.c;
  j["residual"] = fit.residual;
  j["odd_only"] = fit.odd_only;
  ordered_json modes = ordered_json::array();
  for (const auto& [n, omega] : fit.modes) {
    modes.push_back(ordered_json{{"n", n}, {"omega", omega}});
  }
  j["modes"] = modes;
  return j;
}

std::string run_spectrum(const RunConfig& c, std::vector<std::string>& outputs) {
  const Trajectory tr = read_trajectory_csv(c.in);
  const spectra::Spectrum spectrum = spectra::ringdown_spectrum(tr);
  write_spectrum_csv(spectrum, c.out);
  outputs.push_back(c.out);

  const std::vector<spectra::Peak> peaks =
      spectra::detect_peaks(spectrum, c.spectrum_min_prominence);
  ordered_json report;
  report["resolution"] = spectrum.resolution;
  ordered_json jp = ordered_json::array();
  for (const spectra::Peak& p : peaks) {
    jp.push_back(ordered_json{{"omega", p.omega}, {"amplitude", p.amplitude}});
  }
  report["peaks"] = jp;
  try {
    report["fit"] = fit_json(spectra::fit_mode_law(peaks));
  } catch (const PipelineError&) {
    report["fit"] = nullptr;
  }
  const std::string peaks_out = c.peaks_out.empty() ? "peaks.json" : c.peaks_out;
  write_json_file(peaks_out, report);
  outputs.push_back(peaks_out);
  return "spectrum: " + std::to_string(tr.n_times()) + " samples -> " + c.out +
         "; " + std::to_string(peaks.size()) + " peak(s) -> " + peaks_out;
}

std::string run_raman_compare(const RunConfig& c,
                              std::vector<std::string>& outputs) {
  const spectra::RamanComparison cmp =
      spectra::raman_doubling(c.chain, ringdown_params(c), c.raman_cross_term);
  ordered_json j;
  j["c_single"] = cmp.c_single;
  j["c_raman"] = cmp.c_raman;
  j["ratio"] = cmp.ratio;
  j["residuals"] =
      ordered_json{{"single", cmp.residual_single}, {"raman", cmp.residual_raman}};
  j["cross_term"] = cmp.cross_term;
  write_json_file(c.out, j);
  outputs.push_back(c.out);
  char line[160];
  std::snprintf(line, sizeof(line),
                "raman-compare: c_single = %.6g, c_raman = %.6g, ratio = %.4f "
                "(cross term %s)",
                cmp.c_single, cmp.c_raman, cmp.ratio,
                cmp.cross_term ? "on" : "off");
  return std::string(line) + " -> " + c.out;
}

int worker_cap() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("SPINDYN_MAX_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError("SPINDYN_MAX_WORKERS must be a positive integer");
    }
    cap = static_cast<int>(v);
  }
  return cap;
}

std::string run_sweep(const RunConfig& c, std::vector<std::string>& outputs) {
  struct Point {
    double parameter = 0.0;
    RunConfig config;            // per-point variation
    spectra::RingdownParams params;
    spectra::EswrRun result;
    std::exception_ptr error;
  };

  const bool by_exchange = c.sweep_kind == "exchange";
  std::vector<Point> points;
  if (by_exchange) {
    for (double f : c.sweep_factors) {
      Point p;
      p.config = c;
      p.config.chain.exchange = c.chain.exchange * f;
      p.params = ringdown_params(c);
      p.parameter = p.config.chain.exchange;
      points.push_back(std::move(p));
    }
  } else {
    for (int n : c.sweep_points) {
      Point p;
      p.config = c;
      p.params = ringdown_params(c);
      p.params.points = n;
      // Keep the spectral lines a fixed number of bins apart: the mode
      // spacing shrinks as 1/L^2, so the window grows as L^2.
      const double ratio = (static_cast<double>(n) - 1.0) /
                           (static_cast<double>(c.grid_points) - 1.0);
      p.params.periods = static_cast<long>(
          std::ceil(static_cast<double>(p.params.periods) * ratio * ratio));
      p.parameter = (static_cast<double>(n) - 1.0) * c.grid_dz;
      points.push_back(std::move(p));
    }
  }

  // Compute concurrently (results only); write files serially afterwards so
  // output bytes do not depend on scheduling.
  std::atomic<std::size_t> next{0};
  auto work = [&points, &next] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        points[i].result = spectra::run_eswr(points[i].config.chain, points[i].params);
      } catch (...) {
        points[i].error = std::current_exception();
      }
    }
  };
  const int n_workers =
      std::min<int>(worker_cap(), static_cast<int>(points.size()));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  for (const Point& p : points) {
    if (p.error) std::rethrow_exception(p.error);
  }

  const std::string base = with_suffix(c.out, "");  // normalized path
  const std::string stem =
      (std::filesystem::path(base).parent_path() /
       std::filesystem::path(base).stem()).string();
  ordered_json table;
  table["kind"] = c.sweep_kind;
  ordered_json jp = ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string spectrum_path =
        stem + "_point" + std::to_string(i) + "_spectrum.csv";
    write_spectrum_csv(points[i].result.spectrum, spectrum_path);
    outputs.push_back(spectrum_path);
    ordered_json row;
    row["parameter"] = points[i].parameter;
    row["c_fit"] = points[i].result.fit.c;
    row["c_theory"] = points[i].result.c_theory;
    row["residual"] = points[i].result.fit.residual;
    row["omega0_fit"] = points[i].result.fit.omega0_fit;
    row["spectrum_csv"] = spectrum_path;
    jp.push_back(row);
  }
  table["points"] = jp;
  write_json_file(c.out, table);
  outputs.push_back(c.out);
  return "sweep (" + c.sweep_kind + "): " + std::to_string(points.size()) +
         " point(s) -> " + c.out;
}

const char* component_key(algebra::VectorComponent v) {
  switch (v) {
    case algebra::VectorComponent::Z: return "z";
    case algebra::VectorComponent::Plus: return "plus";
    case algebra::VectorComponent::Minus: return "minus";
  }
  return "z";
}

std::string run_verify(const RunConfig& c, std::vector<std::string>& outputs,
                       bool emit_text_summary) {
  const algebra::ReferenceForm form = c.verify_form == "component"
                                          ? algebra::ReferenceForm::ComponentWise
                                          : algebra::ReferenceForm::Determinant;
  const std::array<algebra::DerivationReport, 3> reports =
      algebra::verify_derivation(c.chain, c.verify_site, form);

  ordered_json j;
  j["sites"] = c.chain.sites;
  j["site"] = c.verify_site;
  j["form"] = c.verify_form;
  ordered_json jr = ordered_json::array();
  std::string text;
  for (const algebra::DerivationReport& r : reports) {
    const std::string key = component_key(r.component);
    if (c.verify_component != "all" && c.verify_component != key) continue;
    ordered_json e;
    e["component"] = key;
    e["matches"] = r.matches;
    e["matches_doubled_exchange"] = r.matches_doubled_exchange;
    e["same_support"] = r.same_support;
    e["engine"] = algebra::to_string(r.engine);
    e["reference"] = algebra::to_string(r.reference);
    e["difference"] = algebra::to_string(r.difference);
    ordered_json ratios = ordered_json::object();
    for (const auto& [mono, ratio] : r.coefficient_ratio) {
      ratios[algebra::to_string(mono)] =
          ordered_json{{"re", ratio.real()}, {"im", ratio.imag()}};
    }
    e["coefficient_ratios"] = ratios;
    e["summary"] = r.summary;
    jr.push_back(e);
    text += key + ": " + (r.matches ? "match" : "mismatch") + " -- " +
            r.summary + "\n";
    if (!r.matches) {
      text += "  difference = " + algebra::to_string(r.difference) + "\n";
    }
  }
  j["reports"] = jr;
  write_json_file(c.out, j);
  outputs.push_back(c.out);
  if (!emit_text_summary) return j.dump(2);
  text += "report -> " + c.out;
  return text;
}

ordered_json matrix_json(const Eigen::Matrix4d& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < 4; ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const char* label, const Eigen::Matrix4d& m) {
  std::string out = std::string(label) + ":\n";
  for (int i = 0; i < 4; ++i) {
    char line[128];
    std::snprintf(line, sizeof(line), "  %12.6g %12.6g %12.6g %12.6g\n",
                  m(i, 0), m(i, 1), m(i, 2), m(i, 3));
    out += line;
  }
  return out;
}

ordered_json vector_json(const Eigen::Vector3d& v) {
  return ordered_json::array({v.x(), v.y(), v.z()});
}

std::string run_duality(const RunConfig& c, std::vector<std::string>& outputs,
                        bool emit_text_summary) {
  field::EMFieldVectors in;
  in.E = Eigen::Vector3d(c.duality_e[0], c.duality_e[1], c.duality_e[2]);
  in.H = Eigen::Vector3d(c.duality_h[0], c.duality_h[1], c.duality_h[2]);
  const field::FieldTensor tensor = field::from_fields(in);
  const field::FieldTensor dual_tensor = field::dual(tensor);
  const field::EMFieldVectors dual_fields = field::extract(dual_tensor);
  const field::FieldInvariants inv = field::invariants(tensor);
  const field::FieldInvariants inv_dual = field::invariants(dual_tensor);

  ordered_json j;
  j["e"] = vector_json(in.E);
  j["h"] = vector_json(in.H);
  j["tensor"] = matrix_json(tensor.m);
  j["dual"] = matrix_json(dual_tensor.m);
  j["dual_fields"] =
      ordered_json{{"e", vector_json(dual_fields.E)}, {"h", vector_json(dual_fields.H)}};
  j["invariants"] =
      ordered_json{{"scalar", inv.scalar}, {"pseudoscalar", inv.pseudoscalar}};
  j["dual_invariants"] = ordered_json{{"scalar", inv_dual.scalar},
                                      {"pseudoscalar", inv_dual.pseudoscalar}};
  write_json_file(c.out, j);
  outputs.push_back(c.out);
  if (!emit_text_summary) return j.dump(2);

  std::string text = matrix_text("field tensor (contravariant)", tensor.m);
  text += matrix_text("dual tensor", dual_tensor.m);
  char line[256];
  std::snprintf(line, sizeof(line),
                "dual fields: e = (%g, %g, %g), h = (%g, %g, %g)\n",
                dual_fields.E.x(), dual_fields.E.y(), dual_fields.E.z(),
                dual_fields.H.x(), dual_fields.H.y(), dual_fields.H.z());
  text += line;
  std::snprintf(line, sizeof(line),
                "invariants: scalar = %g, pseudoscalar = %g (dual: %g, %g)\n",
                inv.scalar, inv.pseudoscalar, inv_dual.scalar,
                inv_dual.pseudoscalar);
  text += line;
  text += "report -> " + c.out;
  return text;
}

}  // namespace

std::string checksum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("cannot read back '" + path + "' for checksum");
  std::uint64_t hash = 14695981039346656037ULL;
  char buf[65536];
  for (;;) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

void write_spectrum_csv(const spectra::Spectrum& spectrum,
                        const std::string& path) {
  std::string content = "omega,amplitude\n";
  for (std::size_t i = 0; i < spectrum.freqs.size(); ++i) {
    content += format_full(spectrum.freqs[i]);
    content += ',';
    content += format_full(spectrum.amps[i]);
    content += '\n';
  }
  write_text_file(path, content);
}

RunManifest run(const RunConfig& config) {
  validate_run_config(config);
  const auto t_start = std::chrono::steady_clock::now();

  RunConfig c = config;
  if (c.out.empty()) c.out = default_output_path(c);

  RunManifest manifest;
  manifest.version = kVersion;
  manifest.mode = c.mode;

  std::vector<std::string> outputs;
  const bool text = c.emit == "text";
  if (c.mode == "exact") {
    manifest.summary = run_exact(c, outputs);
  } else if (c.mode == "lattice" || c.mode == "continuum") {
    manifest.summary = run_classical(c, outputs);
  } else if (c.mode == "spectrum") {
    manifest.summary = run_spectrum(c, outputs);
  } else if (c.mode == "raman-compare") {
    manifest.summary = run_raman_compare(c, outputs);
  } else if (c.mode == "sweep") {
    manifest.summary = run_sweep(c, outputs);
  } else if (c.mode == "verify-algebra") {
    manifest.summary = run_verify(c, outputs, text);
  } else {
    manifest.summary = run_duality(c, outputs, text);
  }

  for (const std::string& path : outputs) {
    manifest.outputs.emplace_back(path, checksum_file(path));
  }
  const auto t_end = std::chrono::steady_clock::now();
  manifest.wall_time_ms =
      std::chrono::duration<double, std::milli>(t_end - t_start).count();

  ordered_json j;
  j["version"] = manifest.version;
  j["mode"] = manifest.mode;
  ordered_json echo = ordered_json::object();
  for (const auto& [key, value] : config_echo(c)) echo[key] = value;
  j["config"] = echo;
  ordered_json sums = ordered_json::object();
  for (const auto& [path, sum] : manifest.outputs) sums[path] = sum;
  j["outputs"] = sums;
  j["wall_time_ms"] = manifest.wall_time_ms;
  manifest.manifest_path = c.out + ".manifest.json";
  write_json_file(manifest.manifest_path, j);
  return manifest;
}

}  // namespace spindyn
