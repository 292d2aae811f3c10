#include "spindyn/trajectory.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spindyn/common.hpp"

namespace spindyn {

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

void write_trajectory_csv(const Trajectory& tr, const std::string& path,
                          const std::string& coord_label) {
  std::string out;
  out.reserve(64 * tr.n_times() * std::max<std::size_t>(tr.n_series(), 1));
  out += "t,";
  out += coord_label;
  out += ",sx,sy,sz,norm\n";
  for (std::size_t t = 0; t < tr.n_times(); ++t) {
    for (std::size_t s = 0; s < tr.n_series(); ++s) {
      append_double(out, tr.times[t]);
      out += ',';
      append_double(out, tr.series_coord[s]);
      out += ',';
      append_double(out, tr.sigma[t][s][0]);
      out += ',';
      append_double(out, tr.sigma[t][s][1]);
      out += ',';
      append_double(out, tr.sigma[t][s][2]);
      out += ',';
      append_double(out, tr.norms[t][s]);
      out += '\n';
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw ConfigError("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(f, line))
    throw ConfigError("empty trajectory file: " + path);

  Trajectory tr;
  bool first_block = true;
  std::size_t series_in_block = 0;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[6];
    const char* p = line.c_str();
    for (int i = 0; i < 6; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p)
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed CSV row");
      p = end;
      if (i < 5) {
        if (*p != ',')
          throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": expected 6 comma-separated values");
        ++p;
      }
    }
    const bool new_block = tr.times.empty() || v[0] != tr.times.back();
    if (new_block) {
      if (!first_block && series_in_block != tr.series_coord.size())
        throw ConfigError(path + ": inconsistent series count between times");
      if (!tr.times.empty()) first_block = false;
      tr.times.push_back(v[0]);
      tr.sigma.emplace_back();
      tr.norms.emplace_back();
      series_in_block = 0;
    }
    if (first_block) {
      tr.series_coord.push_back(v[1]);
    } else if (series_in_block >= tr.series_coord.size() ||
               v[1] != tr.series_coord[series_in_block]) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": series coordinates differ between time blocks");
    }
    tr.sigma.back().emplace_back(v[2], v[3], v[4]);
    tr.norms.back().push_back(v[5]);
    ++series_in_block;
  }
  if (tr.times.empty()) throw ConfigError("no data rows in " + path);
  return tr;
}

}  // namespace spindyn
