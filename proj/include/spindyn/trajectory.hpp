#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace spindyn {

// Sampled time series of 3-vector observables over a set of series (chain
// sites or grid points). Shared by the quantum and classical integrators and
// by the spectrum analysis.
//
// `norms[t][s]` carries the per-site |sigma| for classical runs and the
// (site-independent) state norm for quantum runs.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> series_coord;                 // site index or z position
  std::vector<std::vector<Eigen::Vector3d>> sigma;  // [time][series]
  std::vector<std::vector<double>> norms;           // [time][series]

  std::size_t n_times() const { return times.size(); }
  std::size_t n_series() const { return series_coord.size(); }
};

// CSV with header "t,<coord_label>,sx,sy,sz,norm", full double precision,
// one row per (time, series) pair, time-major.
void write_trajectory_csv(const Trajectory& tr, const std::string& path,
                          const std::string& coord_label);

// Reads the format written above (any coordinate-column name accepted).
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace spindyn
