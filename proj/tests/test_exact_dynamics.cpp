#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracle_matrix.hpp"
#include "spindyn/evolve.hpp"
#include "spindyn/hamiltonian.hpp"
#include "spindyn/matrix_rep.hpp"
#include "spindyn/state_vector.hpp"
#include "spindyn/trajectory.hpp"

using namespace spindyn;
using namespace spindyn::quantum;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

ChainConfig single_site(Frame frame, double omega, double rabi) {
  ChainConfig c;
  c.sites = 1;
  c.omega0 = 1.0;
  c.omega = omega;
  c.rabi = rabi;
  c.frame = frame;
  return c;
}

}  // namespace

TEST_CASE("state construction and site expectations") {
  const StateVector down = StateVector::all_down(2);
  CHECK(down.amplitudes()(3) == Complex(1.0));
  CHECK(down.expect_sigma(1).z() == doctest::Approx(-1.0).epsilon(1e-15));

  const StateVector up = StateVector::all_up(2);
  CHECK(up.amplitudes()(0) == Complex(1.0));
  CHECK(up.expect_sigma(2).z() == doctest::Approx(1.0).epsilon(1e-15));

  // theta = pi/2, phi = 0 points along +x.
  const StateVector x = StateVector::product({BlochAngles{kPi / 2.0, 0.0}});
  CHECK(x.expect_sigma(1).x() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(x.expect_sigma(1).y()) <= 1e-14);
  CHECK_THROWS_AS(x.expect_sigma(2), std::invalid_argument);
  CHECK_THROWS_AS(x.expect_sigma(0), std::invalid_argument);
}

TEST_CASE("site expectations match the dense oracle") {
  const StateVector psi = StateVector::product(
      {BlochAngles{0.7, 0.3}, BlochAngles{2.1, -1.2}, BlochAngles{1.0, 2.5}});
  using algebra::OperatorExpr;
  using algebra::SiteOp;
  for (int k = 1; k <= 3; ++k) {
    const auto sp = oracle::kron_matrix(OperatorExpr::site(SiteOp::Raise, k), 3, 0.0);
    const auto sm = oracle::kron_matrix(OperatorExpr::site(SiteOp::Lower, k), 3, 0.0);
    const auto sz = oracle::kron_matrix(OperatorExpr::site(SiteOp::Z, k), 3, 0.0);
    const Eigen::VectorXcd& a = psi.amplitudes();
    const Complex plus = a.dot(sp * a);  // Eigen dot conjugates the left side
    const double sx = (plus + a.dot(sm * a)).real();
    const double sy = (Complex(0.0, 1.0) * (a.dot(sm * a) - plus)).real();
    const double z = a.dot(sz * a).real();
    const Eigen::Vector3d got = psi.expect_sigma(k);
    CHECK(got.x() == doctest::Approx(sx).epsilon(1e-13));
    CHECK(got.y() == doctest::Approx(sy).epsilon(1e-13));
    CHECK(got.z() == doctest::Approx(z).epsilon(1e-13));
  }
}

TEST_CASE("matrix assembly agrees with the symbolic route") {
  ChainConfig c;
  c.sites = 3;
  c.omega0 = 1.2;
  c.omega = 0.9;
  c.rabi = 0.4;
  c.exchange = 0.3;
  const algebra::OperatorExpr h = algebra::build_hamiltonian(c);
  for (const double t : {0.0, 0.37, 2.0}) {
    const Eigen::MatrixXcd direct = build_matrix(c, t);
    const Eigen::MatrixXcd symbolic = algebra::to_matrix(h, 3, c.omega * t);
    CHECK((direct - symbolic).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((direct - direct.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  ChainConfig rot = c;
  rot.frame = Frame::Rotating;
  const Eigen::MatrixXcd rot_direct = build_matrix(rot, 5.0);
  const Eigen::MatrixXcd rot_symbolic =
      algebra::to_matrix_static(algebra::build_hamiltonian(rot), 3);
  CHECK((rot_direct - rot_symbolic).cwiseAbs().maxCoeff() <= 1e-14);

  ChainConfig big = c;
  big.sites = 13;
  CHECK_THROWS_AS(build_matrix(big, 0.0), GuardError);
}

TEST_CASE("resonant Rabi oscillation, lab frame") {
  const ChainConfig c = single_site(Frame::Lab, 1.0, 0.5);
  StateVector psi = StateVector::all_up(1);
  const double dt = 0.05;
  const Trajectory tr = evolve(psi, c, dt, 400, 4);
  REQUIRE(tr.n_times() == 101);
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.n_times(); ++s) {
    const double expect = std::cos(2.0 * c.rabi * tr.times[s]);
    worst = std::max(worst, std::abs(tr.sigma[s][0].z() - expect));
  }
  CHECK(worst <= 1e-8);
  for (const auto& row : tr.norms) CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("resonant Rabi oscillation, rotating frame is numerically exact") {
  const ChainConfig c = single_site(Frame::Rotating, 1.0, 0.5);
  StateVector psi = StateVector::all_up(1);
  const Trajectory tr = evolve(psi, c, 0.1, 200, 1);
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.n_times(); ++s) {
    worst = std::max(worst,
                     std::abs(tr.sigma[s][0].z() - std::cos(tr.times[s])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("detuned Rabi oscillation follows the generalized formula") {
  // Precession about (-2W, 0, D): sz = (D^2 + 4W^2 cos(Wr t)) / Wr^2.
  ChainConfig c = single_site(Frame::Rotating, 0.7, 0.4);
  const double delta = c.detuning();
  const double wr = std::hypot(delta, 2.0 * c.rabi);
  StateVector psi = StateVector::all_up(1);
  const Trajectory tr = evolve(psi, c, 0.05, 800, 8);
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.n_times(); ++s) {
    const double expect = (delta * delta +
                           4.0 * c.rabi * c.rabi * std::cos(wr * tr.times[s])) /
                          (wr * wr);
    worst = std::max(worst, std::abs(tr.sigma[s][0].z() - expect));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("exchange flip-flop of an up-down pair") {
  ChainConfig c;
  c.sites = 2;
  c.omega0 = 1.0;
  c.omega = 1.0;
  c.rabi = 0.0;
  c.exchange = 0.25;
  c.frame = Frame::Rotating;
  StateVector psi = StateVector::product({BlochAngles{0.0, 0.0}, BlochAngles{kPi, 0.0}});
  const Trajectory tr = evolve(psi, c, 0.1, 500, 5);
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.n_times(); ++s) {
    const double expect = std::cos(2.0 * c.exchange * tr.times[s]);
    worst = std::max(worst, std::abs(tr.sigma[s][0].z() - expect));
    // Mirror site, and conserved pair total.
    worst = std::max(worst, std::abs(tr.sigma[s][1].z() + expect));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("aligned states are stationary without a drive") {
  ChainConfig c;
  c.sites = 3;
  c.omega0 = 1.0;
  c.omega = 1.0;
  c.rabi = 0.0;
  c.exchange = 0.5;
  for (const Frame frame : {Frame::Lab, Frame::Rotating}) {
    c.frame = frame;
    StateVector psi = StateVector::all_down(3);
    const Trajectory tr = evolve(psi, c, 0.05, 200, 20);
    for (const auto& sample : tr.sigma) {
      for (const auto& s : sample) {
        CHECK(std::abs(s.z() + 1.0) <= 1e-10);
        CHECK(std::hypot(s.x(), s.y()) <= 1e-10);
      }
    }
  }
}

TEST_CASE("norm, energy and total z are conserved where they should be") {
  ChainConfig c;
  c.sites = 3;
  c.omega0 = 1.1;
  c.omega = 0.9;
  c.rabi = 0.35;
  c.exchange = 0.2;
  c.frame = Frame::Lab;

  SUBCASE("norm under the driven lab evolution") {
    StateVector psi = StateVector::product(
        {BlochAngles{0.4, 0.0}, BlochAngles{1.3, 0.7}, BlochAngles{2.2, -0.4}});
    const Trajectory tr = evolve(psi, c, 0.05, 400, 40);
    for (const auto& row : tr.norms) {
      CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("energy under the static rotating evolution") {
    ChainConfig rot = c;
    rot.frame = Frame::Rotating;
    const Eigen::MatrixXcd h = build_matrix(rot, 0.0);
    StateVector psi = StateVector::product(
        {BlochAngles{0.4, 0.0}, BlochAngles{1.3, 0.7}, BlochAngles{2.2, -0.4}});
    const double e0 = psi.amplitudes().dot(h * psi.amplitudes()).real();
    for (int chunk = 0; chunk < 10; ++chunk) {
      evolve(psi, rot, 0.08, 25, 25);
      const double e = psi.amplitudes().dot(h * psi.amplitudes()).real();
      CHECK(e == doctest::Approx(e0).epsilon(1e-12));
    }
  }

  SUBCASE("total z with the drive off") {
    ChainConfig free = c;
    free.rabi = 0.0;
    StateVector psi = StateVector::product(
        {BlochAngles{0.0, 0.0}, BlochAngles{kPi, 0.0}, BlochAngles{kPi / 2.0, 1.0}});
    const Trajectory tr = evolve(psi, free, 0.05, 400, 40);
    const double z0 = tr.sigma[0][0].z() + tr.sigma[0][1].z() + tr.sigma[0][2].z();
    for (const auto& sample : tr.sigma) {
      const double z = sample[0].z() + sample[1].z() + sample[2].z();
      CHECK(z == doctest::Approx(z0).epsilon(1e-10));
    }
  }
}

TEST_CASE("uncoupled sites factorize") {
  ChainConfig chain;
  chain.sites = 3;
  chain.omega0 = 1.0;
  chain.omega = 0.85;
  chain.rabi = 0.45;
  chain.exchange = 0.0;
  const ChainConfig site = single_site(Frame::Lab, 0.85, 0.45);

  StateVector psi3 = StateVector::all_up(3);
  StateVector psi1 = StateVector::all_up(1);
  const Trajectory t3 = evolve(psi3, chain, 0.05, 300, 10);
  const Trajectory t1 = evolve(psi1, site, 0.05, 300, 10);
  double worst = 0.0;
  for (std::size_t s = 0; s < t3.n_times(); ++s) {
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst, (t3.sigma[s][k] - t1.sigma[s][0]).norm());
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("lab and rotating frames tell one story") {
  ChainConfig c;
  c.sites = 2;
  c.omega0 = 1.0;
  c.omega = 0.8;
  c.rabi = 0.5;
  c.exchange = 0.25;
  const StateVector psi = StateVector::product(
      {BlochAngles{0.3, 0.0}, BlochAngles{2.0, 1.1}});
  const FrameDeviation dev = frame_consistency(c, psi, 20.0, 0.05);
  CHECK(dev.max_z <= 1e-6);
  CHECK(dev.max_transverse <= 1e-6);
}

TEST_CASE("step guard rejects oversized steps") {
  ChainConfig c = single_site(Frame::Lab, 1.0, 0.5);
  CHECK_THROWS_AS(check_step_guard(c, 0.2), GuardError);
  CHECK_NOTHROW(check_step_guard(c, 0.1));
  StateVector psi = StateVector::all_up(1);
  CHECK_THROWS_AS(evolve(psi, c, 0.2, 10, 1), GuardError);
  // The exchange scale enters through 4|J|.
  ChainConfig heavy = c;
  heavy.sites = 2;
  heavy.exchange = 1.0;
  CHECK_THROWS_AS(check_step_guard(heavy, 0.05), GuardError);
}

TEST_CASE("trajectory sampling bookkeeping") {
  ChainConfig c = single_site(Frame::Rotating, 1.0, 0.2);
  StateVector psi = StateVector::all_up(1);
  const Trajectory tr = evolve(psi, c, 0.1, 100, 10);
  REQUIRE(tr.n_times() == 11);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(tr.n_series() == 1);
  CHECK(tr.series_coord[0] == 1.0);
}
