#include <doctest.h>

#include <cmath>
#include <random>

#include "torusfhn/dynamics.hpp"
#include "torusfhn/errors.hpp"
#include "torusfhn/spectrum.hpp"

using namespace torusfhn;

namespace {

IntegratorSettings short_run(double t_end, double dt = 0.01) {
  IntegratorSettings s;
  s.dt = dt;
  s.t_end = t_end;
  s.transient_discard = 0.0;
  return s;
}

VectorField neuron_field(const NeuronParams& p) {
  return [p](std::span<const double> s, std::span<double> out) {
    const auto d = neuron_rhs(s[0], s[1], p);
    out[0] = d.dx;
    out[1] = d.dy;
  };
}

double endpoint_error(double dt, const std::vector<double>& ref) {
  const auto tr = integrate(neuron_field({0.01, 0.9, 0.9}), {0.1, 0.1}, short_run(10.0, dt));
  const auto last = tr.row(tr.size() - 1);
  return std::hypot(last[0] - ref[0], last[1] - ref[1]);
}

}  // namespace

TEST_CASE("zero field keeps the initial condition") {
  const NetworkState ic{0.3, -1.2, 4.0};
  const auto tr = integrate([](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); },
                            ic, short_run(1.0));
  REQUIRE(tr.size() == 101);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < tr.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(tr.row(i)[j] == ic[j]);
}

TEST_CASE("linear decay matches the exact solution") {
  const auto tr = integrate([](std::span<const double> s, std::span<double> out) { out[0] = -s[0]; }, {1.0},
                            short_run(5.0, 0.05));
  for (std::size_t i = 0; i < tr.size(); ++i) CHECK(tr.row(i)[0] == doctest::Approx(std::exp(-tr.times[i])).epsilon(1e-6));
}

TEST_CASE("recording stride") {
  auto s = short_run(2.0, 0.01);
  s.record_stride = 10;
  const auto tr = integrate(neuron_field({0.01, 0.9, 0.9}), {0.1, 0.1}, s);
  CHECK(tr.size() == 21);
  CHECK(tr.times[1] == doctest::Approx(0.1).epsilon(1e-14));
  const auto full = integrate(neuron_field({0.01, 0.9, 0.9}), {0.1, 0.1}, short_run(2.0, 0.01));
  CHECK(tr.row(20)[0] == full.row(200)[0]);
  CHECK(s.sample_interval() == doctest::Approx(0.1));
}

TEST_CASE("single neuron decays as the spectrum predicts") {
  CHECK(uncoupled_eigenvalues({0.01, 0.9, 0.9}).first.real() < 0.0);
  const auto tr = integrate(neuron_field({0.01, 0.9, 0.9}), {0.1, 0.1}, short_run(50.0));
  const auto last = tr.row(tr.size() - 1);
  CHECK(std::hypot(last[0], last[1]) < std::hypot(0.1, 0.1) / 10);
}

TEST_CASE("RK4 convergence order") {
  const auto fine = integrate(neuron_field({0.01, 0.9, 0.9}), {0.1, 0.1}, short_run(10.0, 0.1 / 16));
  const std::vector<double> ref(fine.row(fine.size() - 1).begin(), fine.row(fine.size() - 1).end());
  const double e1 = endpoint_error(0.1, ref);
  const double e2 = endpoint_error(0.05, ref);
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("initial condition tables") {
  const auto ic = fig2_initial_conditions();
  REQUIRE(ic.size() == 18);
  CHECK(ic[x_index(3, 0, 0)] == 0.8462);
  CHECK(ic[y_index(3, 0, 0)] == 0.5252);
  CHECK(ic[x_index(3, 2, 2)] == 0.3028);
  CHECK(ic[y_index(3, 2, 2)] == 0.5417);
  CHECK(ic[x_index(3, 0, 1)] == 0.2026);
  CHECK(tiled_initial_conditions(3) == ic);

  const auto t5 = tiled_initial_conditions(5);
  REQUIRE(t5.size() == 50);
  // row-major tiling of the 9 values: flat neuron k takes entry k mod 9
  for (int k = 0; k < 25; ++k) {
    CHECK(t5[2 * k] == ic[2 * (k % 9)]);
    CHECK(t5[2 * k + 1] == ic[2 * (k % 9) + 1]);
  }

  const auto u = uniform_initial_conditions(3);
  for (int k = 1; k < 9; ++k) {
    CHECK(u[2 * k] == u[0]);
    CHECK(u[2 * k + 1] == u[1]);
  }
  double mx = 0;
  for (int k = 0; k < 9; ++k) mx += ic[2 * k] / 9;
  CHECK(u[0] == doctest::Approx(mx).epsilon(1e-14));

  const auto f4 = listed_initial_conditions_11();
  REQUIRE(f4.size() == 2 * 242);
  CHECK(f4[x_index(11, 0, 0)] == 6.489);
  CHECK(f4[y_index(11, 0, 3)] == 7.9935);
  CHECK(f4[242 + x_index(11, 10, 7)] == 0.5475);
  CHECK(f4[242 + y_index(11, 10, 10)] == 4.9924);
  const auto tiled11 = tiled_initial_conditions(11);
  CHECK(f4[x_index(11, 0, 4)] == tiled11[x_index(11, 0, 4)]);
  CHECK(f4[x_index(11, 5, 5)] == tiled11[x_index(11, 5, 5)]);
}

TEST_CASE("strong coupling approaches a closed curve") {
  TorusConfig cfg{3, {0.01, 0.9, 0.9}, 2.0, 2.0};
  IntegratorSettings s;
  const auto tr = simulate(cfg, fig2_initial_conditions(), s);
  // successive maxima of x_(1,1) after the transient
  const auto x = tr.series(x_index(3, 1, 1));
  std::vector<double> peaks;
  for (std::size_t i = 20001; i + 1 < x.size(); ++i)
    if (x[i] > x[i - 1] && x[i] >= x[i + 1]) peaks.push_back(x[i]);
  REQUIRE(peaks.size() > 20);
  for (std::size_t k = 1; k < peaks.size(); ++k) CHECK(std::abs(peaks[k] - peaks[k - 1]) < 0.01 * peaks[k - 1]);
}

TEST_CASE("flow equivariance") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto st = short_run(10.0);
  for (int n : {3, 4}) {
    TorusConfig cfg{n, {0.01, 0.9, 0.9}, 2.0, 2.0};
    NetworkState ic(torus_dim(n));
    for (auto& v : ic) v = u(rng);
    const auto base = simulate(cfg, ic, st);
    const auto end = base.row(base.size() - 1);
    for (auto g : {GroupGenerator::SigmaShift, GroupGenerator::RhoShift, GroupGenerator::VarpiNegation}) {
      const auto moved = simulate(cfg, apply_generator(g, ic, n), st);
      const auto want = apply_generator(g, end, n);
      const auto got = moved.row(moved.size() - 1);
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-6);
    }
  }
}

TEST_CASE("divergence guard and dimension checks") {
  const auto blow = [](std::span<const double> s, std::span<double> out) { out[0] = s[0] * s[0]; };
  try {
    integrate(blow, {1.0}, short_run(5.0));
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.time() > 0.9);
    CHECK(e.time() < 1.1);
    CHECK(std::string(e.what()).find("diverged at t=") != std::string::npos);
  }
  TorusConfig cfg{3, {0.01, 0.9, 0.9}, 2.0, 2.0};
  CHECK_THROWS_AS(simulate(cfg, NetworkState(17, 0.0), short_run(1.0)), DimensionError);
  CHECK_THROWS_AS(simulate(TwoToriConfig{cfg, 0.5}, NetworkState(18, 0.0), short_run(1.0)), DimensionError);
  auto bad = short_run(1.0);
  bad.dt = 0;
  CHECK_THROWS_AS(validate(bad), InvalidArgumentError);
  bad = short_run(1.0);
  bad.transient_discard = 2.0;
  CHECK_THROWS_AS(validate(bad), InvalidArgumentError);
}

TEST_CASE("two-tori trajectory split") {
  TwoToriConfig cfg{{3, {0.01, 0.9, 0.9}, 2.0, 2.0}, 0.5};
  NetworkState ic = fig2_initial_conditions();
  const auto u = uniform_initial_conditions(3);
  ic.insert(ic.end(), u.begin(), u.end());
  const auto tr = simulate(cfg, ic, short_run(1.0));
  CHECK(tr.dim == 36);
  const auto t2 = tr.torus(1);
  CHECK(t2.dim == 18);
  CHECK(t2.row(0)[0] == u[0]);
  CHECK(tr.torus(0).row(5)[3] == tr.row(5)[3]);
  CHECK(std::holds_alternative<TorusConfig>(t2.config));
  CHECK_THROWS_AS(tr.torus(2), InvalidArgumentError);
}
