#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "torusfhn/analysis.hpp"
#include "torusfhn/errors.hpp"

using namespace torusfhn;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> sampled(const std::function<double(double)>& f, double dt, double t_end) {
  std::vector<double> out;
  for (std::size_t i = 0; i * dt <= t_end + 1e-9; ++i) out.push_back(f(static_cast<double>(i) * dt));
  return out;
}

// Single-torus trajectory with x(alpha, beta, t) given, y = x shifted by a quarter period.
Trajectory synthetic(int n, const std::function<double(int, int, double)>& x, double dt = 0.05,
                     double t_end = 200.0, double discard = 50.0) {
  Trajectory tr;
  tr.dim = torus_dim(n);
  tr.settings.dt = dt;
  tr.settings.t_end = t_end;
  tr.settings.transient_discard = discard;
  tr.config = TorusConfig{n, {}, 0.0, 0.0};
  for (std::size_t i = 0; i * dt <= t_end + 1e-9; ++i) {
    const double t = static_cast<double>(i) * dt;
    tr.times.push_back(t);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        tr.data.push_back(x(a, b, t));
        tr.data.push_back(0.5 * x(a, b, t - 0.7));
      }
  }
  return tr;
}

Trajectory relabel(const Trajectory& tr, GroupGenerator g, int n) {
  Trajectory out = tr;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto moved = apply_generator(g, tr.row(i), n);
    std::copy(moved.begin(), moved.end(), out.data.begin() + static_cast<std::ptrdiff_t>(i * tr.dim));
  }
  return out;
}

Trajectory fig2_run(double coupling) {
  return simulate(TorusConfig{3, {0.01, 0.9, 0.9}, coupling, coupling}, fig2_initial_conditions(), IntegratorSettings{});
}

}  // namespace

TEST_CASE("psd of a sinusoid") {
  const auto s = sampled([](double t) { return std::sin(kTwoPi * 0.4 * t); }, 0.01, 200.0);
  const auto ps = psd(s, 0.01);
  CHECK(ps.resolution == doctest::Approx(1.0 / (s.size() * 0.01)));
  CHECK(ps.freqs.size() == s.size() / 2 + 1);
  std::size_t peak = 1;
  for (std::size_t k = 1; k < ps.power.size(); ++k)
    if (ps.power[k] > ps.power[peak]) peak = k;
  CHECK(std::abs(ps.freqs[peak] - 0.4) <= ps.resolution);
  CHECK(dominant_frequency(ps) == doctest::Approx(0.4).epsilon(0.005 / 0.4));
}

TEST_CASE("psd Parseval") {
  for (std::size_t len : {64u, 257u, 1000u}) {
    std::vector<double> s(len);
    for (std::size_t i = 0; i < len; ++i) s[i] = std::sin(0.37 * i) + 0.3 * std::cos(1.9 * i + 0.2) + 0.01 * i;
    double mean = 0.0;
    for (double v : s) mean += v / static_cast<double>(len);
    double ms = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(len)));
      ms += std::pow((s[i] - mean) * w, 2) / static_cast<double>(len);
    }
    const auto ps = psd(s, 0.1);
    double total = 0.0;
    for (double p : ps.power) total += p;
    CHECK(total == doctest::Approx(ms).epsilon(1e-10));
  }
}

TEST_CASE("constant and short series") {
  const std::vector<double> flat(500, 3.25);
  const auto ps = psd(flat, 0.01);
  double total = 0.0;
  for (double p : ps.power) total += p;
  CHECK(total < 1e-12);
  CHECK_THROWS_AS(dominant_frequency(ps), SignalError);
  CHECK_THROWS_AS(psd(std::vector<double>(63, 1.0), 0.01), SignalError);
  CHECK_THROWS_AS(psd(std::vector<double>(100, 1.0), 0.0), InvalidArgumentError);
}

TEST_CASE("two tones at f and 3f") {
  const double f = 0.25;
  const auto s = sampled([&](double t) { return std::sin(kTwoPi * f * t) + std::sin(kTwoPi * 3 * f * t); }, 0.01, 200.0);
  const auto ps = psd(s, 0.01);
  // the two largest local maxima
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t k = 1; k + 1 < ps.power.size(); ++k)
    if (ps.power[k] > ps.power[k - 1] && ps.power[k] >= ps.power[k + 1]) peaks.push_back({ps.power[k], ps.freqs[k]});
  std::sort(peaks.rbegin(), peaks.rend());
  REQUIRE(peaks.size() >= 2);
  const double lo = std::min(peaks[0].second, peaks[1].second);
  const double hi = std::max(peaks[0].second, peaks[1].second);
  CHECK(std::abs(lo - f) <= ps.resolution);
  CHECK(hi / lo == doctest::Approx(3.0).epsilon(2 * ps.resolution / lo));
}

TEST_CASE("phase shift estimator") {
  const double f = 0.5, dt = 0.01;
  auto wave = [&](double lag) {
    return sampled([&](double t) { return std::sin(kTwoPi * f * (t - lag)) + 0.3 * std::sin(kTwoPi * 2 * f * (t - lag)); },
                   dt, 100.0);
  };
  const auto a = wave(0.0);
  CHECK(circular_distance(phase_shift(a, a, dt), 0.0) < 1e-4);
  const auto b = wave(1.0 / (3 * f));
  CHECK(phase_shift(a, b, dt) == doctest::Approx(1.0 / 3).epsilon(0.02 * 3));
  for (double lag : {0.1, 0.45, 0.8, 1.7}) {
    const auto c = wave(lag);
    const double ab = phase_shift(a, c, dt);
    const double ba = phase_shift(c, a, dt);
    CHECK(circular_distance(ab + ba, 0.0) < 0.01);
    CHECK(circular_distance(ab, lag * f) < 0.01);
  }
  const auto other = sampled([&](double t) { return std::sin(kTwoPi * 1.3 * t); }, dt, 100.0);
  CHECK_THROWS_AS(phase_shift(a, other, dt), SignalError);
  CHECK_THROWS_AS(phase_shift(a, std::vector<double>(a.size() - 1, 0.0), dt), DimensionError);
  CHECK(circular_distance(0.98, 0.01) == doctest::Approx(0.03));
}

TEST_CASE("diagonal translation on synthetic lattices") {
  const double f = 0.4;
  for (int n : {3, 4, 5}) {
    const auto wave = synthetic(n, [&](int a, int b, double t) { return std::sin(kTwoPi * (f * t - double(a + b) / n)); });
    CHECK(check_diagonal_translation(wave));
    CHECK(check_diagonal_translation(wave, 2.0 / n, f));
    CHECK_FALSE(check_diagonal_translation(wave, 2.0 / n + 0.15, f));
  }
  const auto inphase = synthetic(3, [&](int, int, double t) { return std::sin(kTwoPi * f * t); });
  CHECK(check_diagonal_translation(inphase, 0.0, f));
  CHECK_FALSE(check_diagonal_translation(inphase, 1.0 / 3, f));
  const auto messy = synthetic(3, [&](int a, int b, double t) { return std::sin(kTwoPi * (f * t - 0.1 * a * a - 0.37 * b * b)); });
  CHECK_THROWS_AS(check_diagonal_translation(messy), SignalError);
}

TEST_CASE("classify synthetic patterns") {
  const double f = 0.4;
  const auto wave = synthetic(3, [&](int a, int b, double t) { return std::sin(kTwoPi * (f * t - double(a + 2 * b) / 3)); });
  auto r = classify_pattern(wave);
  CHECK(r.kind == PatternKind::RotatingWave);
  REQUIRE(r.phase_shift);
  CHECK(circular_distance(*r.phase_shift, 2.0 / 3) < 0.02);
  CHECK(*r.diagonal_symmetry_ok);
  CHECK(r.dominant_freq_per_neuron.size() == 9);
  CHECK(*r.consensus_frequency == doctest::Approx(f).epsilon(0.01));

  const auto inphase = synthetic(3, [&](int, int, double t) { return std::sin(kTwoPi * f * t); });
  CHECK(classify_pattern(inphase).kind == PatternKind::InPhase);

  const auto decay = synthetic(3, [&](int a, int, double t) { return std::exp(-t) * std::sin(t + a); });
  r = classify_pattern(decay);
  CHECK(r.kind == PatternKind::Decay);
  CHECK(r.amplitude < 1e-4);

  const auto irrational = synthetic(3, [&](int a, int b, double t) { return std::sin(kTwoPi * (f * t - 0.21 * (a + b))); });
  CHECK(classify_pattern(irrational).kind == PatternKind::Unclassified);

  const auto mixed = synthetic(3, [&](int a, int, double t) { return std::sin(kTwoPi * (a == 1 ? 3 * f : f) * t); });
  r = classify_pattern(mixed);
  CHECK(r.kind == PatternKind::Unclassified);
  CHECK(!r.note.empty());

  const auto still = synthetic(3, [&](int a, int b, double) { return 1.0 + a + b; });
  r = classify_pattern(still);
  CHECK(r.kind == PatternKind::Unclassified);
  CHECK(r.note == "no oscillation");
}

TEST_CASE("weak and strong coupling runs") {
  const auto low = classify_pattern(fig2_run(0.1));
  CHECK(low.kind == PatternKind::Decay);

  const auto tr = fig2_run(2.0);
  const auto high = classify_pattern(tr);
  CHECK(high.kind == PatternKind::RotatingWave);
  REQUIRE(high.phase_shift);
  CHECK(circular_distance(*high.phase_shift, 1.0 / 3) < 0.02);
  CHECK(std::abs(3 * *high.phase_shift - std::round(3 * *high.phase_shift)) < 0.05);
  const auto w = analysis_window(tr);
  const double dt = w.settings.sample_interval();
  CHECK(circular_distance(phase_shift(w.series(x_index(3, 0, 0)), w.series(x_index(3, 0, 1)), dt), 1.0 / 3) < 0.02);
  CHECK(check_diagonal_translation(tr));

  // relabelling by the symmetry group leaves the kind unchanged
  for (auto g : {GroupGenerator::SigmaShift, GroupGenerator::RhoShift, GroupGenerator::VarpiNegation}) {
    const auto r = classify_pattern(relabel(tr, g, 3));
    CHECK(r.kind == PatternKind::RotatingWave);
    CHECK(circular_distance(*r.phase_shift, *high.phase_shift) < 0.02);
  }

  // step-size robustness
  IntegratorSettings half;
  half.dt = 0.005;
  half.record_stride = 2;
  for (double g : {0.1, 2.0}) {
    const auto r = classify_pattern(simulate(TorusConfig{3, {0.01, 0.9, 0.9}, g, g}, fig2_initial_conditions(), half));
    CHECK(r.kind == (g < 1 ? PatternKind::Decay : PatternKind::RotatingWave));
  }
}

TEST_CASE("uniform initial conditions never give a rotating wave") {
  for (double g : {0.1, 0.5, 2.0}) {
    const auto r =
        classify_pattern(simulate(TorusConfig{3, {0.01, 0.9, 0.9}, g, g}, uniform_initial_conditions(3), IntegratorSettings{}));
    CHECK(r.kind != PatternKind::RotatingWave);
  }
  // a = c beyond the Hopf point: every neuron oscillates together
  const auto r = classify_pattern(
      simulate(TorusConfig{3, {0.3, 0.9, 0.2}, 0.5, 0.5}, uniform_initial_conditions(3), IntegratorSettings{}));
  CHECK(r.kind == PatternKind::InPhase);
}

TEST_CASE("two tori frequency ratio") {
  TwoToriConfig cfg{{3, {0.01, 0.9, 0.9}, 2.0, 2.0}, 0.5};
  NetworkState ic = fig2_initial_conditions();
  const auto u = uniform_initial_conditions(3);
  ic.insert(ic.end(), u.begin(), u.end());
  const auto rep = two_tori_report(simulate(cfg, ic, IntegratorSettings{}));
  CHECK(rep.torus1.kind == PatternKind::RotatingWave);
  CHECK(rep.torus2.kind == PatternKind::InPhase);
  CHECK(rep.freq_ratio == doctest::Approx(3.0).epsilon(0.05));

  cfg.epsilon = 0.0;
  NetworkState twin = fig2_initial_conditions();
  twin.insert(twin.end(), twin.begin(), twin.end());
  const auto dec = two_tori_report(simulate(cfg, twin, IntegratorSettings{}));
  CHECK(dec.freq_ratio == doctest::Approx(1.0).epsilon(1e-9));

  // synthetic: torus #2 is torus #1 compressed 3x in time
  Trajectory syn;
  syn.dim = 36;
  syn.settings.dt = 0.05;
  syn.settings.t_end = 300;
  syn.settings.transient_discard = 50;
  syn.config = TwoToriConfig{{3, {}, 0, 0}, 0.5};
  const double f = 0.3;
  auto x = [&](int a, int b, double t) { return std::sin(kTwoPi * (f * t - double(a + b) / 3)) + 0.2 * std::cos(kTwoPi * 2 * f * t); };
  for (std::size_t i = 0; i * 0.05 <= 300.0 + 1e-9; ++i) {
    const double t = 0.05 * static_cast<double>(i);
    syn.times.push_back(t);
    for (int torus = 0; torus < 2; ++torus)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double tt = torus == 0 ? t : 3 * t;
          syn.data.push_back(x(a, b, tt));
          syn.data.push_back(x(a, b, tt - 0.5));
        }
  }
  const auto sr = two_tori_report(syn);
  const double bins = 2 * (1.0 / 250.0) / f;
  CHECK(sr.freq_ratio == doctest::Approx(3.0).epsilon(bins));
  CHECK_THROWS_AS(two_tori_report(fig2_run(2.0)), InvalidArgumentError);

  // a decayed torus has no frequency
  TwoToriConfig weak{{3, {0.01, 0.9, 0.9}, 0.1, 0.1}, 0.0};
  CHECK_THROWS_AS(two_tori_report(simulate(weak, twin, IntegratorSettings{})), SignalError);
}
