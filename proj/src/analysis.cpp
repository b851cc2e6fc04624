#include "torusfhn/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "torusfhn/errors.hpp"

namespace torusfhn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    if (!in_ || !out_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_.get(); }
  void execute() { fftw_execute(plan_); }
  std::complex<double> bin(std::size_t k) const { return {out_.get()[k][0], out_.get()[k][1]}; }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

double wrap_unit(double phi) {
  double r = std::fmod(phi, 1.0);
  if (r < 0.0) r += 1.0;
  if (r >= 1.0) r = 0.0;
  return r;
}

double circular_mean(const std::vector<double>& phases) {
  double sx = 0.0;
  double sy = 0.0;
  for (double p : phases) {
    sx += std::cos(kTwoPi * p);
    sy += std::sin(kTwoPi * p);
  }
  return wrap_unit(std::atan2(sy, sx) / kTwoPi);
}

int lattice_side(const Trajectory& traj) {
  if (const auto* cfg = std::get_if<TorusConfig>(&traj.config)) return cfg->n;
  if (std::holds_alternative<TwoToriConfig>(traj.config)) {
    throw InvalidArgumentError("single-torus analysis applied to a two-tori trajectory");
  }
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(traj.dim) / 2.0)));
  if (torus_dim(n) != traj.dim) throw DimensionError("trajectory width is not 2N^2");
  return n;
}

/// Linear interpolation of s at fractional sample index pos.
double sample_at(const std::vector<double>& s, double pos) {
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= s.size()) return s.back();
  return s[i] + frac * (s[i + 1] - s[i]);
}

struct LatticePhases {
  double frequency;
  std::vector<double> phase;  // lag of each neuron behind (0,0), row-major
};

LatticePhases lattice_phases(const Trajectory& window, int n) {
  const double dt = window.settings.sample_interval();
  const auto ref = window.series(x_index(n, 0, 0));
  LatticePhases out{dominant_frequency(psd(ref, dt)), {}};
  out.phase.reserve(static_cast<std::size_t>(n) * n);
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) {
      out.phase.push_back(phase_shift(ref, window.series(x_index(n, alpha, beta)), dt));
    }
  }
  return out;
}

struct AxisShift {
  double mean;
  double spread;  // largest circular deviation from the mean
};

/// Shift from (alpha, beta) to its forward neighbour along one axis.
AxisShift axis_shift(const std::vector<double>& phase, int n, bool along_beta) {
  std::vector<double> diffs;
  diffs.reserve(phase.size());
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) {
      const int na = along_beta ? alpha : (alpha + 1) % n;
      const int nb = along_beta ? (beta + 1) % n : beta;
      diffs.push_back(wrap_unit(phase[static_cast<std::size_t>(na * n + nb)] -
                                phase[static_cast<std::size_t>(alpha * n + beta)]));
    }
  }
  const double mean = circular_mean(diffs);
  double spread = 0.0;
  for (double d : diffs) spread = std::max(spread, circular_distance(d, mean));
  return {mean, spread};
}

}  // namespace

PowerSpectrum psd(std::span<const double> series, double dt_sample) {
  const std::size_t len = series.size();
  if (len < kMinSeriesLength) {
    throw SignalError("series too short for a spectrum: " + std::to_string(len) + " < " +
                      std::to_string(kMinSeriesLength) + " samples");
  }
  if (!(dt_sample > 0.0)) throw InvalidArgumentError("sample interval must be positive");

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(len);

  RealFft fft(len);
  double* in = fft.input();
  for (std::size_t i = 0; i < len; ++i) {
    const double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(len)));
    in[i] = (series[i] - mean) * w;
  }
  fft.execute();

  const std::size_t bins = len / 2 + 1;
  const double norm = 1.0 / (static_cast<double>(len) * static_cast<double>(len));
  PowerSpectrum ps;
  ps.resolution = 1.0 / (static_cast<double>(len) * dt_sample);
  ps.freqs.resize(bins);
  ps.power.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const bool unpaired = k == 0 || (len % 2 == 0 && k == len / 2);
    ps.freqs[k] = static_cast<double>(k) * ps.resolution;
    ps.power[k] = (unpaired ? 1.0 : 2.0) * std::norm(fft.bin(k)) * norm;
  }
  return ps;
}

double dominant_frequency(const PowerSpectrum& ps) {
  const auto& p = ps.power;
  double total = 0.0;
  for (double v : p) total += v;
  if (p.size() < 3 || !(total > kNoOscillationPower)) throw SignalError("no oscillation");

  std::size_t peak = 1;
  for (std::size_t k = 2; k < p.size(); ++k) {
    if (p[k] > p[peak]) peak = k;
  }
  double offset = 0.0;
  if (peak + 1 < p.size()) {
    const double denom = p[peak - 1] - 2.0 * p[peak] + p[peak + 1];
    if (denom < 0.0) offset = 0.5 * (p[peak - 1] - p[peak + 1]) / denom;
  }
  return (static_cast<double>(peak) + offset) * ps.resolution;
}

double phase_shift(std::span<const double> a, std::span<const double> b, double dt_sample) {
  if (a.size() != b.size()) throw DimensionError("phase_shift: series differ in length");
  const auto pa = psd(a, dt_sample);
  const auto pb = psd(b, dt_sample);
  const double fa = dominant_frequency(pa);
  const double fb = dominant_frequency(pb);
  if (std::abs(fa - fb) > kFrequencyBinTolerance * pa.resolution) {
    throw SignalError("not phase-comparable: dominant frequencies " + std::to_string(fa) + " and " +
                      std::to_string(fb) + " differ by more than " + std::to_string(kFrequencyBinTolerance) +
                      " bins");
  }
  const double period = 1.0 / (0.5 * (fa + fb) * dt_sample);  // in samples
  const auto max_lag = static_cast<std::size_t>(std::ceil(period));
  const std::size_t len = a.size();
  if (len < max_lag + 3 + kMinSeriesLength / 2) throw SignalError("series shorter than the lag range");
  const std::size_t m = len - max_lag - 2;

  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(len);
  mb /= static_cast<double>(len);

  // corr[j] holds the correlation at lag j - 1, lags -1 .. max_lag + 1
  std::vector<double> corr(max_lag + 3, 0.0);
  for (std::size_t j = 0; j < corr.size(); ++j) {
    double sum = 0.0;
    for (std::size_t t = 1; t < 1 + m; ++t) sum += (a[t] - ma) * (b[t + j - 1] - mb);
    corr[j] = sum / static_cast<double>(m);
  }
  std::size_t best = 1;
  for (std::size_t j = 2; j <= max_lag; ++j) {
    if (corr[j] > corr[best]) best = j;
  }
  double offset = 0.0;
  const double denom = corr[best - 1] - 2.0 * corr[best] + corr[best + 1];
  if (denom < 0.0) offset = 0.5 * (corr[best - 1] - corr[best + 1]) / denom;
  const double lag = static_cast<double>(best) - 1.0 + offset;
  return wrap_unit(lag / period);
}

double circular_distance(double phi, double psi) {
  const double d = wrap_unit(phi - psi);
  return std::min(d, 1.0 - d);
}

Trajectory analysis_window(const Trajectory& traj) {
  Trajectory out;
  out.dim = traj.dim;
  out.settings = traj.settings;
  out.config = traj.config;
  const double start = traj.settings.transient_discard - 1e-9 * traj.settings.dt;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] < start) continue;
    out.times.push_back(traj.times[i]);
    const auto r = traj.row(i);
    out.data.insert(out.data.end(), r.begin(), r.end());
  }
  return out;
}

double diagonal_translation_error(const Trajectory& traj, double diag_shift, double frequency) {
  if (!(frequency > 0.0)) throw InvalidArgumentError("frequency must be positive");
  const auto window = analysis_window(traj);
  const int n = lattice_side(window);
  const double dt = window.settings.sample_interval();
  const double period = 1.0 / (frequency * dt);  // in samples
  std::vector<std::vector<double>> xs;
  xs.reserve(static_cast<std::size_t>(n) * n);
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) xs.push_back(window.series(x_index(n, alpha, beta)));
  }
  const std::size_t len = window.size();

  double worst = 0.0;
  for (int k = 1; k < n; ++k) {
    const double shift = wrap_unit(k * diag_shift) * period;
    const auto first = static_cast<std::size_t>(std::ceil(shift)) + 1;
    if (first + kMinSeriesLength / 2 > len) throw SignalError("window too short for the diagonal shift");
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int beta = 0; beta < n; ++beta) {
        const auto& src = xs[static_cast<std::size_t>(alpha * n + beta)];
        const auto& dst = xs[static_cast<std::size_t>(((alpha + k) % n) * n + (beta + k) % n)];
        double mean = 0.0;
        for (double v : src) mean += v;
        mean /= static_cast<double>(len);
        double ref = 0.0;
        double err = 0.0;
        for (std::size_t t = first; t < len; ++t) {
          const double shifted = sample_at(src, static_cast<double>(t) - shift);
          err += (dst[t] - shifted) * (dst[t] - shifted);
          ref += (src[t] - mean) * (src[t] - mean);
        }
        const double rel = ref > 0.0 ? std::sqrt(err / ref) : (err > 0.0 ? HUGE_VAL : 0.0);
        worst = std::max(worst, rel);
      }
    }
  }
  return worst;
}

bool check_diagonal_translation(const Trajectory& traj, double diag_shift, double frequency) {
  return diagonal_translation_error(traj, diag_shift, frequency) < kDiagonalRmsTolerance;
}

bool check_diagonal_translation(const Trajectory& traj) {
  const auto window = analysis_window(traj);
  const int n = lattice_side(window);
  const auto lp = lattice_phases(window, n);
  const auto row = axis_shift(lp.phase, n, true);
  const auto col = axis_shift(lp.phase, n, false);
  if (row.spread > kPhaseTolerance || col.spread > kPhaseTolerance) {
    throw SignalError("not a rotating wave: neighbour phase shifts are not uniform");
  }
  return check_diagonal_translation(traj, wrap_unit(row.mean + col.mean), lp.frequency);
}

PatternReport classify_pattern(const Trajectory& traj) {
  PatternReport report;
  const auto window = analysis_window(traj);
  const int n = lattice_side(window);
  if (window.size() < kMinSeriesLength) {
    report.note = "analysis window shorter than " + std::to_string(kMinSeriesLength) + " samples";
    return report;
  }
  for (double v : window.data) report.amplitude = std::max(report.amplitude, std::abs(v));
  if (report.amplitude < kDecayAmplitude) {
    report.kind = PatternKind::Decay;
    return report;
  }

  const double dt = window.settings.sample_interval();
  double resolution = 0.0;
  try {
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int beta = 0; beta < n; ++beta) {
        const auto ps = psd(window.series(x_index(n, alpha, beta)), dt);
        resolution = ps.resolution;
        report.dominant_freq_per_neuron.push_back(dominant_frequency(ps));
      }
    }
  } catch (const SignalError& e) {
    report.dominant_freq_per_neuron.clear();
    report.note = e.what();
    return report;
  }
  auto sorted = report.dominant_freq_per_neuron;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  const double consensus = sorted[sorted.size() / 2];
  report.consensus_frequency = consensus;
  for (double f : report.dominant_freq_per_neuron) {
    if (std::abs(f - consensus) > kFrequencyBinTolerance * resolution) {
      report.note = "neurons do not share a dominant frequency";
      return report;
    }
  }

  LatticePhases lp;
  try {
    lp = lattice_phases(window, n);
  } catch (const SignalError& e) {
    report.note = e.what();
    return report;
  }

  double worst_pair = 0.0;
  for (double p : lp.phase) {
    for (double q : lp.phase) worst_pair = std::max(worst_pair, circular_distance(p, q));
  }
  if (worst_pair < kPhaseTolerance) {
    report.kind = PatternKind::InPhase;
    return report;
  }

  const auto row = axis_shift(lp.phase, n, true);
  const auto col = axis_shift(lp.phase, n, false);
  auto quantized = [n](double shift) {
    const long k = std::lround(shift * n) % n;
    return circular_distance(shift, static_cast<double>(k) / n) <= kPhaseTolerance;
  };
  if (row.spread > kPhaseTolerance || col.spread > kPhaseTolerance || !quantized(row.mean) || !quantized(col.mean)) {
    report.note = "phase relations match neither in-phase nor a discrete rotating wave";
    return report;
  }
  const bool diagonal_ok = check_diagonal_translation(window, wrap_unit(row.mean + col.mean), lp.frequency);
  report.diagonal_symmetry_ok = diagonal_ok;
  if (!diagonal_ok) {
    report.note = "diagonal translation check failed";
    return report;
  }
  report.kind = PatternKind::RotatingWave;
  report.phase_shift = row.mean;
  return report;
}

TwoToriReport two_tori_report(const Trajectory& traj) {
  if (!std::holds_alternative<TwoToriConfig>(traj.config)) {
    throw InvalidArgumentError("two_tori_report requires a two-tori trajectory");
  }
  TwoToriReport out{classify_pattern(traj.torus(0)), classify_pattern(traj.torus(1)), 0.0};
  if (!out.torus1.consensus_frequency) {
    throw SignalError("torus #1 has no dominant frequency (" + std::string(to_string(out.torus1.kind)) + ")");
  }
  if (!out.torus2.consensus_frequency) {
    throw SignalError("torus #2 has no dominant frequency (" + std::string(to_string(out.torus2.kind)) + ")");
  }
  out.freq_ratio = *out.torus2.consensus_frequency / *out.torus1.consensus_frequency;
  return out;
}

const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::RotatingWave: return "RotatingWave";
    case PatternKind::InPhase: return "InPhase";
    case PatternKind::Decay: return "Decay";
    case PatternKind::Unclassified: return "Unclassified";
  }
  return "?";
}

}  // namespace torusfhn
