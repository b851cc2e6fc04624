#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torusfhn/dynamics.hpp"

namespace torusfhn {

struct PowerSpectrum {
  std::vector<double> freqs;  // cycles per time unit
  std::vector<double> power;
  double resolution = 0.0;
};

enum class PatternKind { RotatingWave, InPhase, Decay, Unclassified };

// Classification thresholds.
inline constexpr std::size_t kMinSeriesLength = 64;
inline constexpr double kDecayAmplitude = 1e-4;
inline constexpr double kPhaseTolerance = 0.02;
inline constexpr double kDiagonalRmsTolerance = 0.05;
inline constexpr double kFrequencyBinTolerance = 2.0;
inline constexpr double kNoOscillationPower = 1e-20;

struct PatternReport {
  PatternKind kind = PatternKind::Unclassified;
  std::optional<double> phase_shift;  // row-adjacent shift, fraction of a period
  std::vector<double> dominant_freq_per_neuron;
  std::optional<bool> diagonal_symmetry_ok;
  std::optional<double> consensus_frequency;
  double amplitude = 0.0;  // max |state| over the analysis window
  std::string note;

  double phase_tolerance = kPhaseTolerance;
  double rms_tolerance = kDiagonalRmsTolerance;
  double bin_tolerance = kFrequencyBinTolerance;
  double decay_threshold = kDecayAmplitude;
};

struct TwoToriReport {
  PatternReport torus1;
  PatternReport torus2;
  double freq_ratio;
};

/// One-sided periodogram of the mean-removed, Hann-windowed series. Power sums
/// to the mean square of the windowed signal.
PowerSpectrum psd(std::span<const double> series, double dt_sample);

/// Peak bin (DC excluded) refined by a 3-point parabola.
double dominant_frequency(const PowerSpectrum& ps);

/// Lag of b behind a as a fraction of the shared period, in [0, 1):
/// b(t) ~ a(t - phase * period).
double phase_shift(std::span<const double> a, std::span<const double> b, double dt_sample);

/// min(phi, 1 - phi) after reduction mod 1.
double circular_distance(double phi, double psi);

/// Largest normalized RMS mismatch of x_{a+k,b+k}(t) against x_{a,b}(t - k*diag_shift*period).
double diagonal_translation_error(const Trajectory& traj, double diag_shift, double frequency);

bool check_diagonal_translation(const Trajectory& traj, double diag_shift, double frequency);
/// Estimates row and column shifts; the diagonal shift is their sum.
bool check_diagonal_translation(const Trajectory& traj);

/// Sub-trajectory restricted to t >= settings.transient_discard.
Trajectory analysis_window(const Trajectory& traj);

PatternReport classify_pattern(const Trajectory& traj);

TwoToriReport two_tori_report(const Trajectory& traj);

const char* to_string(PatternKind k);

}  // namespace torusfhn
