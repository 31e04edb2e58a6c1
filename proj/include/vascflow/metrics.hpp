#pragma once

// Waveform comparison: relative error metrics, periodicity detection, speedup.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vascflow/series.hpp"

namespace vascflow {

/// Samples over exactly one cardiac cycle, times measured from the cycle start.
/// A may be empty when area is not compared.
struct CycleSeries {
  std::vector<double> t;
  std::vector<double> P;
  std::vector<double> Q;
  std::vector<double> A;

  std::size_t size() const noexcept { return t.size(); }
};

/// The six relative errors as fractions (multiply by 100 for percent).
struct ErrorReport {
  double P_rms = 0.0;
  double Q_rms = 0.0;
  double P_sys = 0.0;
  double Q_sys = 0.0;
  double P_dias = 0.0;
  double Q_dias = 0.0;
};

/// Samples of the cycle [t_start, t_start + period], both ends included.
CycleSeries extract_cycle(const VesselSeries& series, double t_start, double period);
/// Final complete cycle of the series.
CycleSeries last_cycle(const VesselSeries& series, double period);

/// Linear interpolation of every channel onto the given grid.
CycleSeries resample(const CycleSeries& series, std::span<const double> grid);

/// Test is first resampled onto the reference grid.  Throws DomainError on a
/// zero reference pressure sample, zero max reference flow, or mismatched spans.
ErrorReport error_metrics(const CycleSeries& test, const CycleSeries& reference);

/// L-infinity gap between normalized consecutive cycles: P and A by their
/// cycle means, Q by max |Q| of the cycle.
double periodicity_gap(const CycleSeries& current, const CycleSeries& previous);
bool periodicity_reached(const CycleSeries& current, const CycleSeries& previous, double threshold = 1e-3);

/// First cycle index k >= 1 at which cycles k-1 and k agree in every series.
std::optional<std::size_t> find_periodic_cycle(std::span<const VesselSeries> series, double period,
                                               double threshold = 1e-3);

double speedup(double seconds_per_cycle_1d, double seconds_per_cycle_0d);

/// Mean of per-cycle durations from the periodic cycle onward, or of all
/// cycles after the first when periodicity was never reached.
double mean_cycle_seconds(std::span<const double> cycle_seconds, std::optional<std::size_t> periodic_cycle);

}  // namespace vascflow
