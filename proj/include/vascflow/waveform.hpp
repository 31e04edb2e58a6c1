#pragma once

#include <span>
#include <vector>

namespace vascflow {

/// Periodic sampled signal with linear interpolation.  Samples start at t = 0 and
/// end at or before the period; the segment from the last sample to T0 wraps to
/// the first sample.
class WaveformSeries {
 public:
  WaveformSeries() = default;
  WaveformSeries(std::vector<double> times, std::vector<double> values, double period);

  double evaluate(double t) const;
  double period() const noexcept { return period_; }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  bool empty() const noexcept { return times_.empty(); }

  /// Exact integral over one period of the piecewise-linear interpolant.
  double integral() const;
  double mean() const { return integral() / period_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  double period_ = 0.0;
};

struct SyntheticInflow {
  double period = 1.1;
  double systole_fraction = 0.3;
  double q_max = 70.0;
};

/// Half-sine systolic ejection followed by zero diastolic flow.
WaveformSeries synthetic_inflow(const SyntheticInflow& params, int systole_samples = 1000);
WaveformSeries synthetic_inflow(double period, double systole_fraction, double q_max);

}  // namespace vascflow
