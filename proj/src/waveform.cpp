#include "vascflow/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vascflow/errors.hpp"

namespace vascflow {

WaveformSeries::WaveformSeries(std::vector<double> times, std::vector<double> values, double period)
    : times_(std::move(times)), values_(std::move(values)), period_(period) {
  if (times_.empty()) throw DomainError("waveform has no samples");
  if (times_.size() != values_.size()) throw DomainError("waveform time/value length mismatch");
  if (!(period_ > 0.0)) throw DomainError("waveform period must be positive");
  if (times_.front() != 0.0) throw DomainError("waveform must start at t = 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw DomainError("waveform times must be strictly increasing");
  }
  if (times_.back() > period_) throw DomainError("waveform sample beyond the period");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("waveform contains a non-finite value");
  }
}

double WaveformSeries::evaluate(double t) const {
  double s = std::fmod(t, period_);
  if (s < 0.0) s += period_;
  const auto it = std::upper_bound(times_.begin(), times_.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  if (hi == times_.size()) {
    // Wrap segment [t_last, T0] interpolates back to the first sample.
    const double span = period_ - times_.back();
    if (span <= 0.0) return values_.back();
    const double w = (s - times_.back()) / span;
    return (1.0 - w) * values_.back() + w * values_.front();
  }
  const double w = (s - times_[lo]) / (times_[hi] - times_[lo]);
  return (1.0 - w) * values_[lo] + w * values_[hi];
}

double WaveformSeries::integral() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < times_.size(); ++i) {
    sum += 0.5 * (values_[i] + values_[i - 1]) * (times_[i] - times_[i - 1]);
  }
  sum += 0.5 * (values_.back() + values_.front()) * (period_ - times_.back());
  return sum;
}

WaveformSeries synthetic_inflow(const SyntheticInflow& p, int systole_samples) {
  if (!(p.systole_fraction > 0.0 && p.systole_fraction < 1.0)) {
    throw DomainError("systole fraction must lie in (0, 1)");
  }
  if (!(p.period > 0.0)) throw DomainError("period must be positive");
  if (systole_samples < 2) systole_samples = 2;
  if (systole_samples % 2) ++systole_samples;  // keeps the peak on the grid

  const double ts = p.systole_fraction * p.period;
  std::vector<double> t;
  std::vector<double> q;
  t.reserve(static_cast<std::size_t>(2 * systole_samples));
  q.reserve(t.capacity());
  for (int k = 0; k <= systole_samples; ++k) {
    const double tk = ts * k / systole_samples;
    t.push_back(tk);
    q.push_back(k == systole_samples ? 0.0 : p.q_max * std::sin(std::numbers::pi * tk / ts));
  }
  // Diastole is identically zero, so one more sample at T0 is enough.
  t.push_back(p.period);
  q.push_back(0.0);
  return WaveformSeries(std::move(t), std::move(q), p.period);
}

WaveformSeries synthetic_inflow(double period, double systole_fraction, double q_max) {
  return synthetic_inflow(SyntheticInflow{period, systole_fraction, q_max});
}

}  // namespace vascflow
