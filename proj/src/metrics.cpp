#include "vascflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vascflow/errors.hpp"

namespace vascflow {

const VesselSeries& SimulationResult::at(const std::string& id) const {
  for (const auto& s : series) {
    if (s.id == id) return s;
  }
  throw ConfigError("no series for vessel '" + id + "'");
}

CycleSeries extract_cycle(const VesselSeries& s, double t_start, double period) {
  if (!(period > 0.0)) throw DomainError("cycle period must be positive");
  const double t_stop = t_start + period;
  const double eps = 1e-9 * period;
  CycleSeries c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.t[i] < t_start - eps || s.t[i] > t_stop + eps) continue;
    c.t.push_back(s.t[i] - t_start);
    c.P.push_back(s.P[i]);
    c.Q.push_back(s.Q[i]);
    c.A.push_back(s.A[i]);
  }
  if (c.size() < 2 || c.t.front() > eps || c.t.back() < period - eps) {
    throw DomainError("series '" + s.id + "' does not cover the requested cycle");
  }
  return c;
}

CycleSeries last_cycle(const VesselSeries& s, double period) {
  if (s.size() < 2) throw DomainError("series '" + s.id + "' is too short");
  const auto cycles = static_cast<long>(std::floor(s.t.back() / period + 1e-9));
  if (cycles < 1) throw DomainError("series '" + s.id + "' does not span a full cycle");
  return extract_cycle(s, static_cast<double>(cycles - 1) * period, period);
}

namespace {

std::vector<double> interp(std::span<const double> x, std::span<const double> y, std::span<const double> grid) {
  std::vector<double> out(grid.size());
  if (y.empty()) return {};
  std::size_t j = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    if (g <= x.front()) {
      out[i] = y.front();
      continue;
    }
    if (g >= x.back()) {
      out[i] = y.back();
      continue;
    }
    while (j + 1 < x.size() && x[j + 1] < g) ++j;
    const double w = (g - x[j]) / (x[j + 1] - x[j]);
    out[i] = (1.0 - w) * y[j] + w * y[j + 1];
  }
  return out;
}

bool same_grid(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(b[i]))) return false;
  }
  return true;
}

double mean_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

CycleSeries resample(const CycleSeries& s, std::span<const double> grid) {
  if (s.size() < 2) throw DomainError("resample: series needs at least two samples");
  CycleSeries out;
  out.t.assign(grid.begin(), grid.end());
  out.P = interp(s.t, s.P, grid);
  out.Q = interp(s.t, s.Q, grid);
  out.A = interp(s.t, s.A, grid);
  return out;
}

ErrorReport error_metrics(const CycleSeries& test, const CycleSeries& reference) {
  const std::size_t n = reference.size();
  if (n < 2) throw DomainError("error metrics: reference needs at least two samples");
  if (test.size() < 2) throw DomainError("error metrics: test needs at least two samples");
  const double span_ref = reference.t.back() - reference.t.front();
  const double span_test = test.t.back() - test.t.front();
  if (std::abs(span_ref - span_test) > 1e-6 * span_ref) throw DomainError("error metrics: cycle spans differ");

  const CycleSeries tst = same_grid(test.t, reference.t) ? test : resample(test, reference.t);

  const auto [pmin_ref, pmax_ref] = std::minmax_element(reference.P.begin(), reference.P.end());
  const auto [qmin_ref, qmax_ref] = std::minmax_element(reference.Q.begin(), reference.Q.end());
  const auto [pmin_tst, pmax_tst] = std::minmax_element(tst.P.begin(), tst.P.end());
  const auto [qmin_tst, qmax_tst] = std::minmax_element(tst.Q.begin(), tst.Q.end());
  const double qmax = *qmax_ref;
  if (qmax == 0.0) throw DomainError("error metrics: maximum reference flow is zero");
  if (*pmax_ref == 0.0 || *pmin_ref == 0.0) throw DomainError("error metrics: zero reference pressure extremum");

  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (reference.P[i] == 0.0) throw DomainError("error metrics: zero reference pressure sample");
    const double ep = (tst.P[i] - reference.P[i]) / reference.P[i];
    const double eq = (tst.Q[i] - reference.Q[i]) / qmax;
    sp += ep * ep;
    sq += eq * eq;
  }
  ErrorReport r;
  r.P_rms = std::sqrt(sp / static_cast<double>(n));
  r.Q_rms = std::sqrt(sq / static_cast<double>(n));
  r.P_sys = (*pmax_tst - *pmax_ref) / *pmax_ref;
  r.Q_sys = (*qmax_tst - qmax) / qmax;
  r.P_dias = (*pmin_tst - *pmin_ref) / *pmin_ref;
  r.Q_dias = (*qmin_tst - *qmin_ref) / qmax;
  return r;
}

double periodicity_gap(const CycleSeries& current, const CycleSeries& previous) {
  if (current.size() != previous.size() || current.size() < 2) {
    throw DomainError("periodicity check needs two cycles on the same grid");
  }
  auto channel_gap = [](std::span<const double> a, std::span<const double> b, double na, double nb) {
    if (na == 0.0 || nb == 0.0) throw DomainError("periodicity check: zero normalizer");
    double g = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] / na - b[i] / nb));
    return g;
  };
  double gap = channel_gap(current.P, previous.P, mean_of(current.P), mean_of(previous.P));
  if (!current.A.empty() && !previous.A.empty()) {
    gap = std::max(gap, channel_gap(current.A, previous.A, mean_of(current.A), mean_of(previous.A)));
  }
  const double qc = max_abs(current.Q);
  const double qp = max_abs(previous.Q);
  if (qc > 0.0 || qp > 0.0) gap = std::max(gap, channel_gap(current.Q, previous.Q, qc, qp));
  return gap;
}

bool periodicity_reached(const CycleSeries& current, const CycleSeries& previous, double threshold) {
  return periodicity_gap(current, previous) < threshold;
}

std::optional<std::size_t> find_periodic_cycle(std::span<const VesselSeries> series, double period,
                                               double threshold) {
  if (series.empty() || series.front().size() < 2) return std::nullopt;
  const auto cycles = static_cast<std::size_t>(std::floor(series.front().t.back() / period + 1e-9));
  for (std::size_t k = 1; k < cycles; ++k) {
    bool all = true;
    for (const auto& s : series) {
      const auto prev = extract_cycle(s, static_cast<double>(k - 1) * period, period);
      const auto cur = extract_cycle(s, static_cast<double>(k) * period, period);
      if (prev.size() != cur.size() || !periodicity_reached(cur, prev, threshold)) {
        all = false;
        break;
      }
    }
    if (all) return k;
  }
  return std::nullopt;
}

double speedup(double seconds_per_cycle_1d, double seconds_per_cycle_0d) {
  if (!(seconds_per_cycle_1d > 0.0) || !(seconds_per_cycle_0d > 0.0)) {
    throw DomainError("speedup needs positive timings");
  }
  return seconds_per_cycle_1d / seconds_per_cycle_0d;
}

double mean_cycle_seconds(std::span<const double> cycle_seconds, std::optional<std::size_t> periodic_cycle) {
  if (cycle_seconds.empty()) return 0.0;
  std::size_t first = periodic_cycle ? *periodic_cycle : 1;
  if (first >= cycle_seconds.size()) first = cycle_seconds.size() - 1;
  const auto tail = cycle_seconds.subspan(first);
  return std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());
}

}  // namespace vascflow
