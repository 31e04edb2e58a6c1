#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vascflow {

/// Sampled pressure, flow and area of one vessel.  1D runs sample the vessel
/// midpoint, 0D runs the compartment observables; the schema is shared.
struct VesselSeries {
  std::string id;
  std::vector<double> t;
  std::vector<double> P;
  std::vector<double> Q;
  std::vector<double> A;

  std::size_t size() const noexcept { return t.size(); }
  void push(double time, double p, double q, double a) {
    t.push_back(time);
    P.push_back(p);
    Q.push_back(q);
    A.push_back(a);
  }
};

struct RunTiming {
  double loop_seconds = 0.0;       // whole time-stepping loop
  double seconds_per_cycle = 0.0;  // mean over post-transient cycles
  std::size_t steps = 0;
};

struct SimulationResult {
  std::vector<VesselSeries> series;
  RunTiming timing;
  double period = 0.0;
  double t_end = 0.0;
  /// Cycle index k (0-based) such that cycles k-1 and k agree within the
  /// periodicity threshold; empty when never reached.
  std::optional<std::size_t> periodic_cycle;

  const VesselSeries& at(const std::string& id) const;
};

}  // namespace vascflow
