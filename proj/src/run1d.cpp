#include <chrono>
#include <cmath>

#include "vascflow/errors.hpp"
#include "vascflow/metrics.hpp"
#include "vascflow/solver1d.hpp"

namespace vascflow {

namespace {

struct Midpoint {
  double P;
  double Q;
  double A;
};

Midpoint midpoint(const State1D& s, const VesselModel1D& model) {
  const std::size_t m = s.mesh.cells;
  if (m % 2 == 1) {
    const std::size_t i = m / 2;
    return {model.pressure(s.A[i]), s.q[i], s.A[i]};
  }
  const std::size_t i = m / 2 - 1;
  return {0.5 * (model.pressure(s.A[i]) + model.pressure(s.A[i + 1])), 0.5 * (s.q[i] + s.q[i + 1]),
          0.5 * (s.A[i] + s.A[i + 1])};
}

}  // namespace

SimulationResult run_1d(const Network& net, const Run1DOptions& opt) {
  validate_topology(net);
  if (!(opt.t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(opt.sample_interval > 0.0)) throw DomainError("sample interval must be positive");
  if (net.inflow.waveform.empty()) throw ConfigError("network has no inflow waveform");

  const std::size_t n = net.size();
  std::vector<VesselModel1D> models;
  models.reserve(n);
  std::vector<State1D> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    models.emplace_back(net.vessels[i]);
    const double A_init = i < net.initial_area.size() ? net.initial_area[i] : tube_law_area(net.p_init, net.vessels[i].wall);
    states.push_back(make_state(i, build_mesh(net.vessels[i].length, opt.dx_max), A_init));
  }
  std::vector<double> P_wk(net.terminals.size(), net.p_init);
  std::vector<std::size_t> terminal_index(n, net.terminals.size());
  for (std::size_t k = 0; k < net.terminals.size(); ++k) terminal_index[net.terminals[k].vessel] = k;

  SimulationResult result;
  result.period = net.inflow.waveform.period();
  result.t_end = opt.t_end;
  result.series.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.series[i].id = net.vessels[i].id;

  auto record = [&](double t, const std::vector<Midpoint>& before, const std::vector<Midpoint>& after, double t0,
                    double t1) {
    const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      result.series[i].push(t, (1.0 - w) * before[i].P + w * after[i].P, (1.0 - w) * before[i].Q + w * after[i].Q,
                            (1.0 - w) * before[i].A + w * after[i].A);
    }
  };
  auto midpoints = [&] {
    std::vector<Midpoint> mp(n);
    for (std::size_t i = 0; i < n; ++i) mp[i] = midpoint(states[i], models[i]);
    return mp;
  };

  const auto n_samples = static_cast<std::size_t>(std::floor(opt.t_end / opt.sample_interval + 1e-9)) + 1;
  std::size_t next_sample = 0;
  std::vector<Midpoint> previous = midpoints();
  record(0.0, previous, previous, 0.0, 0.0);
  next_sample = 1;

  std::vector<MusclHancock> schemes(n);
  std::vector<Conserved> left_bc(n);
  std::vector<Conserved> right_bc(n);
  std::vector<JunctionMember> members;

  const double period = result.period;
  std::vector<double> cycle_seconds;
  std::size_t next_cycle = 1;

  double t = 0.0;
  std::size_t steps = 0;
  const auto clock_start = std::chrono::steady_clock::now();
  auto cycle_start = clock_start;
  while (t < opt.t_end - 1e-12 * opt.t_end) {
    double dt = cfl_dt(states, models, opt.cfl);
    if (t + dt > opt.t_end) dt = opt.t_end - t;

    for (std::size_t i = 0; i < n; ++i) schemes[i].predict(states[i], models[i], dt);

    const std::size_t root = net.inflow.vessel;
    left_bc[root] = inflow_bc(net.inflow.waveform.evaluate(t + 0.5 * dt), schemes[root].left_edge(), models[root]);

    for (const auto& j : net.junctions) {
      members.clear();
      members.push_back({&models[j.parent], End::right, schemes[j.parent].right_edge()});
      for (auto d : j.daughters) members.push_back({&models[d], End::left, schemes[d].left_edge()});
      const auto sol = junction_solve(members);
      right_bc[j.parent] = sol.states[0];
      for (std::size_t k = 0; k < j.daughters.size(); ++k) left_bc[j.daughters[k]] = sol.states[k + 1];
    }
    for (std::size_t k = 0; k < net.terminals.size(); ++k) {
      const auto& term = net.terminals[k];
      const auto upd = terminal_bc(schemes[term.vessel].right_edge(), term, P_wk[k], dt, models[term.vessel]);
      right_bc[term.vessel] = upd.state;
      P_wk[k] = upd.P_wk;
    }

    for (std::size_t i = 0; i < n; ++i) schemes[i].update(states[i], models[i], dt, left_bc[i], right_bc[i]);

    const double t_new = t + dt;
    ++steps;
    const std::vector<Midpoint> current = midpoints();
    while (next_sample < n_samples) {
      const double ts = static_cast<double>(next_sample) * opt.sample_interval;
      if (ts > t_new + 1e-12) break;
      record(ts, previous, current, t, t_new);
      ++next_sample;
    }
    previous = current;
    t = t_new;

    if (t >= static_cast<double>(next_cycle) * period - 1e-12) {
      const auto now = std::chrono::steady_clock::now();
      cycle_seconds.push_back(std::chrono::duration<double>(now - cycle_start).count());
      cycle_start = now;
      ++next_cycle;
    }
  }
  const auto clock_stop = std::chrono::steady_clock::now();

  result.timing.loop_seconds = std::chrono::duration<double>(clock_stop - clock_start).count();
  result.timing.steps = steps;
  result.periodic_cycle = find_periodic_cycle(result.series, period);
  result.timing.seconds_per_cycle = cycle_seconds.empty()
                                        ? result.timing.loop_seconds * period / opt.t_end
                                        : mean_cycle_seconds(cycle_seconds, result.periodic_cycle);
  return result;
}

}  // namespace vascflow
