#include <algorithm>
#include <cmath>

#include "vascflow/errors.hpp"
#include "vascflow/metrics.hpp"
#include "vascflow/solver0d.hpp"

namespace vascflow {

Network0D::Network0D(const Network& net, ModelMode mode) : net_(net), mode_(mode) {
  validate_topology(net_);
  if (net_.initial_area.size() != net_.size()) compute_initial_areas(net_);
  const std::size_t n = net_.size();
  halves_.reserve(n);
  slots_.resize(n);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    halves_.push_back(half_vessel(net_.vessels[i]));
    auto& s = slots_[i];
    const bool root = net_.is_root(i);
    const bool terminal = net_.terminal_of(i) != nullptr;
    if (root) {
      s.config = {VesselKind::qin_qout, true, true};
    } else if (terminal) {
      s.config = {VesselKind::pin_pout, false, false};
    } else {
      s.config = {VesselKind::pin_qout, false, true};
      s.two_split = true;
    }
    s.offset = offset;
    s.arity = s.two_split ? 4 : state_arity(s.config.kind);
    volume_indices_.push_back(offset);
    if (s.config.kind == VesselKind::qin_qout) volume_indices_.push_back(offset + 2);
    if (s.two_split) volume_indices_.push_back(offset + 2);
    offset += s.arity;
  }
  wk_index_.assign(net_.terminals.size(), npos);
  for (std::size_t k = 0; k < net_.terminals.size(); ++k) {
    if (net_.terminals[k].kind == TerminalKind::rcr) wk_index_[k] = offset++;
  }
  dimension_ = offset;

  flow_scale_ = 0.0;
  for (double q : net_.inflow.waveform.values()) flow_scale_ = std::max(flow_scale_, std::abs(q));
  if (flow_scale_ == 0.0) flow_scale_ = 1.0;
}

std::vector<double> Network0D::initial_state() const {
  std::vector<double> y(dimension_, 0.0);
  for (std::size_t i = 0; i < net_.size(); ++i) {
    const auto& s = slots_[i];
    const double V = net_.initial_area[i] * net_.vessels[i].length;
    if (s.config.kind == VesselKind::qin_qout || s.two_split) {
      y[s.offset] = 0.5 * V;
      y[s.offset + 2] = 0.5 * V;
    } else {
      y[s.offset] = V;
    }
  }
  for (std::size_t k = 0; k < wk_index_.size(); ++k) {
    if (wk_index_[k] != npos) y[wk_index_[k]] = net_.p_init;
  }
  return y;
}

double Network0D::distal_state(std::span<const double> y, std::size_t i, double& R_d) const {
  const auto& s = slots_[i];
  const auto& half = halves_[i];
  if (s.config.kind == VesselKind::qin_qout) {
    const double V_d = y[s.offset + 2];
    R_d = 0.25 * total_resistance(net_.vessels[i], V_d / half.length, mode_);
    return pressure_of_volume(V_d, half, mode_);
  }
  if (s.two_split) {
    const double V2 = y[s.offset + 2];
    R_d = 0.5 * total_resistance(half, V2 / half.length, mode_);
    return pressure_of_volume(V2, half, mode_);
  }
  throw ConfigError("vessel '" + net_.vessels[i].id + "' cannot feed a junction");
}

double Network0D::outflow_of(std::span<const double> y, std::size_t i) const {
  const auto& s = slots_[i];
  if (s.config.kind == VesselKind::pin_pout) return y[s.offset + 2];
  // Flow-typed terminal outlet (root that is also terminal).
  const Terminal* term = net_.terminal_of(i);
  std::size_t k = static_cast<std::size_t>(term - net_.terminals.data());
  double R_d = 0.0;
  const double P_d = distal_state(y, i, R_d);
  const double P_wk = wk_index_[k] != npos ? y[wk_index_[k]] : 0.0;
  return terminal_flow_0d(*term, P_d, R_d, P_wk);
}

void Network0D::rhs(double t, std::span<const double> y, std::span<double> dydt) const {
  const std::size_t n = net_.size();
  std::vector<Interface> io(n);

  std::vector<double> q_daughters;
  for (const auto& j : net_.junctions) {
    q_daughters.clear();
    for (auto d : j.daughters) q_daughters.push_back(y[slots_[d].offset + 1]);
    double R_d = 0.0;
    const double P_d = distal_state(y, j.parent, R_d);
    const auto c = junction_coupling_0d(P_d, R_d, q_daughters);
    io[j.parent].Q_out = c.Q_out_parent;
    for (auto d : j.daughters) io[d].P_in = c.P_in_daughters;
  }

  std::vector<double> terminal_q(net_.terminals.size(), 0.0);
  for (std::size_t k = 0; k < net_.terminals.size(); ++k) {
    const auto& term = net_.terminals[k];
    const auto& s = slots_[term.vessel];
    const double P_wk = wk_index_[k] != npos ? y[wk_index_[k]] : 0.0;
    if (s.config.kind == VesselKind::pin_pout) {
      terminal_q[k] = y[s.offset + 2];
    } else {
      terminal_q[k] = outflow_of(y, term.vessel);
      io[term.vessel].Q_out = terminal_q[k];
    }
    if (wk_index_[k] != npos) dydt[wk_index_[k]] = windkessel_rate(term, terminal_q[k], P_wk);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = slots_[i];
    const auto& spec = net_.vessels[i];
    const auto ys = y.subspan(s.offset, s.arity);
    if (s.config.kind == VesselKind::qin_qout) {
      const auto r = rhs_qin_qout(ys, inflow(t), io[i].Q_out, spec, mode_, s.config.proximal, s.config.distal);
      std::copy_n(r.dy.begin(), 3, dydt.begin() + static_cast<std::ptrdiff_t>(s.offset));
    } else if (s.config.kind == VesselKind::pin_pout) {
      std::size_t k = static_cast<std::size_t>(net_.terminal_of(i) - net_.terminals.data());
      const double P_wk = wk_index_[k] != npos ? y[wk_index_[k]] : 0.0;
      const double P_out = terminal_pressure_0d(net_.terminals[k], ys[2], P_wk);
      const auto r = rhs_pin_pout(ys, io[i].P_in, P_out, spec, mode_);
      std::copy_n(r.dy.begin(), 3, dydt.begin() + static_cast<std::ptrdiff_t>(s.offset));
    } else {
      const auto& half = halves_[i];
      // Two compartments joined by J2: Q_out of the first is the inflow of the second.
      const auto r1 = rhs_pin_qout(ys.subspan(0, 2), io[i].P_in, ys[3], half, mode_, true);
      const double P_in2 = r1.P - r1.R_d * ys[3];
      const auto r2 = rhs_pin_qout(ys.subspan(2, 2), P_in2, io[i].Q_out, half, mode_, true);
      dydt[s.offset] = r1.dy[0];
      dydt[s.offset + 1] = r1.dy[1];
      dydt[s.offset + 2] = r2.dy[0];
      dydt[s.offset + 3] = r2.dy[1];
    }
  }
}

Observation Network0D::observe(std::span<const double> y, std::size_t i) const {
  const auto& s = slots_[i];
  const auto& spec = net_.vessels[i];
  const auto& half = halves_[i];
  const double l = spec.length;
  if (s.config.kind == VesselKind::qin_qout || s.two_split) {
    const double V1 = y[s.offset];
    const double V2 = y[s.offset + 2];
    const double P1 = pressure_of_volume(V1, half, mode_);
    const double P2 = pressure_of_volume(V2, half, mode_);
    const double Q = s.two_split ? y[s.offset + 3] : y[s.offset + 1];
    return {(V1 * P1 + V2 * P2) / (V1 + V2), Q, (V1 + V2) / l};
  }
  if (s.config.kind == VesselKind::pin_pout) {
    const double V = y[s.offset];
    return {pressure_of_volume(V, spec, mode_), 0.5 * (y[s.offset + 1] + y[s.offset + 2]), V / l};
  }
  const double V = y[s.offset];
  return {pressure_of_volume(V, spec, mode_), y[s.offset + 1], V / l};
}

double Network0D::total_volume(std::span<const double> y) const {
  double sum = 0.0;
  for (auto k : volume_indices_) sum += y[k];
  return sum;
}

double Network0D::inflow(double t) const { return net_.inflow.waveform.evaluate(t); }

double Network0D::terminal_outflow(std::span<const double> y) const {
  double sum = 0.0;
  for (const auto& term : net_.terminals) sum += outflow_of(y, term.vessel);
  return sum;
}

double Network0D::mass_balance_residual(double t, std::span<const double> y) const {
  std::vector<double> dydt(dimension_);
  rhs(t, y, dydt);
  double rate = 0.0;
  for (auto k : volume_indices_) rate += dydt[k];
  return (rate - (inflow(t) - terminal_outflow(y))) / flow_scale_;
}

SimulationResult run_0d(const Network& net, const ModelMode& mode, const Run0DOptions& opt) {
  const Network0D sys(net, mode);
  const std::size_t n = net.size();
  SimulationResult result;
  result.period = net.inflow.waveform.period();
  result.t_end = opt.t_end;
  result.series.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.series[i].id = net.vessels[i].id;
    const auto expected = static_cast<std::size_t>(opt.t_end / opt.sample_interval) + 2;
    result.series[i].t.reserve(expected);
    result.series[i].P.reserve(expected);
    result.series[i].Q.reserve(expected);
    result.series[i].A.reserve(expected);
  }

  Rk4Options ro;
  ro.dt = opt.dt;
  ro.t_end = opt.t_end;
  ro.sample_interval = opt.sample_interval;
  ro.period = result.period;
  const auto rk = rk4_integrate(
      [&sys](double t, std::span<const double> y, std::span<double> dydt) { sys.rhs(t, y, dydt); },
      sys.initial_state(), ro, [&](double t, std::span<const double> y) {
        for (std::size_t i = 0; i < n; ++i) {
          const auto o = sys.observe(y, i);
          result.series[i].push(t, o.P, o.Q, o.A);
        }
      });

  result.timing.loop_seconds = rk.loop_seconds;
  result.timing.steps = rk.steps;
  result.periodic_cycle = find_periodic_cycle(result.series, result.period);
  result.timing.seconds_per_cycle = rk.cycle_seconds.empty()
                                        ? rk.loop_seconds * result.period / opt.t_end
                                        : mean_cycle_seconds(rk.cycle_seconds, result.periodic_cycle);
  return result;
}

}  // namespace vascflow
