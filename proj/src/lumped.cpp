#include <cmath>

#include "vascflow/errors.hpp"
#include "vascflow/solver0d.hpp"

namespace vascflow {

ModelMode ModelMode::from_name(std::string_view name) {
  if (name == "linear") return linear();
  if (name == "nonlinear") return nonlinear();
  if (name == "nonlinear-R") return {PressureLaw::linear, Coefficient::area_dependent, Coefficient::reference};
  if (name == "nonlinear-L") return {PressureLaw::linear, Coefficient::reference, Coefficient::area_dependent};
  if (name == "nonlinear-P") return {PressureLaw::nonlinear, Coefficient::reference, Coefficient::reference};
  if (name == "collapsed") return collapsed();
  throw ConfigError("unknown model mode '" + std::string(name) +
                    "' (expected linear, nonlinear, nonlinear-R, nonlinear-L, nonlinear-P or collapsed)");
}

std::string ModelMode::name() const {
  for (const char* n : {"linear", "nonlinear", "nonlinear-R", "nonlinear-L", "nonlinear-P", "collapsed"}) {
    if (from_name(n) == *this) return n;
  }
  return "custom";
}

std::size_t state_arity(VesselKind kind) noexcept {
  return kind == VesselKind::pin_qout || kind == VesselKind::qin_pout ? 2 : 3;
}

std::string_view kind_name(VesselKind kind) noexcept {
  switch (kind) {
    case VesselKind::pin_qout: return "PinQout";
    case VesselKind::qin_pout: return "QinPout";
    case VesselKind::pin_pout: return "PinPout";
    case VesselKind::qin_qout: return "QinQout";
  }
  return "?";
}

namespace {

double mean_area(double V, const VesselSpec& spec) {
  if (!(V > 0.0) || !std::isfinite(V)) {
    throw CollapseError("vessel '" + spec.id + "': compartment volume " + std::to_string(V) + " is not positive");
  }
  return V / spec.length;
}

}  // namespace

double pressure_of_volume(double V, const VesselSpec& spec, const ModelMode& mode) {
  const double A = mean_area(V, spec);
  const auto& w = spec.wall;
  switch (mode.pressure) {
    case PressureLaw::nonlinear:
      return tube_law_pressure(A, w);
    case PressureLaw::linear: {
      const double C0 = lumped_constants(spec).C0;
      return w.P0 + (V - w.A0 * spec.length) / C0 + w.p_ext;
    }
    case PressureLaw::linearized_tube:
      return tube_law_pressure(w.A0, w) + tube_law_slope(w.A0, w) * (A - w.A0);
  }
  return 0.0;
}

double total_resistance(const VesselSpec& spec, double A_hat, const ModelMode& mode) {
  switch (mode.resistance) {
    case Coefficient::area_dependent: return lumped_nonlinear(spec, A_hat).R;
    case Coefficient::reference: return lumped_constants(spec).R0;
    case Coefficient::frozen_area: return lumped_nonlinear(spec, spec.wall.A0).R;
  }
  return 0.0;
}

double total_inductance(const VesselSpec& spec, double A_hat, const ModelMode& mode) {
  switch (mode.inductance) {
    case Coefficient::area_dependent: return lumped_nonlinear(spec, A_hat).L;
    case Coefficient::reference: return lumped_constants(spec).L0;
    case Coefficient::frozen_area: return lumped_nonlinear(spec, spec.wall.A0).L;
  }
  return 0.0;
}

VesselSpec half_vessel(const VesselSpec& spec) {
  VesselSpec h = spec;
  h.length = 0.5 * spec.length;
  return h;
}

LumpedRates rhs_pin_qout(std::span<const double> y, double P_in, double Q_out, const VesselSpec& spec,
                         const ModelMode& mode, bool distal) {
  const double V = y[0];
  const double Q = y[1];
  const double A = mean_area(V, spec);
  const double Rt = total_resistance(spec, A, mode);
  const double L = total_inductance(spec, A, mode);
  LumpedRates r;
  r.R_d = distal ? 0.5 * Rt : 0.0;
  const double R = Rt - r.R_d;
  r.P = pressure_of_volume(V, spec, mode);
  r.P_d = r.P;
  r.dy[0] = Q - Q_out;
  r.dy[1] = (P_in - R * Q - r.P) / L;
  r.P_in = P_in;
  r.P_out = r.P - r.R_d * Q_out;
  return r;
}

LumpedRates rhs_qin_pout(std::span<const double> y, double Q_in, double P_out, const VesselSpec& spec,
                         const ModelMode& mode, bool proximal) {
  const double V = y[0];
  const double Q = y[1];
  const double A = mean_area(V, spec);
  const double Rt = total_resistance(spec, A, mode);
  const double L = total_inductance(spec, A, mode);
  LumpedRates r;
  r.R_p = proximal ? 0.5 * Rt : 0.0;
  const double R = Rt - r.R_p;
  r.P = pressure_of_volume(V, spec, mode);
  r.P_d = r.P;
  r.dy[0] = Q_in - Q;
  r.dy[1] = (r.P - R * Q - P_out) / L;
  r.P_in = r.P + r.R_p * Q_in;
  r.P_out = P_out;
  return r;
}

LumpedRates rhs_pin_pout(std::span<const double> y, double P_in, double P_out, const VesselSpec& spec,
                         const ModelMode& mode) {
  const double V = y[0];
  const double Q = y[1];
  const double Q_d = y[2];
  const double A = mean_area(V, spec);
  const double R = 0.5 * total_resistance(spec, A, mode);
  const double L = 0.5 * total_inductance(spec, A, mode);
  LumpedRates r;
  r.R_d = R;
  r.P = pressure_of_volume(V, spec, mode);
  r.P_d = r.P;
  r.dy[0] = Q - Q_d;
  r.dy[1] = (P_in - R * Q - r.P) / L;
  r.dy[2] = (r.P - R * Q_d - P_out) / L;
  r.P_in = P_in;
  r.P_out = P_out;
  return r;
}

LumpedRates rhs_qin_qout(std::span<const double> y, double Q_in, double Q_out, const VesselSpec& spec,
                         const ModelMode& mode, bool proximal, bool distal) {
  const double V = y[0];
  const double Q = y[1];
  const double V_d = y[2];
  const VesselSpec half = half_vessel(spec);
  const double A_p = mean_area(V, half);
  const double A_d = mean_area(V_d, half);
  const double A = (V + V_d) / spec.length;
  const double f_p = proximal ? 0.25 : 0.0;
  const double f_d = distal ? 0.25 : 0.0;

  LumpedRates r;
  r.R_p = f_p * total_resistance(spec, A_p, mode);
  r.R_d = f_d * total_resistance(spec, A_d, mode);
  const double R = (1.0 - f_p - f_d) * total_resistance(spec, A, mode);
  const double L = total_inductance(spec, A, mode);
  r.P = pressure_of_volume(V, half, mode);
  r.P_d = pressure_of_volume(V_d, half, mode);
  r.dy[0] = Q_in - Q;
  r.dy[1] = (r.P - R * Q - r.P_d) / L;
  r.dy[2] = Q - Q_out;
  r.P_in = r.P + r.R_p * Q_in;
  r.P_out = r.P_d - r.R_d * Q_out;
  return r;
}

JunctionInputs0D junction_coupling_0d(double P_distal_parent, double R_d_parent, std::span<const double> Q_daughters) {
  double sum = 0.0;
  for (double q : Q_daughters) sum += q;
  return {sum, P_distal_parent - R_d_parent * sum};
}

double terminal_pressure_0d(const Terminal& t, double Q, double P_wk) {
  if (t.kind == TerminalKind::rcr) return P_wk + t.R1 * Q;
  return t.Pv + t.R1 * Q;
}

double terminal_flow_0d(const Terminal& t, double P, double R_d, double P_wk) {
  const double R = R_d + t.R1;
  if (!(R > 0.0)) throw ConfigError("terminal coupling with zero total resistance");
  return (P - (t.kind == TerminalKind::rcr ? P_wk : t.Pv)) / R;
}

double windkessel_rate(const Terminal& t, double Q, double P_wk) {
  return (Q - (P_wk - t.Pv) / t.R2) / t.C;
}

}  // namespace vascflow
