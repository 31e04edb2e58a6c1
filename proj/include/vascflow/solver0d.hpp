#pragma once

// Lumped-parameter vessel models in the four inlet/outlet configurations,
// network assembly into one ODE system, and fixed-step RK4 integration.

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vascflow/network.hpp"
#include "vascflow/series.hpp"
#include "vascflow/vessel.hpp"

namespace vascflow {

enum class PressureLaw {
  nonlinear,        // tube law evaluated at A = V / l
  linear,           // P0 + (V - V0) / C0 + p_ext
  linearized_tube,  // tube law linearized about A0, evaluated at A = V / l
};

enum class Coefficient {
  area_dependent,  // evaluated at the instantaneous mean area
  reference,       // constant R0 or L0
  frozen_area,     // area-dependent form with the area frozen at A0
};

struct ModelMode {
  PressureLaw pressure = PressureLaw::nonlinear;
  Coefficient resistance = Coefficient::area_dependent;
  Coefficient inductance = Coefficient::area_dependent;

  static ModelMode linear() { return {PressureLaw::linear, Coefficient::reference, Coefficient::reference}; }
  static ModelMode nonlinear() { return {}; }
  /// Nonlinear structure with the tube law linearized and the area frozen at A0.
  static ModelMode collapsed() {
    return {PressureLaw::linearized_tube, Coefficient::frozen_area, Coefficient::frozen_area};
  }
  /// Accepts linear, nonlinear, nonlinear-R, nonlinear-L, nonlinear-P, collapsed.
  static ModelMode from_name(std::string_view name);
  std::string name() const;

  friend bool operator==(const ModelMode&, const ModelMode&) = default;
};

enum class VesselKind { pin_qout, qin_pout, pin_pout, qin_qout };

/// Kind plus presence of the proximal (R_p) and distal (R_d) end resistances.
struct VesselConfig {
  VesselKind kind = VesselKind::pin_qout;
  bool proximal = false;
  bool distal = false;
};

std::size_t state_arity(VesselKind kind) noexcept;
std::string_view kind_name(VesselKind kind) noexcept;

/// Mean pressure of a compartment of volume V; A = V / spec.length.
double pressure_of_volume(double V, const VesselSpec& spec, const ModelMode& mode);
/// Whole-compartment resistance and inductance at mean area A_hat under the mode.
double total_resistance(const VesselSpec& spec, double A_hat, const ModelMode& mode);
double total_inductance(const VesselSpec& spec, double A_hat, const ModelMode& mode);
/// Same vessel with half the length, for two-compartment configurations.
VesselSpec half_vessel(const VesselSpec& spec);

/// Time derivatives of one configuration plus the exposed interface pressures.
/// dy holds (dV, dQ) or (dV, dQ, dQ_d) or (dV, dQ, dV_d).
struct LumpedRates {
  std::array<double, 3> dy{};
  double P = 0.0;      // (proximal) compartment pressure
  double P_d = 0.0;    // distal compartment pressure (QinQout)
  double P_in = 0.0;   // exposed inlet pressure (flow-typed inlet)
  double P_out = 0.0;  // exposed outlet pressure (flow-typed outlet)
  double R_p = 0.0;
  double R_d = 0.0;
};

/// State (V, Q); inputs P_in and Q_out.
LumpedRates rhs_pin_qout(std::span<const double> y, double P_in, double Q_out, const VesselSpec& spec,
                         const ModelMode& mode, bool distal = true);
/// State (V, Q); inputs Q_in and P_out.
LumpedRates rhs_qin_pout(std::span<const double> y, double Q_in, double P_out, const VesselSpec& spec,
                         const ModelMode& mode, bool proximal = true);
/// State (V, Q, Q_d); inputs P_in and P_out; one capacitor between two R-L branches.
LumpedRates rhs_pin_pout(std::span<const double> y, double P_in, double P_out, const VesselSpec& spec,
                         const ModelMode& mode);
/// State (V, Q, V_d); inputs Q_in and Q_out; two half-vessel capacitors.
LumpedRates rhs_qin_qout(std::span<const double> y, double Q_in, double Q_out, const VesselSpec& spec,
                         const ModelMode& mode, bool proximal = true, bool distal = true);

/// Interface values at a flow-splitting junction.
struct JunctionInputs0D {
  double Q_out_parent = 0.0;
  double P_in_daughters = 0.0;
};

/// Q_out = sum of daughter inlet flows; daughters see P_d - R_d * Q_out.
JunctionInputs0D junction_coupling_0d(double P_distal_parent, double R_d_parent, std::span<const double> Q_daughters);

/// Outlet pressure of a pressure-typed terminal end: P_wk + R1 Q (or Pv + R Q).
double terminal_pressure_0d(const Terminal& terminal, double Q, double P_wk);
/// Outlet flow of a flow-typed terminal end: (P - P_wk) / (R_d + R1) (or P_v, R).
double terminal_flow_0d(const Terminal& terminal, double P, double R_d, double P_wk);
/// dP_wk/dt = (Q - (P_wk - P_v) / R2) / C.
double windkessel_rate(const Terminal& terminal, double Q, double P_wk);

/// Position of one vessel's unknowns in the global state vector.
struct VesselSlot {
  VesselConfig config;
  bool two_split = false;  // two PinQout compartments in series
  std::size_t offset = 0;
  std::size_t arity = 0;
};

struct Observation {
  double P = 0.0;
  double Q = 0.0;
  double A = 0.0;
};

/// Whole-network 0D system.  Root: QinQout; vessels ending in a terminal:
/// PinPout; other vessels: two-split PinQout.  A root that is also a terminal
/// stays QinQout.  State layout: vessels in network order, then one capacitor
/// pressure per RCR terminal.
class Network0D {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Network0D(const Network& net, ModelMode mode);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<VesselSlot>& layout() const noexcept { return slots_; }
  /// Index of the capacitor pressure of terminal k, or npos for resistance terminals.
  std::size_t wk_index(std::size_t terminal) const { return wk_index_.at(terminal); }
  const ModelMode& mode() const noexcept { return mode_; }
  const Network& network() const noexcept { return net_; }

  std::vector<double> initial_state() const;
  void rhs(double t, std::span<const double> y, std::span<double> dydt) const;

  /// Comparison observables: volume-weighted pressure, interface flow, mean area.
  Observation observe(std::span<const double> y, std::size_t vessel) const;

  /// Indices of every volume unknown.
  const std::vector<std::size_t>& volume_indices() const noexcept { return volume_indices_; }
  double total_volume(std::span<const double> y) const;
  double inflow(double t) const;
  /// Sum of flows leaving the network through terminals.
  double terminal_outflow(std::span<const double> y) const;
  /// d/dt(sum V) - (Q_in - sum Q_out) scaled by the root inflow scale.
  double mass_balance_residual(double t, std::span<const double> y) const;

 private:
  struct Interface {
    double P_in = 0.0;   // for pressure-typed inlets
    double Q_out = 0.0;  // for flow-typed outlets
  };

  double distal_state(std::span<const double> y, std::size_t vessel, double& R_d) const;
  double outflow_of(std::span<const double> y, std::size_t vessel) const;

  Network net_;
  ModelMode mode_;
  std::vector<VesselSpec> halves_;
  std::vector<VesselSlot> slots_;
  std::vector<std::size_t> wk_index_;
  std::vector<std::size_t> volume_indices_;
  std::size_t dimension_ = 0;
  double flow_scale_ = 1.0;
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
using OdeObserver = std::function<void(double t, std::span<const double> y)>;

struct Rk4Options {
  double dt = 1e-3;
  double t_end = 1.0;
  /// Observer stride in time; 0 calls the observer after every step.
  double sample_interval = 0.0;
  /// Cardiac period for per-cycle timing; 0 disables it.
  double period = 0.0;
};

struct Rk4Result {
  std::vector<double> y;
  double t = 0.0;
  std::size_t steps = 0;
  double loop_seconds = 0.0;
  std::vector<double> cycle_seconds;
};

/// Classical four-stage RK4 with fixed step; the final step is shortened to land on
/// t_end.  The observer sees t = 0 and every sample time.  Throws NumericalError
/// with the time stamp when the state becomes non-finite.
Rk4Result rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, const Rk4Options& options,
                        const OdeObserver& observer = {});

struct Run0DOptions {
  double dt = 1e-3;
  double t_end = 29.7;
  double sample_interval = 1e-3;
};

SimulationResult run_0d(const Network& net, const ModelMode& mode, const Run0DOptions& options);

}  // namespace vascflow
