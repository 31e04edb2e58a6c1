#pragma once

// Second-order MUSCL-Hancock finite-volume solver for the 1D blood-flow system
//   dA/dt + dq/dx = 0
//   dq/dt + d(alpha q^2/A)/dx + (A/rho) dp/dx = -k_R q/A
// on arterial networks.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "vascflow/network.hpp"
#include "vascflow/series.hpp"
#include "vascflow/vessel.hpp"

namespace vascflow {

struct Mesh1D {
  std::size_t cells = 0;
  double length = 0.0;
  double dx = 0.0;

  double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx; }
};

/// M = max(ceil(l / dx_max), 2) cells of width l / M.
Mesh1D build_mesh(double length, double dx_max);

/// Conserved pair (A, q); also used for flux and source vectors.
struct Conserved {
  double A = 0.0;
  double q = 0.0;
};

/// Per-vessel constants of the 1D system with arterial fast paths.
class VesselModel1D {
 public:
  explicit VesselModel1D(VesselSpec spec);

  const VesselSpec& spec() const noexcept { return spec_; }
  bool arterial() const noexcept { return arterial_; }
  double alpha() const noexcept { return alpha_; }
  double rho() const noexcept { return spec_.fluid.rho; }
  double friction() const noexcept { return k_r_; }
  /// Wave speed at the reference area.
  double c0() const noexcept { return c0_; }

  double pressure(double A) const;
  double pressure_slope(double A) const;
  double wave_speed(double A) const;
  double wave_speed_slope(double A) const;
  /// Inverse of wave_speed for the arterial tube law.
  double area_from_wave_speed(double c) const;

  Conserved flux(Conserved Q) const;
  Conserved source(Conserved Q) const;
  /// Jacobian of the flux applied to a vector.
  Conserved jacobian_times(Conserved Q, Conserved v) const;
  /// Characteristic speeds (lambda_-, lambda_+) of the flux Jacobian.
  std::pair<double, double> eigenvalues(Conserved Q) const;

 private:
  VesselSpec spec_;
  bool arterial_;
  double alpha_;
  double k_r_;
  double c0_;
};

struct State1D {
  std::size_t vessel = 0;
  Mesh1D mesh;
  std::vector<double> A;
  std::vector<double> q;
  double time = 0.0;

  Conserved cell(std::size_t i) const noexcept { return {A[i], q[i]}; }
  /// Total volume sum A_i dx.
  double volume() const;
};

State1D make_state(std::size_t vessel, const Mesh1D& mesh, double A, double q = 0.0);

/// CFL * min dx / max|lambda| over every cell of every vessel.  Throws
/// NumericalError naming vessel and cell when a cell is supercritical.
double cfl_dt(std::span<const State1D> states, std::span<const VesselModel1D> models, double cfl);
double cfl_dt(const State1D& state, const VesselModel1D& model, double cfl);

/// HLL flux with Davis-type wave-speed bounds from the exact characteristic speeds.
Conserved interface_flux(Conserved left, Conserved right, const VesselModel1D& model);

/// Split MUSCL-Hancock step.  predict() reconstructs with ENO slopes and evolves
/// the boundary-extrapolated values by half a step; the caller couples the
/// evolved edge values of every vessel end and passes the coupled states to
/// update(), whose end fluxes are F(Q*).
class MusclHancock {
 public:
  void predict(const State1D& state, const VesselModel1D& model, double dt);
  Conserved left_edge() const noexcept { return evolved_left_.front(); }
  Conserved right_edge() const noexcept { return evolved_right_.back(); }
  void update(State1D& state, const VesselModel1D& model, double dt, Conserved left_boundary,
              Conserved right_boundary) const;

 private:
  std::vector<Conserved> slope_;
  std::vector<Conserved> evolved_left_;
  std::vector<Conserved> evolved_right_;
};

using EndCoupler = std::function<Conserved(Conserved edge)>;

/// One step on a single vessel with the given end closures.
State1D muscl_hancock_step(const State1D& state, const VesselModel1D& model, double dt, const EndCoupler& left,
                           const EndCoupler& right);

// End closures.  Each preserves the generalized Riemann invariant u -/+ 4c
// leaving the domain through the given end (arterial tube law only).

double outgoing_invariant(Conserved Q, const VesselModel1D& model, End end);

/// Reflecting end, q* = 0.
Conserved wall_bc(Conserved edge, const VesselModel1D& model, End end);
/// Prescribed flow q* = q_in.
Conserved inflow_bc(double q_in, Conserved edge, const VesselModel1D& model, End end = End::left);

struct TerminalUpdate {
  Conserved state;
  double P_wk;
};

/// Right-end Windkessel coupling with the capacitor pressure advanced by backward Euler.
TerminalUpdate terminal_bc(Conserved edge, const Terminal& terminal, double P_wk, double dt,
                           const VesselModel1D& model);

struct JunctionMember {
  const VesselModel1D* model = nullptr;
  End end = End::right;
  /// Evolved boundary-extrapolated state entering the junction.
  Conserved edge;
};

struct JunctionResiduals {
  double mass = 0.0;
  double total_pressure = 0.0;
  double invariants = 0.0;
  double max() const noexcept;
};

struct JunctionSolution {
  std::vector<Conserved> states;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton solve of mass conservation, total-pressure continuity and outgoing
/// invariant preservation at a node with any number of members.
JunctionSolution junction_solve(std::span<const JunctionMember> members);
/// Scaled residuals of the three condition groups at the given states.
JunctionResiduals junction_residuals(std::span<const JunctionMember> members, std::span<const Conserved> states);

struct Run1DOptions {
  double dx_max = 0.2;
  double cfl = 0.9;
  double t_end = 29.7;
  double sample_interval = 1e-3;
};

/// Network run recording pressure, flow and area at each vessel midpoint.
SimulationResult run_1d(const Network& net, const Run1DOptions& options);

}  // namespace vascflow
