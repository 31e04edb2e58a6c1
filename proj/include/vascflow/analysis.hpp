#pragma once

// Stability of the linear 0D configurations and dimensional analysis of the
// momentum balance.

#include <array>
#include <complex>
#include <vector>

#include "vascflow/metrics.hpp"
#include "vascflow/solver0d.hpp"
#include "vascflow/vessel.hpp"
#include "vascflow/waveform.hpp"

namespace vascflow {

using Complex = std::complex<double>;

/// Roots of lambda^2 + (R/L) lambda + 1/(C L).
std::array<Complex, 2> eigenvalues_pin_qout(double R0, double L0, double C0);
std::array<Complex, 2> eigenvalues_qin_pout(double R0, double L0, double C0);
/// -R/L followed by the roots of lambda^2 + (R/L) lambda + 4/(C L).
std::array<Complex, 3> eigenvalues_pin_pout(double R0, double L0, double C0);
/// Exactly zero followed by the roots of lambda^2 + (R/L) lambda + 4/(C L).
std::array<Complex, 3> eigenvalues_qin_qout(double R0, double L0, double C0);

/// Discriminant of the quadratic factor: (R/L)^2 - 4/(CL) for two-state
/// configurations, (R/L)^2 - 16/(CL) for three-state ones.
double stability_discriminant(VesselKind kind, double R0, double L0, double C0);

/// Row-major coefficient matrix of the homogeneous linear system.
/// PinQout/QinPout act on (V, Q), PinPout on (V, Q, Q_d), QinQout on (V, Q, V_d).
std::vector<double> coefficient_matrix(VesselKind kind, double R0, double L0, double C0);

enum class Stability { asymptotically_stable, marginal, unstable };

struct StabilityReport {
  VesselKind kind = VesselKind::pin_qout;
  std::vector<Complex> eigenvalues;
  double discriminant = 0.0;
  Stability classification = Stability::asymptotically_stable;
};

StabilityReport stability_report(VesselKind kind, const LumpedConstants& constants);
const char* stability_name(Stability s) noexcept;

struct DiscriminantFactors {
  double f1 = 0.0;
  double f2 = 0.0;
  /// Three-state discriminant (R0/L0)^2 - 16/(C0 L0) of the vessel.
  double discriminant = 0.0;
};

/// f1 = (zeta+2)^2 mu^2 l / (rho r0^3), f2 = (8/3) E h0 / l with r0 = sqrt(A0/pi).
DiscriminantFactors discriminant_factors(const VesselSpec& spec);

/// Integral over one period of Q_in - Q_out.  Exact for piecewise-linear
/// series, i.e. trapezoidal on the union of both sample grids.
double flow_balance_check(const WaveformSeries& q_in, const WaveformSeries& q_out);

struct DimensionalScales {
  double T0 = 1.0;
  double ell_scale = 1.0;
  double A0 = 1.0;
  double U0 = 1.0;
};

struct DimensionalCoefficients {
  double gamma_C = 0.0;
  double gamma_P = 0.0;
  double gamma_F = 0.0;
  double convective_to_pressure = 0.0;
  double friction_to_pressure = 0.0;
};

/// gamma_C = T0 U0 / ell, gamma_P = T0 c^2 / (ell U0), gamma_F = k_R T0 / A0.
DimensionalCoefficients dimensional_coefficients(const DimensionalScales& scales, double c, double k_R);

struct VelocityStats {
  double mean = 0.0;
  double max = 0.0;
};

/// Time mean (trapezoidal) and maximum of |Q / A| over one cycle.
VelocityStats velocity_stats(const CycleSeries& cycle);

}  // namespace vascflow
