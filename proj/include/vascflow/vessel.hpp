#pragma once

// Closed-form vessel physics in CGS units (cm, g, s, dyne).

#include <string>

namespace vascflow {

inline constexpr double kDynePerMmHg = 1333.22;

struct FluidProps {
  double rho = 1.06;   // g/cm^3
  double mu = 0.04;    // dyne s/cm^2
  double zeta = 9.0;   // velocity-profile order
};

/// Tube law  p - p_ext = K [(A/A0)^m - (A/A0)^n] + P0  plus the wall data K is derived from.
struct WallModel {
  double A0 = 1.0;
  double K = 1.0;
  double m = 0.5;
  double n = 0.0;
  double P0 = 0.0;
  double p_ext = 0.0;
  double h0 = 0.0;
  double E = 0.0;
  double nu = 0.5;
};

struct VesselSpec {
  std::string id;
  double length = 1.0;
  WallModel wall;
  FluidProps fluid;
};

struct LumpedConstants {
  double R0;  // dyne s/cm^5
  double L0;  // g/cm^4
  double C0;  // cm^5/dyne
};

struct NonlinearRL {
  double R;
  double L;
};

void validate(const FluidProps& fluid);
void validate(const WallModel& wall);
void validate(const VesselSpec& spec);

/// True for the arterial exponents m = 1/2, n = 0.
bool is_arterial(const WallModel& wall) noexcept;

double coriolis_alpha(double zeta);
double viscous_resistance_coeff(const FluidProps& fluid);

/// K = sqrt(pi) h0 E / ((1 - nu^2) sqrt(A0)).
double arterial_stiffness(const WallModel& wall);

double tube_law_pressure(double A, const WallModel& wall);
/// d p / d A of the tube law.
double tube_law_slope(double A, const WallModel& wall);

/// Inverse of tube_law_pressure. Closed form for arterial exponents, safeguarded
/// Newton with bisection otherwise.
double tube_law_area(double p, const WallModel& wall);

double wave_speed(double A, const WallModel& wall, const FluidProps& fluid);

LumpedConstants lumped_constants(const VesselSpec& spec);
NonlinearRL lumped_nonlinear(const VesselSpec& spec, double A_hat);
double nonlinear_compliance(const VesselSpec& spec, double A_hat);

/// Empirical wall thickness h(r0) for the ADAN family of networks.
double adan_wall_thickness(double r0);

}  // namespace vascflow
