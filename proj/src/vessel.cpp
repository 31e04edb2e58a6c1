#include "vascflow/vessel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vascflow/errors.hpp"

namespace vascflow {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_positive_area(double A, const char* what) {
  if (!(A > 0.0)) throw DomainError(std::string(what) + ": area must be positive, got " + fmt(A));
}

}  // namespace

void validate(const FluidProps& fluid) {
  if (!(fluid.rho > 0.0)) throw DomainError("fluid density must be positive");
  if (!(fluid.mu > 0.0)) throw DomainError("fluid viscosity must be positive");
  if (!(fluid.zeta > 0.0)) throw DomainError("velocity profile order must be positive");
}

void validate(const WallModel& wall) {
  if (!(wall.A0 > 0.0)) throw DomainError("reference area A0 must be positive");
  if (!(wall.K > 0.0)) throw DomainError("wall stiffness K must be positive");
  if (!(wall.m > wall.n)) throw DomainError("tube-law exponents require m > n");
  if (!(wall.nu >= 0.0 && wall.nu < 1.0)) throw DomainError("Poisson ratio must lie in [0, 1)");
}

void validate(const VesselSpec& spec) {
  if (!(spec.length > 0.0)) throw DomainError("vessel '" + spec.id + "': length must be positive");
  validate(spec.wall);
  validate(spec.fluid);
}

bool is_arterial(const WallModel& wall) noexcept { return wall.m == 0.5 && wall.n == 0.0; }

double coriolis_alpha(double zeta) {
  if (!(zeta > 0.0)) throw DomainError("velocity profile order must be positive, got " + fmt(zeta));
  return (zeta + 2.0) / (zeta + 1.0);
}

double viscous_resistance_coeff(const FluidProps& fluid) {
  validate(fluid);
  return 2.0 * (fluid.zeta + 2.0) * std::numbers::pi * fluid.mu / fluid.rho;
}

double arterial_stiffness(const WallModel& wall) {
  if (!(wall.A0 > 0.0)) throw DomainError("reference area A0 must be positive");
  if (wall.nu >= 1.0) throw DomainError("singular material: Poisson ratio must be < 1");
  return std::sqrt(std::numbers::pi) * wall.h0 * wall.E / ((1.0 - wall.nu * wall.nu) * std::sqrt(wall.A0));
}

double tube_law_pressure(double A, const WallModel& wall) {
  require_positive_area(A, "tube_law_pressure");
  const double a = A / wall.A0;
  if (is_arterial(wall)) return wall.K * (std::sqrt(a) - 1.0) + wall.P0 + wall.p_ext;
  return wall.K * (std::pow(a, wall.m) - std::pow(a, wall.n)) + wall.P0 + wall.p_ext;
}

double tube_law_slope(double A, const WallModel& wall) {
  require_positive_area(A, "tube_law_slope");
  const double a = A / wall.A0;
  if (is_arterial(wall)) return 0.5 * wall.K / (wall.A0 * std::sqrt(a));
  return wall.K / wall.A0 * (wall.m * std::pow(a, wall.m - 1.0) - wall.n * std::pow(a, wall.n - 1.0));
}

double tube_law_area(double p, const WallModel& wall) {
  const double transmural = p - wall.P0 - wall.p_ext;
  if (is_arterial(wall)) {
    const double bracket = 1.0 + transmural / wall.K;
    if (!(bracket > 0.0)) {
      throw CollapseError("tube law inversion: pressure " + fmt(p) + " collapses the vessel");
    }
    return wall.A0 * bracket * bracket;
  }

  // psi(A) - target, increasing in A for m > 0 >= n.
  auto residual = [&](double A) { return tube_law_pressure(A, wall) - p; };
  double lo = 1e-10 * wall.A0;
  double hi = 1e6 * wall.A0;
  const double r_lo = residual(lo);
  const double r_hi = residual(hi);
  if (r_lo > 0.0) throw CollapseError("tube law inversion: pressure " + fmt(p) + " below collapse bracket");
  if (r_hi < 0.0) throw DomainError("tube law inversion: pressure " + fmt(p) + " above distension bracket");
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;

  // Start from the dominant power term.
  const double t = transmural / wall.K;
  double A = wall.A0;
  if (t > 0.0) A = wall.A0 * std::pow(1.0 + t, 1.0 / wall.m);
  else if (t < 0.0 && wall.n < 0.0) A = wall.A0 * std::pow(1.0 - t, 1.0 / wall.n);
  if (!(A > lo && A < hi)) A = wall.A0;
  for (int it = 0; it < 200; ++it) {
    const double r = residual(A);
    if (r == 0.0) return A;
    if (r < 0.0) lo = A;
    else hi = A;
    const double slope = tube_law_slope(A, wall);
    double next = A - r / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = std::sqrt(lo * hi);
    if (std::abs(next - A) <= 1e-12 * std::abs(next)) return next;
    A = next;
  }
  throw ConvergenceError("tube law inversion did not converge for pressure " + fmt(p));
}

double wave_speed(double A, const WallModel& wall, const FluidProps& fluid) {
  require_positive_area(A, "wave_speed");
  const double a = A / wall.A0;
  double radicand;
  if (is_arterial(wall)) radicand = 0.5 * wall.K / fluid.rho * std::sqrt(a);
  else radicand = wall.K / fluid.rho * (wall.m * std::pow(a, wall.m) - wall.n * std::pow(a, wall.n));
  if (radicand < 0.0) throw DomainError("wave_speed: negative radicand at A = " + fmt(A));
  return std::sqrt(radicand);
}

LumpedConstants lumped_constants(const VesselSpec& spec) {
  const double kR = viscous_resistance_coeff(spec.fluid);
  const double A0 = spec.wall.A0;
  const double l = spec.length;
  LumpedConstants out{};
  out.R0 = spec.fluid.rho * kR * l / (A0 * A0);
  out.L0 = spec.fluid.rho * l / A0;
  // l dA/dp at A0; reduces to 2 l A0 / K for arteries.
  out.C0 = is_arterial(spec.wall) ? 2.0 * l * A0 / spec.wall.K
                                  : l * A0 / (spec.wall.K * (spec.wall.m - spec.wall.n));
  return out;
}

NonlinearRL lumped_nonlinear(const VesselSpec& spec, double A_hat) {
  if (!(A_hat > 0.0)) throw CollapseError("vessel '" + spec.id + "': mean area " + fmt(A_hat) + " is not positive");
  const double kR = viscous_resistance_coeff(spec.fluid);
  return {spec.fluid.rho * kR * spec.length / (A_hat * A_hat), spec.fluid.rho * spec.length / A_hat};
}

double nonlinear_compliance(const VesselSpec& spec, double A_hat) {
  if (!(A_hat > 0.0)) throw CollapseError("vessel '" + spec.id + "': mean area " + fmt(A_hat) + " is not positive");
  if (is_arterial(spec.wall)) return 2.0 * spec.length * std::sqrt(A_hat * spec.wall.A0) / spec.wall.K;
  return spec.length / tube_law_slope(A_hat, spec.wall);
}

double adan_wall_thickness(double r0) {
  constexpr double a = 0.2802;
  constexpr double b = -5.053;
  constexpr double c = 0.1324;
  constexpr double d = -0.1114;
  return r0 * (a * std::exp(b * r0) + c * std::exp(d * r0));
}

}  // namespace vascflow
