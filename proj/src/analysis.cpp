#include "vascflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vascflow/errors.hpp"

namespace vascflow {

namespace {

void require_positive(double R0, double L0, double C0) {
  if (!(R0 >= 0.0) || !(L0 > 0.0) || !(C0 > 0.0)) throw DomainError("lumped constants must be positive");
}

// Roots of lambda^2 + b lambda + c = 0 without cancellation in the real case.
std::array<Complex, 2> quadratic(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc > 0.0) {
    const double big = -0.5 * (b + std::sqrt(disc));
    return {Complex(big, 0.0), Complex(c / big, 0.0)};
  }
  if (disc == 0.0) return {Complex(-0.5 * b, 0.0), Complex(-0.5 * b, 0.0)};
  const double im = 0.5 * std::sqrt(-disc);
  return {Complex(-0.5 * b, im), Complex(-0.5 * b, -im)};
}

}  // namespace

std::array<Complex, 2> eigenvalues_pin_qout(double R0, double L0, double C0) {
  require_positive(R0, L0, C0);
  return quadratic(R0 / L0, 1.0 / (C0 * L0));
}

std::array<Complex, 2> eigenvalues_qin_pout(double R0, double L0, double C0) {
  return eigenvalues_pin_qout(R0, L0, C0);
}

std::array<Complex, 3> eigenvalues_pin_pout(double R0, double L0, double C0) {
  require_positive(R0, L0, C0);
  const auto q = quadratic(R0 / L0, 4.0 / (C0 * L0));
  return {Complex(-R0 / L0, 0.0), q[0], q[1]};
}

std::array<Complex, 3> eigenvalues_qin_qout(double R0, double L0, double C0) {
  require_positive(R0, L0, C0);
  const auto q = quadratic(R0 / L0, 4.0 / (C0 * L0));
  return {Complex(0.0, 0.0), q[0], q[1]};
}

double stability_discriminant(VesselKind kind, double R0, double L0, double C0) {
  require_positive(R0, L0, C0);
  const double b = R0 / L0;
  const double k = state_arity(kind) == 2 ? 4.0 : 16.0;
  return b * b - k / (C0 * L0);
}

std::vector<double> coefficient_matrix(VesselKind kind, double R0, double L0, double C0) {
  require_positive(R0, L0, C0);
  const double b = R0 / L0;
  const double w = 1.0 / (C0 * L0);
  switch (kind) {
    case VesselKind::pin_qout: return {0.0, 1.0, -w, -b};
    case VesselKind::qin_pout: return {0.0, -1.0, w, -b};
    case VesselKind::pin_pout: return {0.0, 1.0, -1.0, -2.0 * w, -b, 0.0, 2.0 * w, 0.0, -b};
    case VesselKind::qin_qout: return {0.0, -1.0, 0.0, 2.0 * w, -b, -2.0 * w, 0.0, 1.0, 0.0};
  }
  return {};
}

StabilityReport stability_report(VesselKind kind, const LumpedConstants& k) {
  StabilityReport r;
  r.kind = kind;
  switch (kind) {
    case VesselKind::pin_qout:
    case VesselKind::qin_pout: {
      const auto e = eigenvalues_pin_qout(k.R0, k.L0, k.C0);
      r.eigenvalues.assign(e.begin(), e.end());
      break;
    }
    case VesselKind::pin_pout: {
      const auto e = eigenvalues_pin_pout(k.R0, k.L0, k.C0);
      r.eigenvalues.assign(e.begin(), e.end());
      break;
    }
    case VesselKind::qin_qout: {
      const auto e = eigenvalues_qin_qout(k.R0, k.L0, k.C0);
      r.eigenvalues.assign(e.begin(), e.end());
      break;
    }
  }
  r.discriminant = stability_discriminant(kind, k.R0, k.L0, k.C0);
  bool zero = false;
  bool positive = false;
  for (const auto& e : r.eigenvalues) {
    if (std::abs(e) == 0.0) {
      zero = true;
    } else if (e.real() >= 0.0) {
      positive = true;
    }
  }
  r.classification = positive ? Stability::unstable : (zero ? Stability::marginal : Stability::asymptotically_stable);
  return r;
}

const char* stability_name(Stability s) noexcept {
  switch (s) {
    case Stability::asymptotically_stable: return "asymptotically_stable";
    case Stability::marginal: return "marginal";
    case Stability::unstable: return "unstable";
  }
  return "?";
}

DiscriminantFactors discriminant_factors(const VesselSpec& spec) {
  validate(spec);
  const auto& f = spec.fluid;
  const auto& w = spec.wall;
  const double r0 = std::sqrt(w.A0 / std::numbers::pi);
  const double z = f.zeta + 2.0;
  DiscriminantFactors out;
  out.f1 = z * z * f.mu * f.mu * spec.length / (f.rho * r0 * r0 * r0);
  out.f2 = 8.0 / 3.0 * w.E * w.h0 / spec.length;
  const auto k = lumped_constants(spec);
  out.discriminant = stability_discriminant(VesselKind::qin_qout, k.R0, k.L0, k.C0);
  return out;
}

double flow_balance_check(const WaveformSeries& q_in, const WaveformSeries& q_out) {
  if (q_in.empty() || q_out.empty()) throw DomainError("flow balance check needs two non-empty series");
  if (std::abs(q_in.period() - q_out.period()) > 1e-12 * q_in.period()) {
    throw DomainError("flow balance check: series periods differ");
  }
  return q_in.integral() - q_out.integral();
}

DimensionalCoefficients dimensional_coefficients(const DimensionalScales& s, double c, double k_R) {
  if (!(s.T0 > 0.0 && s.ell_scale > 0.0 && s.A0 > 0.0 && s.U0 > 0.0)) {
    throw DomainError("dimensional scales must be positive");
  }
  if (!(c > 0.0)) throw DomainError("wave speed must be positive");
  DimensionalCoefficients d;
  d.gamma_C = s.T0 * s.U0 / s.ell_scale;
  d.gamma_P = s.T0 * c * c / (s.ell_scale * s.U0);
  d.gamma_F = k_R * s.T0 / s.A0;
  d.convective_to_pressure = s.U0 * s.U0 / (c * c);
  d.friction_to_pressure = d.gamma_F / d.gamma_P;
  return d;
}

VelocityStats velocity_stats(const CycleSeries& c) {
  if (c.size() == 0) throw DomainError("velocity statistics of an empty series");
  if (c.A.size() != c.size()) throw DomainError("velocity statistics need area samples");
  VelocityStats v;
  std::vector<double> u(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    u[i] = std::abs(c.Q[i] / c.A[i]);
    v.max = std::max(v.max, u[i]);
  }
  if (c.size() == 1) {
    v.mean = u[0];
    return v;
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) integral += 0.5 * (u[i] + u[i - 1]) * (c.t[i] - c.t[i - 1]);
  v.mean = integral / (c.t.back() - c.t.front());
  return v;
}

}  // namespace vascflow
