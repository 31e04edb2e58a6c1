#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "vascflow/errors.hpp"
#include "vascflow/solver1d.hpp"

namespace vascflow {

namespace {

constexpr int kMaxNewton = 50;
constexpr int kMaxHalvings = 10;
constexpr double kTolerance = 1e-10;

double side(End end) { return end == End::right ? 1.0 : -1.0; }

void require_arterial(const VesselModel1D& model) {
  if (!model.arterial()) {
    throw ConfigError("vessel '" + model.spec().id + "': end closures require the arterial tube law (m=1/2, n=0)");
  }
}

void require_subcritical(Conserved Q, const VesselModel1D& model, const char* where) {
  if (!(Q.A > 0.0)) throw CollapseError(std::string(where) + ": collapsed area in vessel '" + model.spec().id + "'");
  const double u = Q.q / Q.A;
  const double c = model.wave_speed(Q.A);
  if (!(std::abs(u) < c)) {
    std::ostringstream os;
    os << where << ": supercritical state in vessel '" << model.spec().id << "' (|u| = " << std::abs(u)
       << ", c = " << c << ")";
    throw NumericalError(os.str());
  }
}

// Scalar Newton on g(A) = 0 with positivity safeguard.
template <class G>
double solve_area(G&& g, double A_start, const VesselModel1D& model, const char* where) {
  double A = A_start;
  for (int it = 0; it < kMaxNewton; ++it) {
    const auto [value, slope] = g(A);
    if (!std::isfinite(value) || !std::isfinite(slope) || slope == 0.0) break;
    double step = -value / slope;
    while (A + step <= 0.0) step *= 0.5;
    A += step;
    if (std::abs(step) <= 1e-14 * A) return A;
  }
  throw ConvergenceError(std::string(where) + ": Newton iteration failed in vessel '" + model.spec().id + "'");
}

}  // namespace

double outgoing_invariant(Conserved Q, const VesselModel1D& model, End end) {
  require_arterial(model);
  return Q.q / Q.A + side(end) * 4.0 * model.wave_speed(Q.A);
}

Conserved wall_bc(Conserved edge, const VesselModel1D& model, End end) {
  const double s = side(end);
  const double W = outgoing_invariant(edge, model, end);
  return {model.area_from_wave_speed(s * W / 4.0), 0.0};
}

Conserved inflow_bc(double q_in, Conserved edge, const VesselModel1D& model, End end) {
  const double s = side(end);
  const double W = outgoing_invariant(edge, model, end);
  auto g = [&](double A) {
    const double c = model.wave_speed(A);
    return std::pair{q_in / A + s * 4.0 * c - W, -q_in / (A * A) + s * c / A};
  };
  const Conserved out{solve_area(g, edge.A, model, "inflow boundary"), q_in};
  require_subcritical(out, model, "inflow boundary");
  return out;
}

TerminalUpdate terminal_bc(Conserved edge, const Terminal& terminal, double P_wk, double dt,
                           const VesselModel1D& model) {
  const double W = outgoing_invariant(edge, model, End::right);
  double r_eff;
  double p_tilde;
  double beta = 0.0;
  double gamma = 1.0;
  if (terminal.kind == TerminalKind::rcr) {
    beta = dt / terminal.C;
    gamma = 1.0 + dt / (terminal.R2 * terminal.C);
    p_tilde = (P_wk + beta * terminal.Pv / terminal.R2) / gamma;
    r_eff = terminal.R1 + beta / gamma;
  } else {
    p_tilde = terminal.Pv;
    r_eff = terminal.R1;
  }
  if (!(r_eff > 0.0)) throw ConfigError("terminal of vessel '" + model.spec().id + "' has zero total resistance");

  auto g = [&](double A) {
    const double q = (model.pressure(A) - p_tilde) / r_eff;
    const double dq = model.pressure_slope(A) / r_eff;
    const double c = model.wave_speed(A);
    return std::pair{q / A + 4.0 * c - W, (dq * A - q) / (A * A) + c / A};
  };
  const double A = solve_area(g, edge.A, model, "terminal boundary");
  const double q = (model.pressure(A) - p_tilde) / r_eff;
  const Conserved out{A, q};
  require_subcritical(out, model, "terminal boundary");

  double P_new = P_wk;
  if (terminal.kind == TerminalKind::rcr) {
    P_new = (P_wk + beta * q + beta * terminal.Pv / terminal.R2) / gamma;
  }
  return {out, P_new};
}

double JunctionResiduals::max() const noexcept { return std::max({mass, total_pressure, invariants}); }

namespace {

struct JunctionScales {
  double flow = 0.0;
  double pressure = 0.0;
  double speed = 0.0;
};

JunctionScales junction_scales(std::span<const JunctionMember> members) {
  JunctionScales s;
  for (const auto& m : members) {
    const double c0 = m.model->c0();
    s.flow = std::max(s.flow, m.model->spec().wall.A0 * c0);
    s.pressure = std::max(s.pressure, m.model->rho() * c0 * c0);
    s.speed = std::max(s.speed, c0);
  }
  return s;
}

// Residual vector ordered as: mass, N-1 total-pressure differences, N invariants.
std::vector<double> residual_vector(std::span<const JunctionMember> members, std::span<const Conserved> x,
                                    std::span<const double> invariants, const JunctionScales& sc) {
  const std::size_t n = members.size();
  std::vector<double> r(2 * n);
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) mass += side(members[k].end) * x[k].q;
  r[0] = mass / sc.flow;
  auto total_pressure = [&](std::size_t k) {
    const double u = x[k].q / x[k].A;
    return members[k].model->pressure(x[k].A) + 0.5 * members[k].model->rho() * u * u;
  };
  const double tp0 = total_pressure(0);
  for (std::size_t k = 1; k < n; ++k) r[k] = (total_pressure(k) - tp0) / sc.pressure;
  for (std::size_t k = 0; k < n; ++k) {
    const double W = x[k].q / x[k].A + side(members[k].end) * 4.0 * members[k].model->wave_speed(x[k].A);
    r[n + k] = (W - invariants[k]) / sc.speed;
  }
  return r;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Dense Gaussian elimination with partial pivoting; solves J dx = b in place.
std::vector<double> dense_solve(std::vector<double> J, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(J[r * n + col]) > std::abs(J[piv * n + col])) piv = r;
    }
    if (J[piv * n + col] == 0.0) throw NumericalError("junction Jacobian is singular");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(J[col * n + c], J[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = J[r * n + col] / J[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) J[r * n + c] -= f * J[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= J[i * n + c] * x[c];
    x[i] = s / J[i * n + i];
  }
  return x;
}

std::vector<double> jacobian(std::span<const JunctionMember> members, std::span<const Conserved> x,
                             const JunctionScales& sc) {
  const std::size_t n = members.size();
  const std::size_t dim = 2 * n;
  std::vector<double> J(dim * dim, 0.0);
  // Unknown ordering: (A_0, q_0, A_1, q_1, ...).
  auto at = [&](std::size_t row, std::size_t col) -> double& { return J[row * dim + col]; };
  for (std::size_t k = 0; k < n; ++k) at(0, 2 * k + 1) = side(members[k].end) / sc.flow;

  auto tp_grad = [&](std::size_t k) {
    const auto& m = *members[k].model;
    const double A = x[k].A;
    const double q = x[k].q;
    return std::pair{m.pressure_slope(A) - m.rho() * q * q / (A * A * A), m.rho() * q / (A * A)};
  };
  const auto [dA0, dq0] = tp_grad(0);
  for (std::size_t k = 1; k < n; ++k) {
    const auto [dA, dq] = tp_grad(k);
    at(k, 2 * k) = dA / sc.pressure;
    at(k, 2 * k + 1) = dq / sc.pressure;
    at(k, 0) = -dA0 / sc.pressure;
    at(k, 1) = -dq0 / sc.pressure;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double A = x[k].A;
    const double c = members[k].model->wave_speed(A);
    at(n + k, 2 * k) = (-x[k].q / (A * A) + side(members[k].end) * c / A) / sc.speed;
    at(n + k, 2 * k + 1) = 1.0 / A / sc.speed;
  }
  return J;
}

}  // namespace

JunctionResiduals junction_residuals(std::span<const JunctionMember> members, std::span<const Conserved> states) {
  const JunctionScales sc = junction_scales(members);
  std::vector<double> W(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) W[k] = outgoing_invariant(members[k].edge, *members[k].model, members[k].end);
  const auto r = residual_vector(members, states, W, sc);
  const std::size_t n = members.size();
  JunctionResiduals out;
  out.mass = std::abs(r[0]);
  for (std::size_t k = 1; k < n; ++k) out.total_pressure = std::max(out.total_pressure, std::abs(r[k]));
  for (std::size_t k = 0; k < n; ++k) out.invariants = std::max(out.invariants, std::abs(r[n + k]));
  return out;
}

JunctionSolution junction_solve(std::span<const JunctionMember> members) {
  const std::size_t n = members.size();
  if (n < 2) throw ConfigError("junction needs at least two members");
  std::vector<double> W(n);
  std::vector<Conserved> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    require_arterial(*members[k].model);
    require_subcritical(members[k].edge, *members[k].model, "junction input");
    W[k] = outgoing_invariant(members[k].edge, *members[k].model, members[k].end);
    x[k] = members[k].edge;
  }
  const JunctionScales sc = junction_scales(members);

  auto r = residual_vector(members, x, W, sc);
  double norm = inf_norm(r);
  int it = 0;
  while (norm >= kTolerance) {
    if (it == kMaxNewton) {
      std::ostringstream os;
      os << "junction Newton did not converge in " << kMaxNewton << " iterations (scaled residual " << norm
         << ") at junction with '" << members[0].model->spec().id << "'";
      throw ConvergenceError(os.str());
    }
    ++it;
    std::vector<double> rhs(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
    const auto dx = dense_solve(jacobian(members, x, sc), std::move(rhs));

    double lambda = 1.0;
    std::vector<Conserved> trial(n);
    std::vector<double> r_trial;
    double trial_norm = 0.0;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      bool positive = true;
      for (std::size_t k = 0; k < n; ++k) {
        trial[k] = {x[k].A + lambda * dx[2 * k], x[k].q + lambda * dx[2 * k + 1]};
        positive = positive && trial[k].A > 0.0;
      }
      if (!positive) continue;
      r_trial = residual_vector(members, trial, W, sc);
      trial_norm = inf_norm(r_trial);
      if (trial_norm < norm) break;
    }
    if (r_trial.empty()) throw CollapseError("junction Newton step collapses a member area");
    x = trial;
    r = std::move(r_trial);
    norm = trial_norm;
  }
  for (std::size_t k = 0; k < n; ++k) require_subcritical(x[k], *members[k].model, "junction");
  return {std::move(x), it, norm};
}

}  // namespace vascflow
