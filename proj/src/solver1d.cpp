#include "vascflow/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vascflow/errors.hpp"

namespace vascflow {

Mesh1D build_mesh(double length, double dx_max) {
  if (!(length > 0.0)) throw DomainError("mesh length must be positive");
  if (!(dx_max > 0.0)) throw DomainError("dx_max must be positive");
  const auto cells = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(length / dx_max)), 2);
  return {cells, length, length / static_cast<double>(cells)};
}

VesselModel1D::VesselModel1D(VesselSpec spec)
    : spec_(std::move(spec)),
      arterial_(is_arterial(spec_.wall)),
      alpha_(coriolis_alpha(spec_.fluid.zeta)),
      k_r_(viscous_resistance_coeff(spec_.fluid)),
      c0_(vascflow::wave_speed(spec_.wall.A0, spec_.wall, spec_.fluid)) {
  validate(spec_);
}

double VesselModel1D::pressure(double A) const { return tube_law_pressure(A, spec_.wall); }

double VesselModel1D::pressure_slope(double A) const { return tube_law_slope(A, spec_.wall); }

double VesselModel1D::wave_speed(double A) const {
  if (arterial_) {
    if (!(A > 0.0)) throw DomainError("wave_speed: area must be positive");
    return c0_ * std::sqrt(std::sqrt(A / spec_.wall.A0));
  }
  return vascflow::wave_speed(A, spec_.wall, spec_.fluid);
}

double VesselModel1D::wave_speed_slope(double A) const {
  if (arterial_) return 0.25 * wave_speed(A) / A;
  const auto& w = spec_.wall;
  const double a = A / w.A0;
  const double c = wave_speed(A);
  return w.K / rho() * (w.m * w.m * std::pow(a, w.m) - w.n * w.n * std::pow(a, w.n)) / (2.0 * c * A);
}

double VesselModel1D::area_from_wave_speed(double c) const {
  if (!arterial_) throw DomainError("area_from_wave_speed requires the arterial tube law");
  if (!(c > 0.0)) throw CollapseError("vessel '" + spec_.id + "': non-positive wave speed in boundary closure");
  const double r = c / c0_;
  const double r2 = r * r;
  return spec_.wall.A0 * r2 * r2;
}

Conserved VesselModel1D::flux(Conserved Q) const {
  const auto& w = spec_.wall;
  const double a = Q.A / w.A0;
  double pressure_term;
  if (arterial_) {
    pressure_term = w.K * Q.A / (3.0 * rho()) * std::sqrt(a);
  } else {
    pressure_term = w.K * Q.A / rho() *
                    (w.m / (w.m + 1.0) * std::pow(a, w.m) - w.n / (w.n + 1.0) * std::pow(a, w.n));
  }
  return {Q.q, alpha_ * Q.q * Q.q / Q.A + pressure_term};
}

Conserved VesselModel1D::source(Conserved Q) const { return {0.0, -k_r_ * Q.q / Q.A}; }

Conserved VesselModel1D::jacobian_times(Conserved Q, Conserved v) const {
  const double u = Q.q / Q.A;
  const double c = wave_speed(Q.A);
  return {v.q, (c * c - alpha_ * u * u) * v.A + 2.0 * alpha_ * u * v.q};
}

std::pair<double, double> VesselModel1D::eigenvalues(Conserved Q) const {
  const double u = Q.q / Q.A;
  const double c = wave_speed(Q.A);
  const double root = std::sqrt(c * c + alpha_ * (alpha_ - 1.0) * u * u);
  return {alpha_ * u - root, alpha_ * u + root};
}

double State1D::volume() const {
  double sum = 0.0;
  for (double a : A) sum += a;
  return sum * mesh.dx;
}

State1D make_state(std::size_t vessel, const Mesh1D& mesh, double A, double q) {
  State1D s;
  s.vessel = vessel;
  s.mesh = mesh;
  s.A.assign(mesh.cells, A);
  s.q.assign(mesh.cells, q);
  return s;
}

namespace {

[[noreturn]] void supercritical(const VesselModel1D& model, std::size_t cell, double u, double c) {
  std::ostringstream os;
  os << "supercritical or invalid flow in vessel '" << model.spec().id << "' cell " << cell << ": |u| = "
     << std::abs(u) << ", c = " << c;
  throw NumericalError(os.str());
}

double local_dt(const State1D& s, const VesselModel1D& model) {
  double max_speed = 0.0;
  for (std::size_t i = 0; i < s.mesh.cells; ++i) {
    if (!(s.A[i] > 0.0)) supercritical(model, i, 0.0, 0.0);
    const double u = s.q[i] / s.A[i];
    const double c = model.wave_speed(s.A[i]);
    if (!(std::abs(u) < c)) supercritical(model, i, u, c);
    const auto [lm, lp] = model.eigenvalues(s.cell(i));
    max_speed = std::max({max_speed, std::abs(lm), std::abs(lp)});
  }
  return s.mesh.dx / max_speed;
}

double eno(double left_diff, double right_diff) {
  return std::abs(left_diff) <= std::abs(right_diff) ? left_diff : right_diff;
}

}  // namespace

double cfl_dt(std::span<const State1D> states, std::span<const VesselModel1D> models, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("CFL number must lie in (0, 1]");
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& s : states) dt = std::min(dt, local_dt(s, models[s.vessel]));
  return cfl * dt;
}

double cfl_dt(const State1D& state, const VesselModel1D& model, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("CFL number must lie in (0, 1]");
  return cfl * local_dt(state, model);
}

Conserved interface_flux(Conserved left, Conserved right, const VesselModel1D& model) {
  if (!(left.A > 0.0 && right.A > 0.0)) {
    throw NumericalError("interface flux: non-positive area in vessel '" + model.spec().id + "'");
  }
  const auto [lm_l, lp_l] = model.eigenvalues(left);
  const auto [lm_r, lp_r] = model.eigenvalues(right);
  const double s_l = std::min(lm_l, lm_r);
  const double s_r = std::max(lp_l, lp_r);
  if (!std::isfinite(s_l) || !std::isfinite(s_r) || !(s_r > s_l)) {
    throw NumericalError("interface flux: wave-speed estimate failed in vessel '" + model.spec().id + "'");
  }
  const Conserved f_l = model.flux(left);
  if (s_l >= 0.0) return f_l;
  const Conserved f_r = model.flux(right);
  if (s_r <= 0.0) return f_r;
  const double inv = 1.0 / (s_r - s_l);
  return {(s_r * f_l.A - s_l * f_r.A + s_l * s_r * (right.A - left.A)) * inv,
          (s_r * f_l.q - s_l * f_r.q + s_l * s_r * (right.q - left.q)) * inv};
}

void MusclHancock::predict(const State1D& s, const VesselModel1D& model, double dt) {
  const std::size_t m = s.mesh.cells;
  const double dx = s.mesh.dx;
  slope_.resize(m);
  evolved_left_.resize(m);
  evolved_right_.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    Conserved d;
    if (i == 0) {
      d = {s.A[1] - s.A[0], s.q[1] - s.q[0]};
    } else if (i + 1 == m) {
      d = {s.A[i] - s.A[i - 1], s.q[i] - s.q[i - 1]};
    } else {
      d = {eno(s.A[i] - s.A[i - 1], s.A[i + 1] - s.A[i]), eno(s.q[i] - s.q[i - 1], s.q[i + 1] - s.q[i])};
    }
    Conserved slope{d.A / dx, d.q / dx};
    Conserved ql{s.A[i] - 0.5 * d.A, s.q[i] - 0.5 * d.q};
    Conserved qr{s.A[i] + 0.5 * d.A, s.q[i] + 0.5 * d.q};
    if (!(ql.A > 0.0 && qr.A > 0.0)) {
      slope = {};
      ql = qr = s.cell(i);
    }
    slope_[i] = slope;

    const Conserved fl = model.flux(ql);
    const Conserved fr = model.flux(qr);
    const double k = 0.5 * dt / dx;
    const Conserved sl = model.source(ql);
    const Conserved sr = model.source(qr);
    evolved_left_[i] = {ql.A - k * (fr.A - fl.A) + 0.5 * dt * sl.A, ql.q - k * (fr.q - fl.q) + 0.5 * dt * sl.q};
    evolved_right_[i] = {qr.A - k * (fr.A - fl.A) + 0.5 * dt * sr.A, qr.q - k * (fr.q - fl.q) + 0.5 * dt * sr.q};
  }
}

void MusclHancock::update(State1D& s, const VesselModel1D& model, double dt, Conserved left_boundary,
                          Conserved right_boundary) const {
  const std::size_t m = s.mesh.cells;
  const double k = dt / s.mesh.dx;

  Conserved f_minus = model.flux(left_boundary);
  std::vector<double> A_new(m);
  std::vector<double> q_new(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Conserved f_plus =
        i + 1 < m ? interface_flux(evolved_right_[i], evolved_left_[i + 1], model) : model.flux(right_boundary);

    // Source evaluated at the half-step ADER predictor of the cell average.
    const Conserved qi = s.cell(i);
    const Conserved jd = model.jacobian_times(qi, slope_[i]);
    const Conserved si = model.source(qi);
    const Conserved predictor{qi.A + 0.5 * dt * (-jd.A + si.A), qi.q + 0.5 * dt * (-jd.q + si.q)};
    const Conserved src = model.source(predictor);

    A_new[i] = qi.A - k * (f_plus.A - f_minus.A) + dt * src.A;
    q_new[i] = qi.q - k * (f_plus.q - f_minus.q) + dt * src.q;
    if (!(A_new[i] > 0.0) || !std::isfinite(q_new[i])) {
      std::ostringstream os;
      os << "step failure in vessel '" << model.spec().id << "' cell " << i << " at t = " << s.time
         << ": A = " << A_new[i] << ", q = " << q_new[i] << " (dt = " << dt << ")";
      throw NumericalError(os.str());
    }
    f_minus = f_plus;
  }
  s.A = std::move(A_new);
  s.q = std::move(q_new);
  s.time += dt;
}

State1D muscl_hancock_step(const State1D& state, const VesselModel1D& model, double dt, const EndCoupler& left,
                           const EndCoupler& right) {
  MusclHancock scheme;
  scheme.predict(state, model, dt);
  const Conserved left_state = left(scheme.left_edge());
  const Conserved right_state = right(scheme.right_edge());
  State1D next = state;
  scheme.update(next, model, dt, left_state, right_state);
  return next;
}

}  // namespace vascflow
