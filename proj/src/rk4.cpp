#include <chrono>
#include <cmath>
#include <sstream>

#include "vascflow/errors.hpp"
#include "vascflow/solver0d.hpp"

namespace vascflow {

Rk4Result rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, const Rk4Options& opt,
                        const OdeObserver& observer) {
  if (!(opt.dt > 0.0)) throw DomainError("RK4 step must be positive");
  if (!(opt.t_end >= 0.0)) throw DomainError("RK4 end time must be non-negative");

  std::size_t stride = 1;
  if (opt.sample_interval > 0.0) {
    const double ratio = opt.sample_interval / opt.dt;
    stride = static_cast<std::size_t>(std::llround(ratio));
    if (stride == 0 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio) {
      throw DomainError("sample interval must be a positive integer multiple of the RK4 step");
    }
  }

  const std::size_t dim = y0.size();
  Rk4Result out;
  out.y = std::move(y0);
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto& y = out.y;

  const auto n_full = static_cast<std::size_t>(std::floor(opt.t_end / opt.dt + 1e-9));
  const double remainder = opt.t_end - static_cast<double>(n_full) * opt.dt;
  const bool partial = remainder > 1e-9 * opt.dt;
  const std::size_t n_steps = n_full + (partial ? 1 : 0);

  if (observer) observer(0.0, y);

  std::size_t next_cycle = 1;
  const auto start = std::chrono::steady_clock::now();
  auto cycle_start = start;
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * opt.dt;
    const double h = (partial && step == n_full) ? remainder : opt.dt;

    rhs(t, y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double t_new = (partial && step == n_full) ? opt.t_end : static_cast<double>(step + 1) * opt.dt;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!std::isfinite(y[i])) {
        std::ostringstream os;
        os << "non-finite state component " << i << " at t = " << t_new;
        throw NumericalError(os.str());
      }
    }
    ++out.steps;
    if (observer && (step + 1) % stride == 0 && !(partial && step == n_full)) observer(t_new, y);

    if (opt.period > 0.0 && t_new >= static_cast<double>(next_cycle) * opt.period - 1e-9 * opt.dt) {
      const auto now = std::chrono::steady_clock::now();
      out.cycle_seconds.push_back(std::chrono::duration<double>(now - cycle_start).count());
      cycle_start = now;
      ++next_cycle;
    }
  }
  out.loop_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.t = opt.t_end;
  return out;
}

}  // namespace vascflow
