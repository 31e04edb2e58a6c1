#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vascflow/analysis.hpp"
#include "vascflow/benchmarks.hpp"
#include "vascflow/errors.hpp"

using namespace vascflow;

namespace {

std::vector<Complex> numeric_eigenvalues(const std::vector<double>& rowmajor) {
  const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(rowmajor.size()))));
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = rowmajor[static_cast<std::size_t>(i * n + j)];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  std::vector<Complex> out(es.eigenvalues().begin(), es.eigenvalues().end());
  return out;
}

// Greedy matching distance between two eigenvalue sets, relative to the spectral radius.
double spectrum_gap(std::vector<Complex> a, std::vector<Complex> b) {
  double radius = 0.0;
  for (const auto& z : b) radius = std::max(radius, std::abs(z));
  double worst = 0.0;
  for (const auto& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex x, Complex y) { return std::abs(x - z) < std::abs(y - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst / radius;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("two-state eigenvalues") {
    const auto crit = eigenvalues_pin_qout(2.0, 1.0, 1.0);
    CHECK(crit[0] == Complex(-1.0, 0.0));
    CHECK(crit[1] == Complex(-1.0, 0.0));
    CHECK(stability_discriminant(VesselKind::pin_qout, 2.0, 1.0, 1.0) == 0.0);

    const auto osc = eigenvalues_pin_qout(0.0, 2.0, 0.5);
    CHECK(osc[0].real() == 0.0);
    CHECK(std::abs(osc[0].imag()) == doctest::Approx(1.0));

    const auto k = lumped_constants(aortic_bifurcation().vessels[0]);
    const auto e = eigenvalues_pin_qout(k.R0, k.L0, k.C0);
    CHECK(e[0].imag() != 0.0);
    CHECK(e[0].real() == doctest::Approx(-k.R0 / (2.0 * k.L0)));
    CHECK(e[0].real() == doctest::Approx(-0.561).epsilon(5e-3));
    CHECK(spectrum_gap({e.begin(), e.end()}, numeric_eigenvalues(coefficient_matrix(VesselKind::pin_qout, k.R0, k.L0, k.C0))) <
          1e-12);
  }

  TEST_CASE("three-state eigenvalues") {
    const auto p = eigenvalues_pin_pout(4.0, 1.0, 1.0);
    CHECK(p[0] == Complex(-4.0, 0.0));
    CHECK(p[1] == Complex(-2.0, 0.0));
    CHECK(p[2] == Complex(-2.0, 0.0));
    const auto q = eigenvalues_qin_qout(4.0, 1.0, 1.0);
    CHECK(q[0] == Complex(0.0, 0.0));
    CHECK(q[1] == Complex(-2.0, 0.0));
    CHECK(q[2] == Complex(-2.0, 0.0));

    const auto k = lumped_constants(aortic_bifurcation().vessels[0]);
    CHECK(stability_discriminant(VesselKind::qin_qout, k.R0, k.L0, k.C0) < 0.0);
    CHECK(eigenvalues_qin_qout(k.R0, k.L0, k.C0)[1].imag() != 0.0);
  }

  TEST_CASE("closed forms against a generic eigensolver") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    const VesselKind kinds[] = {VesselKind::pin_qout, VesselKind::qin_pout, VesselKind::pin_pout, VesselKind::qin_qout};
    for (int n = 0; n < 500; ++n) {
      const double R = std::pow(10.0, logu(rng));
      const double L = std::pow(10.0, logu(rng));
      const double C = std::pow(10.0, logu(rng));
      for (auto kind : kinds) {
        const auto rep = stability_report(kind, {R, L, C});
        CHECK(spectrum_gap(rep.eigenvalues, numeric_eigenvalues(coefficient_matrix(kind, R, L, C))) < 1e-9);
        if (kind == VesselKind::qin_qout) {
          CHECK(rep.eigenvalues[0] == Complex(0.0, 0.0));
          CHECK(rep.classification == Stability::marginal);
          for (std::size_t i = 1; i < 3; ++i) CHECK(rep.eigenvalues[i].real() < 0.0);
        } else {
          CHECK(rep.classification == Stability::asymptotically_stable);
          for (const auto& e : rep.eigenvalues) CHECK(e.real() < 0.0);
        }
      }
    }
  }

  TEST_CASE("discriminant factors of the bifurcation") {
    const auto net = aortic_bifurcation();
    const auto a = discriminant_factors(net.vessels[0]);
    const auto i = discriminant_factors(net.vessels[1]);
    CHECK(a.f1 == doctest::Approx(2.47).epsilon(5e-3));
    CHECK(i.f1 == doctest::Approx(7.19).epsilon(5e-3));
    CHECK(std::max(a.f2, i.f2) == doctest::Approx(160000.00).epsilon(5e-3));
    CHECK(std::min(a.f2, i.f2) == doctest::Approx(158117.65).epsilon(5e-3));
    for (const auto& v : net.vessels) {
      const auto f = discriminant_factors(v);
      CHECK(f.f1 < f.f2);
      CHECK(f.discriminant < 0.0);
    }
  }

  TEST_CASE("discriminant sign follows the factor ordering") {
    // Shrink the wall until f1 = f2 and check the sign change of the three-state discriminant.
    auto v = aortic_bifurcation().vessels[0];
    const auto base = discriminant_factors(v);
    v.wall.E *= base.f1 / base.f2;
    v.wall.K = arterial_stiffness(v.wall);
    const auto edge = discriminant_factors(v);
    CHECK(edge.f1 == doctest::Approx(edge.f2).epsilon(1e-12));
    const auto k = lumped_constants(v);
    CHECK(std::abs(edge.discriminant) < 1e-9 * (k.R0 / k.L0) * (k.R0 / k.L0));
    v.wall.E *= 0.5;
    v.wall.K = arterial_stiffness(v.wall);
    CHECK(discriminant_factors(v).discriminant > 0.0);
  }

  TEST_CASE("flow balance") {
    const auto q = synthetic_inflow(1.1, 0.3, 70.0);
    CHECK(flow_balance_check(q, q) == 0.0);
    const WaveformSeries mean({0.0}, {q.mean()}, 1.1);
    CHECK(std::abs(flow_balance_check(q, mean)) < 1e-12 * q.integral());
    std::vector<double> scaled(q.values().begin(), q.values().end());
    for (auto& x : scaled) x *= 0.9;
    const WaveformSeries out({q.times().begin(), q.times().end()}, scaled, 1.1);
    CHECK(flow_balance_check(q, out) == doctest::Approx(0.1 * q.integral()));
    CHECK_THROWS_AS(flow_balance_check(q, synthetic_inflow(1.0, 0.3, 70.0)), DomainError);
  }

  TEST_CASE("dimensional coefficients") {
    const DimensionalScales s{1.1, 8.6, 2.3235, 600.0};
    const auto d = dimensional_coefficients(s, 600.0, 2.608);
    CHECK(d.convective_to_pressure == doctest::Approx(1.0));
    CHECK(d.gamma_C / d.gamma_P == doctest::Approx(1.0));
    CHECK(d.gamma_F == doctest::Approx(2.608 * 1.1 / 2.3235));
    CHECK(d.friction_to_pressure == doctest::Approx(d.gamma_F / d.gamma_P));

    const auto e = dimensional_coefficients({2.2, 8.6, 2.3235, 10.0}, 600.0, 2.608);
    const auto f = dimensional_coefficients({1.1, 30.0, 2.3235, 10.0}, 600.0, 2.608);
    CHECK(e.gamma_C / e.gamma_P == doctest::Approx(f.gamma_C / f.gamma_P));
    CHECK(e.convective_to_pressure == doctest::Approx(100.0 / 360000.0));
    CHECK_THROWS_AS(dimensional_coefficients({0.0, 1.0, 1.0, 1.0}, 1.0, 1.0), DomainError);
  }

  TEST_CASE("velocity statistics") {
    CycleSeries c;
    for (int i = 0; i <= 100; ++i) {
      c.t.push_back(0.01 * i);
      c.P.push_back(1.0);
      c.A.push_back(2.0);
      c.Q.push_back(20.0);
    }
    auto v = velocity_stats(c);
    CHECK(v.mean == doctest::Approx(10.0));
    CHECK(v.max == doctest::Approx(10.0));

    for (int i = 0; i <= 100; ++i) c.Q[static_cast<std::size_t>(i)] = 2.0 * std::sin(2.0 * std::numbers::pi * c.t[static_cast<std::size_t>(i)]);
    v = velocity_stats(c);
    CHECK(v.mean == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-3));
    CHECK(v.max == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(velocity_stats(CycleSeries{}), DomainError);
  }
}
