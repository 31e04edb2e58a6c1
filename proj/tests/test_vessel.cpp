#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vascflow/errors.hpp"
#include "vascflow/vessel.hpp"

using namespace vascflow;

namespace {

VesselSpec aorta() {
  VesselSpec v;
  v.id = "aorta";
  v.length = 8.6;
  v.wall.A0 = std::numbers::pi * 0.86 * 0.86;
  v.wall.h0 = 0.1032;
  v.wall.E = 5e6;
  v.wall.nu = 0.5;
  v.wall.P0 = 94666.66666666667;
  v.wall.K = arterial_stiffness(v.wall);
  return v;
}

VesselSpec iliac() {
  VesselSpec v;
  v.id = "iliac";
  v.length = 8.5;
  v.wall.A0 = std::numbers::pi * 0.6 * 0.6;
  v.wall.h0 = 0.072;
  v.wall.E = 7e6;
  v.wall.nu = 0.5;
  v.wall.P0 = 94666.66666666667;
  v.wall.K = arterial_stiffness(v.wall);
  return v;
}

WallModel venous() {
  WallModel w;
  w.A0 = 1.3;
  w.K = 2.5e4;
  w.m = 10.0;
  w.n = -1.5;
  w.P0 = 100.0;
  w.p_ext = 20.0;
  return w;
}

}  // namespace

TEST_SUITE("vessel") {
  TEST_CASE("momentum correction factor") {
    CHECK(coriolis_alpha(9.0) == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(coriolis_alpha(2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(coriolis_alpha(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(coriolis_alpha(0.0), DomainError);
    CHECK_THROWS_AS(coriolis_alpha(-1.0), DomainError);
  }

  TEST_CASE("viscous resistance coefficient") {
    CHECK(viscous_resistance_coeff({1.06, 0.04, 9.0}) == doctest::Approx(22.0 * std::numbers::pi * 0.04 / 1.06));
    CHECK(viscous_resistance_coeff({1.06, 0.04, 9.0}) == doctest::Approx(2.608).epsilon(1e-3));
    CHECK(viscous_resistance_coeff({1.0, 1.0 / (8.0 * std::numbers::pi), 2.0}) == doctest::Approx(1.0));
    CHECK(viscous_resistance_coeff({1.04, 0.04, 2.0}) == doctest::Approx(0.9666).epsilon(1e-4));
    CHECK_THROWS_AS(viscous_resistance_coeff({0.0, 0.04, 9.0}), DomainError);
  }

  TEST_CASE("arterial stiffness") {
    CHECK(aorta().wall.K == doctest::Approx(8.000e5).epsilon(1e-3));
    CHECK(iliac().wall.K == doctest::Approx(1.120e6).epsilon(1e-3));
    WallModel w;
    w.A0 = 2.0;
    w.E = 3.0;
    w.nu = 0.3;
    w.h0 = std::sqrt(w.A0) / std::sqrt(std::numbers::pi) * (1.0 - w.nu * w.nu) / w.E;
    CHECK(arterial_stiffness(w) == doctest::Approx(1.0).epsilon(1e-14));
    w.nu = 1.0;
    CHECK_THROWS_AS(arterial_stiffness(w), DomainError);
  }

  TEST_CASE("tube law pressure and inverse") {
    const auto a = aorta();
    CHECK(tube_law_pressure(a.wall.A0, a.wall) == doctest::Approx(a.wall.P0));
    CHECK(std::abs(tube_law_pressure(1.8062, a.wall)) < 1e-3 * a.wall.P0);
    CHECK(std::abs(tube_law_pressure(0.94789, iliac().wall)) < 1e-3 * a.wall.P0);
    CHECK(tube_law_area(0.0, a.wall) == doctest::Approx(1.8062).epsilon(5e-5));
    CHECK(tube_law_area(0.0, iliac().wall) == doctest::Approx(0.94789).epsilon(5e-5));
    CHECK(tube_law_area(a.wall.P0, a.wall) == doctest::Approx(a.wall.A0).epsilon(1e-15));
    CHECK_THROWS_AS(tube_law_pressure(0.0, a.wall), DomainError);
    CHECK_THROWS_AS(tube_law_area(a.wall.P0 - 2.0 * a.wall.K, a.wall), CollapseError);
  }

  TEST_CASE("round trip over a range of areas") {
    const auto art = aorta().wall;
    const auto ven = venous();
    for (double f = 0.2; f <= 5.0; f += 0.05) {
      const double A = f * art.A0;
      CHECK(tube_law_area(tube_law_pressure(A, art), art) == doctest::Approx(A).epsilon(1e-10));
      const double Av = f * ven.A0;
      CHECK(tube_law_area(tube_law_pressure(Av, ven), ven) == doctest::Approx(Av).epsilon(1e-10));
    }
  }

  TEST_CASE("tube law is strictly increasing") {
    for (const auto& w : {aorta().wall, venous()}) {
      double prev = tube_law_pressure(0.05 * w.A0, w);
      for (double f = 0.1; f <= 5.0; f += 0.05) {
        const double p = tube_law_pressure(f * w.A0, w);
        CHECK(p > prev);
        prev = p;
      }
    }
  }

  TEST_CASE("wave speed") {
    const auto a = aorta();
    CHECK(wave_speed(a.wall.A0, a.wall, a.fluid) == doctest::Approx(std::sqrt(a.wall.K / (2.0 * 1.06))));
    CHECK(wave_speed(a.wall.A0, a.wall, a.fluid) == doctest::Approx(614.0).epsilon(1e-3));
    WallModel w;
    w.A0 = 3.0;
    w.K = 2.0 * 1.06;
    CHECK(wave_speed(w.A0, w, FluidProps{}) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("wave speed matches the tube-law slope") {
    const FluidProps fluid;
    for (const auto& w : {aorta().wall, venous()}) {
      for (double f : {0.3, 0.8, 1.0, 1.7, 4.0}) {
        const double A = f * w.A0;
        const double h = 1e-6 * w.A0;
        const double fd = (tube_law_pressure(A + h, w) - tube_law_pressure(A - h, w)) / (2.0 * h);
        const double c = wave_speed(A, w, fluid);
        CHECK(c * c * fluid.rho / A == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("lumped constants") {
    const auto a = aorta();
    const auto k = lumped_constants(a);
    CHECK(k.R0 == doctest::Approx(4.40).epsilon(5e-3));
    CHECK(k.L0 == doctest::Approx(3.92).epsilon(5e-3));
    CHECK(k.C0 == doctest::Approx(5.00e-5).epsilon(5e-3));
    CHECK(lumped_constants(iliac()).L0 == doctest::Approx(1.06 * 8.5 / 1.1310).epsilon(1e-4));

    VesselSpec unit;
    unit.length = 1.0;
    unit.wall.A0 = 1.0;
    unit.wall.K = 2.0;
    unit.fluid = {1.0, 1.0 / (8.0 * std::numbers::pi), 2.0};
    const auto u = lumped_constants(unit);
    CHECK(u.R0 == doctest::Approx(1.0));
    CHECK(u.L0 == doctest::Approx(1.0));
    CHECK(u.C0 == doctest::Approx(1.0));
  }

  TEST_CASE("area-dependent resistance and inductance") {
    const auto a = aorta();
    const auto k = lumped_constants(a);
    const auto nl = lumped_nonlinear(a, a.wall.A0);
    CHECK(nl.R == k.R0);
    CHECK(nl.L == k.L0);
    const auto half = lumped_nonlinear(a, 0.5 * a.wall.A0);
    CHECK(half.R == doctest::Approx(4.0 * k.R0));
    CHECK(half.L == doctest::Approx(2.0 * k.L0));
    CHECK(lumped_nonlinear(a, 1.8062).L == doctest::Approx(5.047).epsilon(1e-3));
    CHECK_THROWS_AS(lumped_nonlinear(a, 0.0), CollapseError);
  }

  TEST_CASE("area-dependent compliance") {
    const auto a = aorta();
    const double C0 = lumped_constants(a).C0;
    CHECK(nonlinear_compliance(a, a.wall.A0) == doctest::Approx(C0));
    CHECK(nonlinear_compliance(a, 4.0 * a.wall.A0) == doctest::Approx(2.0 * C0));
    CHECK(nonlinear_compliance(a, 1.8062) == doctest::Approx(4.405e-5).epsilon(1e-3));
    CHECK_THROWS_AS(nonlinear_compliance(a, -1.0), CollapseError);
    for (double A : {1.0, 1.8062, 3.0}) {
      const double dA = 1e-6 * A;
      const double dp = tube_law_pressure(A + dA, a.wall) - tube_law_pressure(A - dA, a.wall);
      CHECK(nonlinear_compliance(a, A) == doctest::Approx(a.length * 2.0 * dA / dp).epsilon(1e-6));
    }
  }

  TEST_CASE("empirical wall thickness") {
    CHECK(adan_wall_thickness(1e-9) / 1e-9 == doctest::Approx(0.4126).epsilon(1e-6));
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      const double h = r * (0.2802 * std::exp(-5.053 * r) + 0.1324 * std::exp(-0.1114 * r));
      CHECK(adan_wall_thickness(r) == doctest::Approx(h).epsilon(1e-14));
    }
    CHECK(adan_wall_thickness(1.0) == doctest::Approx(0.1204).epsilon(2e-3));
    CHECK(adan_wall_thickness(0.5) == doctest::Approx(0.0735).epsilon(5e-3));
  }

  TEST_CASE("validation") {
    auto v = aorta();
    v.length = 0.0;
    CHECK_THROWS_AS(validate(v), DomainError);
    v = aorta();
    v.wall.m = -1.0;
    CHECK_THROWS_AS(validate(v), DomainError);
    CHECK_NOTHROW(validate(aorta()));
  }
}
