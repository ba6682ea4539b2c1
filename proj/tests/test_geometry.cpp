#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "optgrav/geometry.hpp"
#include "oracles.hpp"

using namespace optgrav;

namespace {
constexpr double kEarthRs = 8.87e-3;
constexpr double kEarthR2 = 6.371e6;
constexpr double kEarthR1 = kEarthR2 + 50.0;

GeometryConfig figure_geometry(double L = 1000.0, double H = 50.0) {
  return GeometryConfig::from_surface_gravity(9.8, H, L, 2.82e14, 3e8);
}
}  // namespace

TEST_CASE("proper height reduces to the coordinate difference in flat space") {
  CHECK(proper_height_exact(0.0, kEarthR1, kEarthR2) == Catch::Approx(50.0).epsilon(1e-15));
  CHECK(proper_height_approx(0.0, kEarthR1, kEarthR2) == 50.0);
}

TEST_CASE("proper height picks up the expected relativistic excess") {
  // Frozen from the Romberg oracle below; the first-order term
  // (r_s/2) ln(R1/R2) evaluates to the same digits.
  const double frozen_excess = 3.4806016e-8;

  const double oracle = oracles::proper_height_excess(kEarthRs, kEarthR1, kEarthR2);
  REQUIRE(oracle == Catch::Approx(frozen_excess).margin(1e-13));

  const double exact = proper_height_exact(kEarthRs, kEarthR1, kEarthR2);
  CHECK(exact - 50.0 == Catch::Approx(oracle).margin(5e-13));

  const double approx = proper_height_approx(kEarthRs, kEarthR1, kEarthR2);
  CHECK(approx - 50.0 == Catch::Approx(frozen_excess).margin(1e-13));
}

TEST_CASE("exact and first-order proper heights agree for terrestrial inputs") {
  const double exact = proper_height_exact(kEarthRs, kEarthR1, kEarthR2);
  const double approx = proper_height_approx(kEarthRs, kEarthR1, kEarthR2);
  CHECK(std::abs(exact - approx) <= 1e-12);
}

TEST_CASE("proper height rejects non-exterior intervals") {
  CHECK_THROWS_AS(proper_height_exact(1.0, 3.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(proper_height_exact(1.0, 2.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(proper_height_approx(1.0, 2.0, 3.0), std::domain_error);
}

TEST_CASE("height inversion is a fixed point of the forward map") {
  const double dR = radius_offset_for_height(kEarthRs, kEarthR2, 50.0);
  // The offset absorbs a ~3.5e-8 m correction.
  CHECK(50.0 - dR == Catch::Approx(3.4806016e-8).margin(1e-13));
  const double back = proper_height_approx_offset(kEarthRs, kEarthR2, dR);
  CHECK(std::abs(back - 50.0) <= 1e-12);
  CHECK(radius_for_height(kEarthRs, kEarthR2, 50.0) ==
        Catch::Approx(kEarthR2 + dR).epsilon(1e-15));
}

TEST_CASE("vertical coordinate time: flat-space and oracle checks") {
  const double c = constants::speed_of_light;
  const TimePair flat = coord_time_vertical(0.0, kEarthR1, kEarthR2, c);
  CHECK(flat.exact == Catch::Approx(50.0 / c).epsilon(1e-14));
  CHECK(flat.approx == Catch::Approx(50.0 / c).epsilon(1e-14));

  const TimePair tv = coord_time_vertical(kEarthRs, kEarthR1, kEarthR2, c);
  const double oracle_excess =
      oracles::coord_time_vertical_excess(kEarthRs, kEarthR1, kEarthR2);
  CHECK(tv.exact * c - 50.0 == Catch::Approx(oracle_excess).margin(5e-13));
  // First-order form differs from the exact integral far below a picometer.
  CHECK(std::abs(tv.exact - tv.approx) * c <= 1e-12);
}

TEST_CASE("vertical coordinate time grows with the Schwarzschild radius") {
  double prev = coord_time_vertical(0.0, kEarthR1, kEarthR2).exact;
  for (double rs : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const double cur = coord_time_vertical(rs, kEarthR1, kEarthR2).exact;
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("horizontal coordinate time") {
  const double c = constants::speed_of_light;
  CHECK(coord_time_horizontal(kEarthRs, kEarthR1, 0.0, c) == 0.0);
  CHECK(coord_time_horizontal(0.0, kEarthR1, 1000.0, c) ==
        Catch::Approx(1000.0 / c).epsilon(1e-15));
  const double t = coord_time_horizontal(kEarthRs, kEarthR1, 1000.0, c);
  // Exceeds L/c by the dilation factor 1 + r_s/(2 R1) to first order.
  CHECK(t / (1000.0 / c) - 1.0 == Catch::Approx(6.9612e-10).epsilon(1e-4));
  CHECK_THROWS_AS(coord_time_horizontal(2.0, 1.0, 10.0), std::domain_error);
}

TEST_CASE("local time dilation") {
  CHECK(local_time(0.0, kEarthR2, 123.0) == 123.0);
  CHECK(local_time(kEarthRs, kEarthR2, 0.0) == 0.0);
  CHECK(1.0 - local_time(kEarthRs, kEarthR2, 1.0) ==
        Catch::Approx(6.9612e-10).epsilon(1e-4));
}

TEST_CASE("local gravitational acceleration") {
  CHECK(local_g(kEarthRs, kEarthR2, 3e8) == Catch::Approx(9.8338).epsilon(1e-4));
  CHECK(local_g(0.0, kEarthR2) == 0.0);
  // Quadrupling the radius divides g by 16.
  CHECK(local_g(kEarthRs, 4.0 * kEarthR2) ==
        Catch::Approx(local_g(kEarthRs, kEarthR2) / 16.0).epsilon(1e-14));
}

TEST_CASE("path times reproduce the reference phase point") {
  const GeometryConfig geo = figure_geometry();
  const PathTimes pt = path_times(geo);
  CHECK(pt.psi == Catch::Approx(5.3736667e-6).epsilon(1e-6));
  CHECK(pt.psi == Catch::Approx(gravitational_phase(geo)).epsilon(1e-12));
  CHECK(pt.delta_tau > 0.0);
}

TEST_CASE("delta tau is consistent with the difference of the two taus") {
  const GeometryConfig geo = figure_geometry();
  const PathTimes pt = path_times(geo);
  const double direct = pt.tau_reference - pt.tau_signal;
  // The taus are ~11 orders of magnitude larger than their difference, so
  // the direct subtraction is only good to a few ulps of tau itself.
  const double ulp_scale =
      std::abs(pt.tau_reference) * std::numeric_limits<double>::epsilon();
  CHECK(std::abs(pt.delta_tau - direct) <= 8.0 * ulp_scale);
}

TEST_CASE("reference path local time is the proper path length over c") {
  const GeometryConfig geo = figure_geometry();
  const PathTimes pt = path_times(geo);
  CHECK(pt.tau_reference ==
        Catch::Approx((geo.L + 2.0 * geo.H) / geo.c).epsilon(1e-12));
}

TEST_CASE("phase vanishes with height and with curvature") {
  // H -> 0 limit: psi scales out linearly.
  double prev = std::numeric_limits<double>::infinity();
  for (double H : {10.0, 1.0, 1e-3, 1e-6}) {
    const GeometryConfig geo = figure_geometry(1000.0, H);
    const double psi = path_times(geo).psi;
    CHECK(psi < prev);
    prev = psi;
  }
  CHECK(prev <= 1e-6 * 5.374e-6);

  // Flat space: exactly zero.
  GeometryConfig flat = figure_geometry();
  flat.r_s = 0.0;
  const PathTimes pt = path_times(flat);
  CHECK(pt.delta_tau == 0.0);
  CHECK(pt.psi == 0.0);
}

TEST_CASE("phase is linear in omega and separable in L") {
  GeometryConfig geo = figure_geometry();
  const double psi1 = path_times(geo).psi;
  geo.omega *= 2.0;
  CHECK(path_times(geo).psi == Catch::Approx(2.0 * psi1).epsilon(1e-14));

  // psi(H, L) = psi(H, 0 surrogate) + omega g H L / c^3 in the closed form.
  GeometryConfig with_arm = figure_geometry(1000.0);
  GeometryConfig no_arm = figure_geometry(0.0);
  no_arm.L = 0.0;  // from_surface_gravity validated; L = 0 is allowed
  const double g = local_g(with_arm.r_s, with_arm.R2, with_arm.c);
  const double arm_term =
      with_arm.omega * g * with_arm.H * with_arm.L / std::pow(with_arm.c, 3);
  CHECK(gravitational_phase(with_arm) ==
        Catch::Approx(gravitational_phase(no_arm) + arm_term).epsilon(1e-12));
}

TEST_CASE("coordinate-offset form of delta tau stays close to the H form") {
  const GeometryConfig geo = figure_geometry();
  const double h_form = delta_tau_first_order(geo);
  const double coord_form = delta_tau_coordinate_form(geo);
  // The two differ by the R1 R2 vs R2^2 substitution, ~1e-5 relative here.
  CHECK(coord_form == Catch::Approx(h_form).epsilon(1e-4));
  CHECK(coord_form != h_form);
}

TEST_CASE("geometry validation catches bad inputs") {
  GeometryConfig geo;
  geo.r_s = -1.0;
  CHECK_THROWS_AS(geo.validate(), std::invalid_argument);
  geo = GeometryConfig{};
  geo.H = 0.0;
  CHECK_THROWS_AS(geo.validate(), std::invalid_argument);
  geo = GeometryConfig{};
  geo.r_s = 1e4;  // violates the weak-field guard
  CHECK_THROWS_AS(geo.validate(), std::invalid_argument);
  geo = GeometryConfig{};
  CHECK_NOTHROW(geo.validate());
}
