// Light propagation in the weak-field Schwarzschild exterior: proper
// lengths, coordinate and local travel times, and the gravitationally
// induced phase between the elevated signal path and the ground path.
//
// Unit conventions: all lengths in meters. Internally times are carried in
// geometric units (meters, c = 1); every public function that returns a
// time converts to seconds using the configured speed of light. The optical
// frequency `omega` is used as the plain numeric frequency in Hz, matching
// the parameter studies this library reproduces; no factor of 2*pi is
// applied anywhere.
#pragma once

#include <cmath>
#include <stdexcept>

#include "optgrav/constants.hpp"
#include "optgrav/quadrature.hpp"

namespace optgrav {

// Schwarzschild plus apparatus parameters. R2 is the radial coordinate of
// the ground station, H the proper height of the vertical arms, L the
// proper length of the horizontal arm at the top.
struct GeometryConfig {
  double r_s = constants::earth_schwarzschild_radius;  // m
  double R2 = constants::earth_radius;                 // m
  double H = 50.0;                                     // m
  double L = 1000.0;                                   // m
  double omega = 2.82e14;                              // Hz
  double c = constants::speed_of_light;                // m/s

  // Builds a config whose Schwarzschild radius reproduces a given surface
  // gravity g at R2 (r_s = 2 g R2^2 / c^2). Handy for parameter studies
  // quoted in terms of g rather than r_s.
  static GeometryConfig from_surface_gravity(double g, double H, double L,
                                             double omega,
                                             double c = constants::speed_of_light,
                                             double R2 = constants::earth_radius) {
    GeometryConfig cfg;
    cfg.r_s = 2.0 * g * R2 * R2 / (c * c);
    cfg.R2 = R2;
    cfg.H = H;
    cfg.L = L;
    cfg.omega = omega;
    cfg.c = c;
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (!(r_s >= 0.0)) throw std::invalid_argument("geometry: r_s must be >= 0");
    if (!(R2 > r_s)) throw std::invalid_argument("geometry: requires R2 > r_s");
    if (!(H > 0.0)) throw std::invalid_argument("geometry: H must be > 0");
    if (!(L >= 0.0)) throw std::invalid_argument("geometry: L must be >= 0");
    if (!(omega > 0.0)) throw std::invalid_argument("geometry: omega must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("geometry: c must be > 0");
    // Weak-field guard: the first-order expansions used throughout assume
    // r_s/R2 is tiny.
    if (!(r_s / R2 < 1e-3))
      throw std::invalid_argument("geometry: weak-field guard r_s/R2 < 1e-3 violated");
  }
};

// Local travel times of both paths, their difference, and the induced phase.
struct PathTimes {
  double tau_signal = 0.0;     // s, elevated path
  double tau_reference = 0.0;  // s, ground path
  double delta_tau = 0.0;      // s, tau_reference - tau_signal
  double psi = 0.0;            // rad, omega * delta_tau
};

// Both evaluations of a travel time: numerical quadrature of the exact
// integrand and the first-order closed form.
struct TimePair {
  double exact = 0.0;   // s
  double approx = 0.0;  // s
};

namespace detail {

inline void require_exterior_interval(double r_s, double R1, double R2) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R2 > r_s)) throw std::domain_error("requires R2 > r_s");
  if (!(R1 > R2)) throw std::domain_error("requires R1 > R2");
}

// 1 - sqrt(1 - x) without cancellation for tiny x.
inline double one_minus_sqrt1m(double x) {
  return x / (1.0 + std::sqrt(1.0 - x));
}

}  // namespace detail

// Proper radial distance between R2 and R1, integrating the unexpanded
// ruler element 1/sqrt(1 - r_s/r).
inline double proper_height_exact(double r_s, double R1, double R2) {
  detail::require_exterior_interval(r_s, R1, R2);
  if (r_s == 0.0) return R1 - R2;
  return integrate([r_s](double r) { return 1.0 / std::sqrt(1.0 - r_s / r); },
                   R2, R1);
}

// First-order closed form of the proper radial distance, parameterized by
// the coordinate offset dR = R1 - R2. Using the offset keeps the tiny
// relativistic correction representable when R1 and R2 agree to ~1e-8 m.
inline double proper_height_approx_offset(double r_s, double R2, double dR) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R2 > r_s)) throw std::domain_error("requires R2 > r_s");
  if (!(dR > 0.0)) throw std::domain_error("requires R1 > R2");
  return dR + 0.5 * r_s * std::log1p(dR / R2);
}

inline double proper_height_approx(double r_s, double R1, double R2) {
  detail::require_exterior_interval(r_s, R1, R2);
  return proper_height_approx_offset(r_s, R2, R1 - R2);
}

// Inverts proper_height_approx for the coordinate offset R1 - R2 given a
// proper height H. A single Newton step suffices: the correction is of
// order r_s * H / R2 (~1e-8 m for Earth) and the residual after one step
// is far below machine noise.
inline double radius_offset_for_height(double r_s, double R2, double H) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R2 > r_s)) throw std::domain_error("requires R2 > r_s");
  if (!(H > 0.0)) throw std::domain_error("requires H > 0");
  const double f0 = 0.5 * r_s * std::log1p(H / R2);
  const double fp = 1.0 + 0.5 * r_s / (R2 + H);
  return H - f0 / fp;
}

inline double radius_for_height(double r_s, double R2, double H) {
  return R2 + radius_offset_for_height(r_s, R2, H);
}

// Coordinate time for a radial null ray between R2 and R1, in seconds.
// exact: quadrature of 1/(1 - r_s/r); approx: dR + r_s*ln(R1/R2).
inline TimePair coord_time_vertical(double r_s, double R1, double R2,
                                    double c = constants::speed_of_light) {
  detail::require_exterior_interval(r_s, R1, R2);
  const double dR = R1 - R2;
  double exact_m;
  if (r_s == 0.0) {
    exact_m = dR;
  } else {
    exact_m = integrate([r_s](double r) { return 1.0 / (1.0 - r_s / r); },
                        R2, R1);
  }
  const double approx_m = dR + r_s * std::log1p(dR / R2);
  return {exact_m / c, approx_m / c};
}

// Coordinate time for a transverse null ray of proper length L at radius
// R1, in seconds.
inline double coord_time_horizontal(double r_s, double R1, double L,
                                    double c = constants::speed_of_light) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R1 > r_s)) throw std::domain_error("requires R1 > r_s");
  if (!(L >= 0.0)) throw std::domain_error("requires L >= 0");
  return L / (c * std::sqrt(1.0 - r_s / R1));
}

// Converts far-away coordinate time to the local time of a static observer
// at radius R2.
inline double local_time(double r_s, double R2, double t_coord) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R2 > r_s)) throw std::domain_error("requires R2 > r_s");
  return std::sqrt(1.0 - r_s / R2) * t_coord;
}

// Local gravitational acceleration at radius R2, m/s^2.
inline double local_g(double r_s, double R2,
                      double c = constants::speed_of_light) {
  if (!(r_s >= 0.0)) throw std::domain_error("requires r_s >= 0");
  if (!(R2 > r_s)) throw std::domain_error("requires R2 > r_s");
  return 0.5 * r_s * c * c / (R2 * R2);
}

// The gravitationally induced phase in closed form,
//   psi = omega * (g/c^3) * (H*L + H^2),
// which is also the conversion factor between phase sensitivity and
// relative acceleration sensitivity (psi is linear in g).
inline double gravitational_phase(const GeometryConfig& cfg) {
  cfg.validate();
  // Equals omega * g * (H*L + H^2) / c^3 with g = r_s c^2 / (2 R2^2).
  return cfg.omega * 0.5 * cfg.r_s * (cfg.H * cfg.L + cfg.H * cfg.H) /
         (cfg.R2 * cfg.R2 * cfg.c);
}

// Local-time deficit of the elevated path in seconds, first-order form in
// the measured proper height H (the form gravitational_phase derives from).
inline double delta_tau_first_order(const GeometryConfig& cfg) {
  cfg.validate();
  return 0.5 * cfg.r_s * (cfg.H * cfg.L + cfg.H * cfg.H) /
         (cfg.R2 * cfg.R2 * cfg.c);
}

// Same deficit expressed through the coordinate offset dR = R1 - R2 and the
// mixed radius product R1*R2. Kept for comparison with the H-based form;
// for terrestrial parameters the two differ by ~1e-5 relative.
inline double delta_tau_coordinate_form(const GeometryConfig& cfg) {
  cfg.validate();
  const double dR = radius_offset_for_height(cfg.r_s, cfg.R2, cfg.H);
  const double R1 = cfg.R2 + dR;
  return 0.5 * cfg.r_s * (dR * cfg.L / (R1 * cfg.R2) + dR * dR / (cfg.R2 * cfg.R2)) /
         cfg.c;
}

// Local travel times of both interferometer paths and the induced phase.
//
// The reference path runs on the ground: its local time is the proper path
// length (L + 2H) over c. The signal path climbs to R1, crosses L, and
// returns; its local time follows from the coordinate times above, dilated
// to the ground clock. delta_tau uses the first-order H-based form, which
// is consistent with the subtraction of the two taus to within their
// floating-point rounding (the taus are ~1e11 times larger than their
// difference).
inline PathTimes path_times(const GeometryConfig& cfg) {
  cfg.validate();
  const double dR = radius_offset_for_height(cfg.r_s, cfg.R2, cfg.H);
  const double R1 = cfg.R2 + dR;

  // Geometric units until the final conversion.
  const double t_vertical = dR + cfg.r_s * std::log1p(dR / cfg.R2);
  const double t_horizontal = cfg.L / std::sqrt(1.0 - cfg.r_s / R1);
  const double dilation = std::sqrt(1.0 - cfg.r_s / cfg.R2);

  PathTimes out;
  out.tau_signal = dilation * (t_horizontal + 2.0 * t_vertical) / cfg.c;
  out.tau_reference = (cfg.L + 2.0 * cfg.H) / cfg.c;
  out.delta_tau = delta_tau_first_order(cfg);
  out.psi = cfg.omega * out.delta_tau;
  return out;
}

}  // namespace optgrav
