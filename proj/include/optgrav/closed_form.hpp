// Closed-form sensitivities of the interferometer schemes: analytic
// counterparts of the Gaussian simulation, used as the sweep engine and as
// the cross-check oracle for the numerical path.
//
// All formulas take the signal photon number n_sig directly; conversion
// from the coherent input N0 lives in interferometer.hpp. Loss parameters
// are amplitude transmittances t with eta^2 = 1 - t^2.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "optgrav/geometry.hpp"
#include "optgrav/interferometer.hpp"

namespace optgrav {

struct PhaseSensitivity {
  double value = 0.0;  // rad
  Detection detection = Detection::SingleB;
};

namespace detail {

inline void require_positive_nsig(double n_sig) {
  if (!(n_sig > 0.0)) throw std::domain_error("sensitivity: n_sig must be > 0");
}

inline void require_transmittance(double t, const char* what) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error(std::string("sensitivity: ") + what + " must be in (0, 1]");
}

inline void require_nonneg(double r, const char* what) {
  if (!(r >= 0.0)) throw std::domain_error(std::string("sensitivity: ") + what + " must be >= 0");
}

inline double eta_sq(double t) { return 1.0 - t * t; }

}  // namespace detail

// Phase sensitivity of the plain MZ from single-output homodyne detection.
inline PhaseSensitivity mz_phase_single(double T, double n_sig) {
  detail::require_positive_nsig(n_sig);
  detail::require_transmittance(T, "T");
  return {1.0 / (std::sqrt(T) * 2.0 * std::sqrt(n_sig)), Detection::SingleB};
}

// Phase sensitivity of the plain MZ from the summed quadratures of both
// outputs. Optimal at T = 1/2, where it matches the single-detection
// optimum at T -> 1.
inline PhaseSensitivity mz_phase_joint(double T, double n_sig) {
  detail::require_positive_nsig(n_sig);
  if (!(T >= 0.0 && T <= 1.0)) throw std::domain_error("sensitivity: T must be in [0, 1]");
  const double s = std::sqrt(T) + std::sqrt(1.0 - T);
  return {std::numbers::sqrt2 / (s * 2.0 * std::sqrt(n_sig)), Detection::Joint};
}

// Standard quantum limit for dg/g: coherent light, no loss, n_sig signal
// photons, with the geometry's induced phase converting phase sensitivity
// into acceleration sensitivity.
inline SensitivityResult sql(double n_sig, const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  const double psi = gravitational_phase(geometry);
  return {1.0 / (2.0 * std::sqrt(n_sig) * psi), Topology::MZ,
          Detection::SingleB, Method::ClosedForm, n_sig};
}

// MZ with squeezed-vacuum input r and two-stage loss, single detection.
// Reduces to sql at r = 0, t1 = t2 = T = 1.
inline SensitivityResult mz_squeezed_lossy(double T, double n_sig, double r,
                                           double t1, double t2,
                                           const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  detail::require_transmittance(T, "T");
  detail::require_transmittance(t1, "t1");
  detail::require_transmittance(t2, "t2");
  detail::require_nonneg(r, "r");
  const double psi = gravitational_phase(geometry);
  const double num = std::sqrt(t1 * t1 * t2 * t2 * std::exp(-2.0 * r) +
                               detail::eta_sq(t1) * t2 * t2 +
                               detail::eta_sq(t2));
  const double value =
      num / (t1 * t2 * 2.0 * std::sqrt(T) * std::sqrt(n_sig) * psi);
  return {value, Topology::MZ, Detection::SingleB, Method::ClosedForm, n_sig};
}

// SU(1,1) interferometer, single homodyne detection at the signal output.
// General in the two gains G_i = cosh(r_i); the de-amplified combinations
// are Gm = G1 G2 - g1 g2 and gm = G2 g1 - g2 G1.
inline SensitivityResult su11_single(double n_sig, double r1, double r2,
                                     double t1, double t2,
                                     const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  detail::require_nonneg(r1, "r1");
  detail::require_nonneg(r2, "r2");
  detail::require_transmittance(t1, "t1");
  detail::require_transmittance(t2, "t2");
  const double G1 = std::cosh(r1), g1 = std::sinh(r1);
  const double G2 = std::cosh(r2), g2 = std::sinh(r2);
  if (!(n_sig > g1 * g1))
    throw std::domain_error("sensitivity: n_sig must exceed the spontaneous photon number");
  const double Gm = G1 * G2 - g1 * g2;
  const double gm = G2 * g1 - g2 * G1;
  const double psi = gravitational_phase(geometry);
  const double num = std::sqrt(
      t1 * t1 * t2 * t2 * (gm * gm + Gm * Gm) / (G2 * G2) +
      detail::eta_sq(t1) * t2 * t2 * (1.0 + g2 * g2 / (G2 * G2)) +
      detail::eta_sq(t2) / (G2 * G2));
  const double value =
      num / (2.0 * t1 * t2 * std::sqrt(n_sig - g1 * g1) * psi);
  return {value, Topology::SU11, Detection::SingleB, Method::ClosedForm, n_sig};
}

// Equal-gain special case of su11_single (r1 = r2 = r), in the simplified
// form valid for n_sig much larger than the spontaneous photon number.
inline SensitivityResult su11_single_equal_gain(double n_sig, double r,
                                                double t1, double t2,
                                                const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  detail::require_nonneg(r, "r");
  detail::require_transmittance(t1, "t1");
  detail::require_transmittance(t2, "t2");
  const double G2 = std::cosh(r), g2 = std::sinh(r);
  const double psi = gravitational_phase(geometry);
  const double num = std::sqrt(
      t1 * t1 * t2 * t2 / (G2 * G2) +
      detail::eta_sq(t1) * t2 * t2 * (1.0 + g2 * g2 / (G2 * G2)) +
      detail::eta_sq(t2) / (G2 * G2));
  const double value = num / (2.0 * t1 * t2 * std::sqrt(n_sig) * psi);
  return {value, Topology::SU11, Detection::SingleB, Method::ClosedForm, n_sig};
}

// SU(1,1) interferometer, joint homodyne detection of both outputs.
inline SensitivityResult su11_joint(double n_sig, double r1, double r2,
                                    double t1, double t2,
                                    const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  detail::require_nonneg(r1, "r1");
  detail::require_nonneg(r2, "r2");
  detail::require_transmittance(t1, "t1");
  detail::require_transmittance(t2, "t2");
  const double psi = gravitational_phase(geometry);
  const double num = std::sqrt(2.0 * t1 * t1 * t2 * t2 * std::exp(-2.0 * r1) +
                               2.0 * detail::eta_sq(t1) * t2 * t2 +
                               2.0 * std::exp(-2.0 * r2) * detail::eta_sq(t2));
  const double value = num / (2.0 * t1 * t2 * std::sqrt(n_sig) * psi);
  return {value, Topology::SU11, Detection::Joint, Method::ClosedForm, n_sig};
}

// The unsqueezed lossy baseline: mz_squeezed_lossy at r = 0 in the T -> 1
// limit, which collapses to 1 / (t1 t2 2 sqrt(n_sig) psi).
inline SensitivityResult effective_sql(double n_sig, double t1, double t2,
                                       const GeometryConfig& geometry) {
  detail::require_positive_nsig(n_sig);
  detail::require_transmittance(t1, "t1");
  detail::require_transmittance(t2, "t2");
  const double psi = gravitational_phase(geometry);
  const double value = 1.0 / (t1 * t2 * 2.0 * std::sqrt(n_sig) * psi);
  return {value, Topology::MZ, Detection::SingleB, Method::ClosedForm, n_sig};
}

}  // namespace optgrav
