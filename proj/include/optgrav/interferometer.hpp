// End-to-end interferometer models on the Gaussian simulator: a vertical
// Mach-Zehnder with optional squeezed-vacuum input, and an SU(1,1) variant
// whose splitters are parametric amplifiers. Loss channels sit after the
// first element (internal) and after the second (external), identically on
// both arms. Sensitivities are estimated numerically from homodyne
// statistics and a finite-difference slope.
#pragma once

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "optgrav/gaussian.hpp"
#include "optgrav/geometry.hpp"

namespace optgrav {

enum class Topology { MZ, SU11 };
enum class Detection { SingleB, Joint };
enum class Method { ClosedForm, Simulated };

// The homodyne angle that reads out the phase quadrature i(a - a') of an
// output mode under this library's quadrature convention.
inline constexpr double phase_quadrature_angle = -std::numbers::pi / 2;

struct InterferometerConfig {
  Topology topology = Topology::MZ;

  double T = 1.0 - 1e-6;  // beamsplitter intensity transmittance (MZ)
  double r1 = 1.0;        // first amplifier squeeze parameter (SU11)
  double r2 = 1.0;        // second amplifier squeeze parameter (SU11)

  double input_photons = 1e18;  // coherent photon number N0 at the bright port
  double input_squeeze = 0.0;   // squeezed-vacuum parameter r at the dark port (MZ)
  double xi = 0.0;              // squeezed-vacuum phase; 0 squeezes the detected quadrature

  double t1 = 1.0;  // internal amplitude transmittance, both arms
  double t2 = 1.0;  // external amplitude transmittance, both outputs

  double epsilon0 = std::numbers::pi;  // static phase offset
  Detection detection = Detection::SingleB;

  void validate() const {
    if (!(input_photons >= 0.0))
      throw std::invalid_argument("interferometer: N0 must be >= 0");
    if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0))
      throw std::invalid_argument("interferometer: t1, t2 must be in [0, 1]");
    if (topology == Topology::MZ) {
      if (!(T >= 0.0 && T <= 1.0))
        throw std::invalid_argument("interferometer: T must be in [0, 1]");
      if (!(input_squeeze >= 0.0))
        throw std::invalid_argument("interferometer: input squeeze must be >= 0");
    } else {
      if (!(r1 >= 0.0) || !(r2 >= 0.0))
        throw std::invalid_argument("interferometer: r1, r2 must be >= 0");
      if (input_squeeze != 0.0)
        throw std::invalid_argument(
            "interferometer: squeezed input port applies to the MZ topology only");
    }
  }
};

struct SensitivityResult {
  double value = 0.0;  // relative sensitivity, dg/g
  Topology scheme = Topology::MZ;
  Detection detection = Detection::SingleB;
  Method method = Method::ClosedForm;
  double n_sig = 0.0;  // photons acquiring the gravitational phase
};

// Photon number of the signal beam, the resource the sensitivities are
// quoted against: (1-T) N0 for the MZ, sinh^2(r1) (N0 + 1) for the SU(1,1).
inline double signal_photon_number(const InterferometerConfig& cfg) {
  if (cfg.topology == Topology::MZ) return (1.0 - cfg.T) * cfg.input_photons;
  const double g1 = std::sinh(cfg.r1);
  return g1 * g1 * (cfg.input_photons + 1.0);
}

// Inverse of signal_photon_number: the coherent input N0 that yields a
// requested signal photon number under the configured splitting or gain.
inline double input_photons_for_signal(const InterferometerConfig& cfg,
                                       double n_sig) {
  if (!(n_sig > 0.0))
    throw std::invalid_argument("interferometer: n_sig must be > 0");
  if (cfg.topology == Topology::MZ) {
    if (!(cfg.T < 1.0))
      throw std::invalid_argument("interferometer: T = 1 sends no photons to the signal arm");
    return n_sig / (1.0 - cfg.T);
  }
  const double g1sq = std::sinh(cfg.r1) * std::sinh(cfg.r1);
  if (!(g1sq > 0.0))
    throw std::invalid_argument("interferometer: r1 = 0 sends no photons to the signal arm");
  const double n0 = n_sig / g1sq - 1.0;
  if (!(n0 > 0.0))
    throw std::invalid_argument("interferometer: requested n_sig below spontaneous emission");
  return n0;
}

// Output two-mode state for a given gravitational phase. Mode 0 is the
// reference/idler output a2, mode 1 the signal output b2.
//
// Element order: (input squeezer ->) splitter/amplifier -> internal loss t1
// on both arms -> signal-arm phase -> splitter/amplifier -> external loss
// t2 on both outputs. For the MZ the static offset epsilon0 rides on the
// signal arm together with epsilon_G. For the SU(1,1) the offset is the
// pump phase of the second amplifier, realized as a rotation sandwich on
// the idler mode; at the default epsilon0 = pi this de-amplifies, giving
// the dark fringe at epsilon_G = 0.
inline GaussianState interferometer_output(const InterferometerConfig& cfg,
                                           double epsilon_g) {
  cfg.validate();
  constexpr int kRef = 0, kSig = 1;
  GaussianState s = make_coherent(2, kRef, std::sqrt(cfg.input_photons), 0.0);

  if (cfg.topology == Topology::MZ) {
    if (cfg.input_squeeze > 0.0)
      s = apply_single_mode_squeeze(s, kSig, cfg.input_squeeze,
                                    cfg.xi + std::numbers::pi / 2);
    s = apply_beamsplitter(s, kRef, kSig, cfg.T);
    s = apply_loss(s, kRef, cfg.t1);
    s = apply_loss(s, kSig, cfg.t1);
    s = apply_phase(s, kSig, cfg.epsilon0 + epsilon_g);
    s = apply_beamsplitter(s, kRef, kSig, cfg.T);
  } else {
    s = apply_two_mode_squeeze(s, kRef, kSig, cfg.r1);
    s = apply_loss(s, kRef, cfg.t1);
    s = apply_loss(s, kSig, cfg.t1);
    s = apply_phase(s, kSig, epsilon_g);
    s = apply_phase(s, kRef, -cfg.epsilon0);
    s = apply_two_mode_squeeze(s, kRef, kSig, cfg.r2);
    s = apply_phase(s, kRef, cfg.epsilon0);
  }
  s = apply_loss(s, kRef, cfg.t2);
  s = apply_loss(s, kSig, cfg.t2);
  return s;
}

// Phase-quadrature statistics of the configured detection at total signal
// phase offset + epsilon_g.
inline HomodyneStats run(const InterferometerConfig& cfg, double epsilon_g) {
  if (std::abs(epsilon_g) > 1e-3)
    std::cerr << "optgrav: warning: |epsilon_G| = " << std::abs(epsilon_g)
              << " exceeds the linear-response regime (1e-3)\n";
  const GaussianState s = interferometer_output(cfg, epsilon_g);
  if (cfg.detection == Detection::SingleB)
    return homodyne_stats(s, 1, phase_quadrature_angle);
  return joint_quadrature_stats(s, 0, 1, phase_quadrature_angle);
}

struct SimOptions {
  double epsilon_g = 0.0;  // operating point for the variance
  double fd_step = 1e-7;   // central-difference step, rad
};

// Numerical relative sensitivity dg/g from simulated homodyne statistics:
// sqrt(variance) over the finite-difference slope of the mean, divided by
// the induced phase (which is linear in g, so d(psi)/dg * g = psi).
inline SensitivityResult simulate_sensitivity(const InterferometerConfig& cfg,
                                              const GeometryConfig& geometry,
                                              const SimOptions& opts = {}) {
  const double psi = gravitational_phase(geometry);
  const double h = opts.fd_step;
  const double m_plus = run(cfg, opts.epsilon_g + h).mean;
  const double m_minus = run(cfg, opts.epsilon_g - h).mean;
  const double slope = (m_plus - m_minus) / (2.0 * h);
  if (std::abs(slope) < 1e-300)
    throw std::runtime_error("simulate_sensitivity: phase response underflow");
  const HomodyneStats center = run(cfg, opts.epsilon_g);
  SensitivityResult out;
  out.value = std::sqrt(center.variance) / (std::abs(slope) * psi);
  out.scheme = cfg.topology;
  out.detection = cfg.detection;
  out.method = Method::Simulated;
  out.n_sig = signal_photon_number(cfg);
  return out;
}

}  // namespace optgrav
