// Gaussian-state simulator for a handful of optical modes: mean vector and
// covariance matrix over quadratures, evolved by the symplectic maps of the
// standard passive and active elements plus beamsplitter-model loss.
//
// Quadrature convention: x = a + a', p = i(a' - a), vacuum variance 1 in
// both, so a coherent state alpha has mean (2 Re alpha, 2 Im alpha). The
// state vector interleaves modes as (x1, p1, x2, p2, ...).
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace optgrav {

struct GaussianState {
  Eigen::VectorXd mean;  // length 2n
  Eigen::MatrixXd cov;   // 2n x 2n, symmetric

  int n_modes() const { return static_cast<int>(mean.size()) / 2; }
};

struct HomodyneStats {
  double mean = 0.0;
  double variance = 0.0;
};

namespace detail {

inline void require_mode(const GaussianState& s, int mode) {
  if (mode < 0 || mode >= s.n_modes())
    throw std::out_of_range("gaussian: mode index out of range");
}

inline void resymmetrize(Eigen::MatrixXd& m) {
  m = 0.5 * (m + m.transpose()).eval();
}

}  // namespace detail

inline GaussianState vacuum_state(int n_modes) {
  if (n_modes <= 0) throw std::invalid_argument("gaussian: n_modes must be > 0");
  GaussianState s;
  s.mean = Eigen::VectorXd::Zero(2 * n_modes);
  s.cov = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  return s;
}

// Coherent amplitude alpha_x + i*alpha_p on one mode, vacuum elsewhere.
inline GaussianState make_coherent(int n_modes, int mode, double alpha_x,
                                   double alpha_p) {
  GaussianState s = vacuum_state(n_modes);
  detail::require_mode(s, mode);
  s.mean[2 * mode] = 2.0 * alpha_x;
  s.mean[2 * mode + 1] = 2.0 * alpha_p;
  return s;
}

// The symplectic form matching the interleaved (x, p) ordering.
inline Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

// --- symplectic matrices of the individual elements -----------------------

// Phase shift theta on one mode: rotates (x, p) by theta.
inline Eigen::MatrixXd phase_symplectic(int n_modes, int mode, double theta) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double c = std::cos(theta), sn = std::sin(theta);
  s(2 * mode, 2 * mode) = c;
  s(2 * mode, 2 * mode + 1) = -sn;
  s(2 * mode + 1, 2 * mode) = sn;
  s(2 * mode + 1, 2 * mode + 1) = c;
  return s;
}

// Beamsplitter of intensity transmittance T:
//   a_out =  sqrt(T) a + sqrt(1-T) b
//   b_out = -sqrt(1-T) a + sqrt(T) b
// With the phase offset pi on the internal arm this convention reproduces
// the usual dark-fringe input-output relations of a balanced interferometer
// for both outputs, including the relative sign the joint quadrature sum
// relies on.
inline Eigen::MatrixXd beamsplitter_symplectic(int n_modes, int mode_a,
                                               int mode_b, double T) {
  const double ct = std::sqrt(T), st = std::sqrt(1.0 - T);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {  // same coefficients for x and p
    const int ia = 2 * mode_a + q, ib = 2 * mode_b + q;
    s(ia, ia) = ct;
    s(ia, ib) = st;
    s(ib, ia) = -st;
    s(ib, ib) = ct;
  }
  return s;
}

// Single-mode squeezer: the quadrature along angle xi gets variance factor
// e^{-2r}, the orthogonal one e^{+2r}.
inline Eigen::MatrixXd squeeze_symplectic(int n_modes, int mode, double r,
                                          double xi) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double c = std::cos(xi), sn = std::sin(xi);
  const double em = std::exp(-r), ep = std::exp(r);
  // R(xi) * diag(e^-r, e^+r) * R(-xi) on the 2x2 block.
  s(2 * mode, 2 * mode) = em * c * c + ep * sn * sn;
  s(2 * mode, 2 * mode + 1) = (em - ep) * c * sn;
  s(2 * mode + 1, 2 * mode) = (em - ep) * c * sn;
  s(2 * mode + 1, 2 * mode + 1) = em * sn * sn + ep * c * c;
  return s;
}

// Two-mode squeezer (parametric amplifier) with gain G = cosh r, g = sinh r:
//   a_out = G a + g b',  b_out = G b + g a'   (' = conjugate)
inline Eigen::MatrixXd two_mode_squeeze_symplectic(int n_modes, int mode_a,
                                                   int mode_b, double r) {
  const double G = std::cosh(r), g = std::sinh(r);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const int xa = 2 * mode_a, pa = 2 * mode_a + 1;
  const int xb = 2 * mode_b, pb = 2 * mode_b + 1;
  s(xa, xa) = G;
  s(xa, xb) = g;
  s(pa, pa) = G;
  s(pa, pb) = -g;
  s(xb, xa) = g;
  s(xb, xb) = G;
  s(pb, pa) = -g;
  s(pb, pb) = G;
  return s;
}

// --- state transformations -------------------------------------------------

inline GaussianState apply_symplectic(const GaussianState& s,
                                      const Eigen::MatrixXd& m) {
  GaussianState out;
  out.mean = m * s.mean;
  out.cov = m * s.cov * m.transpose();
  detail::resymmetrize(out.cov);
  return out;
}

inline GaussianState apply_beamsplitter(const GaussianState& s, int mode_a,
                                        int mode_b, double T) {
  detail::require_mode(s, mode_a);
  detail::require_mode(s, mode_b);
  if (mode_a == mode_b)
    throw std::invalid_argument("beamsplitter: modes must be distinct");
  if (!(T >= 0.0 && T <= 1.0))
    throw std::domain_error("beamsplitter: T must be in [0, 1]");
  return apply_symplectic(
      s, beamsplitter_symplectic(s.n_modes(), mode_a, mode_b, T));
}

inline GaussianState apply_phase(const GaussianState& s, int mode,
                                 double theta) {
  detail::require_mode(s, mode);
  return apply_symplectic(s, phase_symplectic(s.n_modes(), mode, theta));
}

inline GaussianState apply_single_mode_squeeze(const GaussianState& s,
                                               int mode, double r, double xi) {
  detail::require_mode(s, mode);
  if (!(r >= 0.0)) throw std::domain_error("squeeze: r must be >= 0");
  return apply_symplectic(s, squeeze_symplectic(s.n_modes(), mode, r, xi));
}

inline GaussianState apply_two_mode_squeeze(const GaussianState& s, int mode_a,
                                            int mode_b, double r) {
  detail::require_mode(s, mode_a);
  detail::require_mode(s, mode_b);
  if (mode_a == mode_b)
    throw std::invalid_argument("two_mode_squeeze: modes must be distinct");
  if (!(r >= 0.0)) throw std::domain_error("two_mode_squeeze: r must be >= 0");
  return apply_symplectic(
      s, two_mode_squeeze_symplectic(s.n_modes(), mode_a, mode_b, r));
}

// Pure loss of amplitude transmittance t on one mode: the beamsplitter model
// that mixes in vacuum, mean -> t * mean, cov block -> t^2 cov + (1-t^2) I.
inline GaussianState apply_loss(const GaussianState& s, int mode, double t) {
  detail::require_mode(s, mode);
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("loss: t must be in [0, 1]");
  const int n = s.n_modes();
  Eigen::VectorXd k = Eigen::VectorXd::Ones(2 * n);
  k[2 * mode] = t;
  k[2 * mode + 1] = t;
  GaussianState out;
  out.mean = k.asDiagonal() * s.mean;
  out.cov = k.asDiagonal() * s.cov * k.asDiagonal();
  const double admix = 1.0 - t * t;
  out.cov(2 * mode, 2 * mode) += admix;
  out.cov(2 * mode + 1, 2 * mode + 1) += admix;
  detail::resymmetrize(out.cov);
  return out;
}

// --- measurement statistics ------------------------------------------------

// Statistics of the quadrature x*cos(angle) + p*sin(angle) on one mode.
// angle = -pi/2 gives the phase quadrature i(a - a') used throughout the
// interferometer models.
inline HomodyneStats homodyne_stats(const GaussianState& s, int mode,
                                    double angle) {
  detail::require_mode(s, mode);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(s.mean.size());
  u[2 * mode] = std::cos(angle);
  u[2 * mode + 1] = std::sin(angle);
  return {u.dot(s.mean), u.dot(s.cov * u)};
}

// Statistics of the summed quadrature over two modes at a common angle,
// including their cross-covariance.
inline HomodyneStats joint_quadrature_stats(const GaussianState& s, int mode_a,
                                            int mode_b, double angle) {
  detail::require_mode(s, mode_a);
  detail::require_mode(s, mode_b);
  if (mode_a == mode_b)
    throw std::invalid_argument("joint stats: modes must be distinct");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(s.mean.size());
  u[2 * mode_a] = std::cos(angle);
  u[2 * mode_a + 1] = std::sin(angle);
  u[2 * mode_b] = std::cos(angle);
  u[2 * mode_b + 1] = std::sin(angle);
  return {u.dot(s.mean), u.dot(s.cov * u)};
}

// Mean photon number of one mode, from first and second moments.
inline double mode_photon_number(const GaussianState& s, int mode) {
  detail::require_mode(s, mode);
  const double mx = s.mean[2 * mode], mp = s.mean[2 * mode + 1];
  const double vx = s.cov(2 * mode, 2 * mode);
  const double vp = s.cov(2 * mode + 1, 2 * mode + 1);
  return 0.25 * (mx * mx + mp * mp) + 0.25 * (vx + vp - 2.0);
}

inline double total_photon_number(const GaussianState& s) {
  double n = 0.0;
  for (int k = 0; k < s.n_modes(); ++k) n += mode_photon_number(s, k);
  return n;
}

}  // namespace optgrav
