// Adaptive Gauss-Kronrod quadrature for smooth one-dimensional integrands.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace optgrav {

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (symmetric, nonnegative half shown)
// with the embedded 7-point Gauss rule. Standard QUADPACK constants.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7 above).
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& kronrod,
                             double& err) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  double fk = 0.0;  // 15-point estimate
  double fg = 0.0;  // embedded 7-point estimate
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    double v;
    if (i == 7) {
      v = f(mid);
      fk += kKronrodWeights[i] * v;
      fg += kGaussWeights[3] * v;
    } else {
      v = f(mid - dx) + f(mid + dx);
      fk += kKronrodWeights[i] * v;
      if (i % 2 == 1) fg += kGaussWeights[i / 2] * v;
    }
  }
  kronrod = fk * half;
  err = std::abs((fk - fg) * half);
}

}  // namespace detail

struct QuadratureOptions {
  // Absolute tolerance is scaled by the total interval length, so the
  // default resolves integrals down to ~1e-15 per unit of interval.
  double abs_tol_per_length = 1e-15;
  double rel_tol = 1e-13;
  int max_depth = 48;
};

// Integrates f over [a, b] by adaptive bisection of Gauss-Kronrod panels.
// Intended for smooth integrands; throws if the error target is not met
// within the depth limit.
template <typename F>
double integrate(const F& f, double a, double b,
                 const QuadratureOptions& opts = {}) {
  if (!(a < b)) throw std::domain_error("integrate: requires a < b");
  const double abs_tol = opts.abs_tol_per_length * (b - a);

  struct Panel {
    double a, b;
    int depth;
  };

  double total = 0.0;
  // Explicit stack; panels that pass the local error test are accumulated.
  Panel stack[64];
  int top = 0;
  stack[top++] = {a, b, 0};
  while (top > 0) {
    const Panel p = stack[--top];
    double value, err;
    detail::gauss_kronrod_15(f, p.a, p.b, value, err);
    const double local_tol =
        std::max(abs_tol * (p.b - p.a) / (b - a),
                 opts.rel_tol * std::abs(value));
    if (err <= local_tol || p.depth >= opts.max_depth) {
      if (err > local_tol)
        throw std::runtime_error("integrate: failed to converge");
      total += value;
    } else {
      const double m = 0.5 * (p.a + p.b);
      stack[top++] = {p.a, m, p.depth + 1};
      stack[top++] = {m, p.b, p.depth + 1};
    }
  }
  return total;
}

}  // namespace optgrav
