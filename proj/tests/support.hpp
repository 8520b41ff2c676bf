#pragma once

// Random instance generators and independent oracles shared by the unit and
// acceptance tests. Nothing here calls into the code under test except for
// constructing inputs.

#include "qpd/classifiers.hpp"
#include "qpd/qmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace qpd::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline Vector random_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

inline double inf_condition(const Matrix& m) {
  const Matrix inv = m.inverse();
  auto norm = [](const Matrix& x) { return x.cwiseAbs().rowwise().sum().maxCoeff(); };
  return norm(m) * norm(inv);
}

/// I + U(-spread, spread) entries, redrawn until the condition number is
/// below max_cond.
inline Matrix random_invertible(Rng& rng, Eigen::Index n, double spread = 0.5, double max_cond = 50.0) {
  for (;;) {
    Matrix m = Matrix::Identity(n, n) + random_matrix(rng, n, n, -spread, spread);
    if (std::abs(m.determinant()) > 1e-3 && inf_condition(m) < max_cond) return m;
  }
}

inline QPSystem random_system(Rng& rng, Eigen::Index n) {
  return QPSystem::make(random_matrix(rng, n, n, -1, 1), random_invertible(rng, n), random_vector(rng, n, -1, 1));
}

/// 2-D system whose canonical LV form has a globally attracting interior
/// fixed point: competitive Gamma, 0 < Lambda_i < 1, checked against the
/// inequality form of the permanence conditions. Orbits of such systems do
/// not amplify roundoff, which is what the conjugacy budget assumes.
inline QPSystem random_attracting_system(Rng& rng) {
  for (;;) {
    Matrix g(2, 2);
    g << -rng.uniform(0.8, 1.5), -rng.uniform(0.05, 0.5), -rng.uniform(0.05, 0.5), -rng.uniform(0.8, 1.5);
    Vector l(2);
    l << rng.uniform(0.2, 0.9), rng.uniform(0.2, 0.9);
    if (!(l(1) * g(0, 0) - l(0) * g(1, 0) < -1e-3 && l(0) * g(1, 1) - l(1) * g(0, 1) < -1e-3)) continue;
    const Matrix b = random_invertible(rng, 2, 0.4, 10.0);
    const Matrix b_inv = b.inverse();
    return QPSystem::make(b_inv * g, b, b_inv * l);
  }
}

// ---------------------------------------------------------------- oracles

/// All n! index rearrangements, checked directly against the definition.
inline bool hierarchical_by_enumeration(const Matrix& p, double tol) {
  const auto n = static_cast<std::size_t>(p.rows());
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const double d = p(static_cast<Eigen::Index>(sigma[i]), static_cast<Eigen::Index>(sigma[i]));
      ok = d > tol;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        ok = p(static_cast<Eigen::Index>(sigma[i]), static_cast<Eigen::Index>(sigma[j])) >= -tol;
    }
    if (ok) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

/// Permanence conditions written as the two scalar inequalities on the LV
/// coefficients, (A, lambda) = (Gamma, Lambda).
inline bool permanence_by_inequalities(const Matrix& g, const Vector& l, double tol) {
  const bool competitive = (g.array() < -tol).all();
  const bool positive = (l.array() > tol).all();
  return competitive && positive && l(1) * g(0, 0) - l(0) * g(1, 0) < -tol &&
         l(0) * g(1, 1) - l(1) * g(0, 1) < -tol;
}

/// Interior fixed point of a 2-D LV system by the adjugate formula.
inline Vector fixed_point_by_adjugate(const Matrix& a, const Vector& l) {
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Vector y(2);
  y(0) = -(a(1, 1) * l(0) - a(0, 1) * l(1)) / det;
  y(1) = -(-a(1, 0) * l(0) + a(0, 0) * l(1)) / det;
  return y;
}

/// Plain scalar evaluation of one step of the QP map.
inline std::vector<double> step_by_loops(const QPSystem& sys, const std::vector<double>& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  std::vector<double> q(x.size()), out(x.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    double prod = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) prod *= std::pow(x[static_cast<std::size_t>(k)], sys.B()(j, k));
    q[static_cast<std::size_t>(j)] = prod;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double e = sys.lambda()(i);
    for (Eigen::Index j = 0; j < n; ++j) e += sys.A()(i, j) * q[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] * std::exp(e);
  }
  return out;
}

inline double xi_oracle(double x, double rho) { return x * std::exp(rho - x); }

/// Onset of the snap-back orbit through the critical point: the smallest
/// rho > 2 with xi^3(1) = rho (the critical orbit lands on the fixed point).
/// Plain bisection on rho; independent of the preimage search.
inline double critical_orbit_onset(double lo = 2.5, double hi = 3.0) {
  auto f = [](double rho) {
    double x = 1.0;
    for (int k = 0; k < 3; ++k) x = xi_oracle(x, rho);
    return x - rho;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == (f(lo) > 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Period-3 onset as the tangency of xi^3 with the diagonal: Newton on
/// (xi^3(x) - x, (xi^3)'(x) - 1) in (x, rho) from a nearby start.
inline std::optional<std::pair<double, double>> period3_saddle_node(double x, double rho) {
  auto eval = [](double x0, double r, double& g, double& dg) {
    double v = x0, d = 1.0;
    for (int k = 0; k < 3; ++k) {
      d *= (1.0 - v) * std::exp(r - v);
      v = xi_oracle(v, r);
    }
    g = v - x0;
    dg = d - 1.0;
  };
  for (int it = 0; it < 100; ++it) {
    double g, dg;
    eval(x, rho, g, dg);
    if (std::abs(g) < 1e-13 && std::abs(dg) < 1e-11) return std::pair{x, rho};
    // Jacobian by central differences in both variables.
    const double hx = 1e-7, hr = 1e-7;
    double gxp, dgxp, gxm, dgxm, grp, dgrp, grm, dgrm;
    eval(x + hx, rho, gxp, dgxp);
    eval(x - hx, rho, gxm, dgxm);
    eval(x, rho + hr, grp, dgrp);
    eval(x, rho - hr, grm, dgrm);
    const double j11 = (gxp - gxm) / (2 * hx), j12 = (grp - grm) / (2 * hr);
    const double j21 = (dgxp - dgxm) / (2 * hx), j22 = (dgrp - dgrm) / (2 * hr);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0) return std::nullopt;
    x -= (j22 * g - j12 * dg) / det;
    rho -= (-j21 * g + j11 * dg) / det;
  }
  return std::nullopt;
}

inline double max_rel_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(a(i, j))));
  return d;
}

inline double max_rel_diff(const Vector& a, const Vector& b) {
  return max_rel_diff(Matrix(a), Matrix(b));
}

}  // namespace qpd::test
