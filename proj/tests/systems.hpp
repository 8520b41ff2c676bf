#pragma once

// Systems that recur across the tests, built in code so the tests do not
// depend on the fixture files (those are checked separately).

#include "qpd/qp_model.hpp"

#include <string>

namespace qpd::test {

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline QPSystem lv2(const Matrix& a, const Vector& l) { return QPSystem::make(a, Matrix::Identity(2, 2), l); }

/// First example family: quasimonomials x1 x2^eps, x1^delta x2.
inline QPSystem example1_qp(double eps, double delta, double rho) {
  const double d = 1.0 - eps * delta;
  return QPSystem::make(mat2((-1 + eps / 2) / d, (-0.5 + eps) / d, (-0.5 + delta) / d, (-1 + delta / 2) / d),
                        mat2(1, eps, delta, 1), vec2(rho * (1 - eps) / d, rho * (1 - delta) / d));
}

inline QPSystem example1_lv(double rho = 0.5) { return lv2(mat2(-1, -0.5, -0.5, -1), vec2(rho, rho)); }

/// Predator-prey family with B = diag(p1, p2).
inline QPSystem example2_qp(double r1, double r2, double mu1, double mu2, double p1 = 1.0, double p2 = 1.0) {
  return QPSystem::make(mat2(-r1 / p1, -r1 * mu1 / p1, r2 * mu2 / p2, -r2 / p2), mat2(p1, 0, 0, p2),
                        vec2(r1 / p1, -r2 / p2));
}

inline std::string fixture(const std::string& name) { return std::string(QPD_FIXTURES_DIR) + "/" + name; }

}  // namespace qpd::test
