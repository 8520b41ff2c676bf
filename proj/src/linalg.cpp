#include "qpd/linalg.hpp"

#include <cmath>
#include <limits>

namespace qpd::linalg {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double inf_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

bool all_finite(const Vector& v) { return v.allFinite(); }

bool is_singular(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return true;
  const double scale = inf_norm(m);
  if (scale == 0.0) return true;
  // Work with the normalized matrix so the cutoff is scale-free and the
  // power never under/overflows for the dimensions in use.
  const Matrix normalized = m / scale;
  const double det = normalized.fullPivLu().determinant();
  return !(std::abs(det) >= rel_tol);
}

std::optional<Matrix> try_inverse(const Matrix& m, double rel_tol) {
  if (is_singular(m, rel_tol)) return std::nullopt;
  Matrix inv = m.fullPivLu().inverse();
  if (!inv.allFinite()) return std::nullopt;
  return inv;
}

double condition_inf(const Matrix& m) {
  const auto inv = try_inverse(m);
  if (!inv) return std::numeric_limits<double>::infinity();
  return inf_norm(m) * inf_norm(*inv);
}

std::optional<Eigen::Index> unit_row_index(const Matrix& m, Eigen::Index i) {
  std::optional<Eigen::Index> hit;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double v = m(i, j);
    if (v == 0.0) continue;
    if (v != 1.0 || hit) return std::nullopt;
    hit = j;
  }
  return hit;
}

double inverse_residual(const Matrix& m, const Matrix& m_inv) {
  const Matrix r = m * m_inv - Matrix::Identity(m.rows(), m.cols());
  return inf_norm(r);
}

}  // namespace qpd::linalg
