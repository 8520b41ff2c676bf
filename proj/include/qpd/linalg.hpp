#pragma once

#include <Eigen/Dense>

#include <optional>

namespace qpd {

/// Dense row-major storage; systems handled here are small (n up to ~20).
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

namespace linalg {

/// Relative determinant cutoff: a matrix is treated as singular when
/// |det M| < kSingularityTolerance * (||M||_inf)^n.
inline constexpr double kSingularityTolerance = 1e-10;

double max_abs(const Matrix& m);
double max_abs(const Vector& v);
double inf_norm(const Matrix& m);

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

bool is_singular(const Matrix& m, double rel_tol = kSingularityTolerance);

/// Inverse via full-pivot LU, or nullopt when is_singular(m).
std::optional<Matrix> try_inverse(const Matrix& m, double rel_tol = kSingularityTolerance);

/// ||M||_inf * ||M^-1||_inf; +inf for singular input.
double condition_inf(const Matrix& m);

/// Column k when row i of m is exactly the unit vector e_k.
std::optional<Eigen::Index> unit_row_index(const Matrix& m, Eigen::Index i);

/// ||M * Minv - I||_inf
double inverse_residual(const Matrix& m, const Matrix& m_inv);

}  // namespace linalg
}  // namespace qpd
