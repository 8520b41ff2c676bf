#pragma once

#include "qpd/qp_model.hpp"

namespace qpd {

/// Exponent matrix of a quasimonomial transformation x_i = prod_j y_j^C_ij,
/// stored with its inverse.
class QMTMatrix {
 public:
  /// Inverts C; throws SingularMatrix when |det C| is below the relative
  /// singularity cutoff or the inverse fails the 1e-9 residual check.
  explicit QMTMatrix(Matrix c);

  /// Accepts a precomputed inverse after checking ||C C_inv - I|| <= 1e-9.
  static QMTMatrix with_inverse(Matrix c, Matrix c_inv);

  static QMTMatrix identity(std::size_t n);

  std::size_t n() const noexcept { return static_cast<std::size_t>(c_.rows()); }
  const Matrix& C() const noexcept { return c_; }
  const Matrix& C_inv() const noexcept { return c_inv_; }

  /// ||C||_inf ||C^-1||_inf
  double condition() const;

  QMTMatrix inverse() const { return QMTMatrix(c_inv_, c_, Unchecked{}); }

  /// C1 * C2, i.e. first apply C1 then C2 to the system.
  friend QMTMatrix operator*(const QMTMatrix& c1, const QMTMatrix& c2);

 private:
  struct Unchecked {};
  QMTMatrix(Matrix c, Matrix c_inv, Unchecked) : c_(std::move(c)), c_inv_(std::move(c_inv)) {}

  Matrix c_;
  Matrix c_inv_;
};

inline constexpr double kInverseResidualTolerance = 1e-9;

struct ClassInvariants {
  Matrix Gamma;   // B * A
  Vector Lambda;  // B * lambda
};

/// A' = C^-1 A, B' = B C, lambda' = C^-1 lambda.
QPSystem apply_qmt(const QPSystem& sys, const QMTMatrix& c);

ClassInvariants class_invariants(const QPSystem& sys);

struct CanonicalForm {
  LVSystem lv;
  QMTMatrix transform;  // C = B^-1
  double condition;     // condition estimate of B
};

/// Reduction to the Lotka-Volterra representative of the system's class.
/// Throws SingularB when B is not invertible within tolerance.
CanonicalForm canonical_lv(const QPSystem& sys);

/// x_i = prod_j y_j^C_ij. Throws Overflow when an exponent leaves the guard.
StateVector map_state(const QMTMatrix& c, const StateVector& y);
StateVector map_state(const Matrix& c, const StateVector& y);

}  // namespace qpd
