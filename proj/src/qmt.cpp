#include "qpd/qmt.hpp"

#include "qpd/error.hpp"

#include <cmath>
#include <sstream>

namespace qpd {

namespace {

void check_square(const Matrix& c) {
  if (c.rows() != c.cols() || c.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "transformation matrix must be square and non-empty");
  if (!c.allFinite()) throw Error(ErrorCode::NonFinite, "transformation matrix has a NaN/Inf entry");
}

}  // namespace

QMTMatrix::QMTMatrix(Matrix c) : c_(std::move(c)) {
  check_square(c_);
  auto inv = linalg::try_inverse(c_);
  if (!inv) throw Error(ErrorCode::SingularMatrix, "transformation matrix is singular within tolerance");
  c_inv_ = std::move(*inv);
  const double residual = linalg::inverse_residual(c_, c_inv_);
  if (!(residual <= kInverseResidualTolerance)) {
    std::ostringstream os;
    os << "inverse residual " << residual << " exceeds " << kInverseResidualTolerance;
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
}

QMTMatrix QMTMatrix::with_inverse(Matrix c, Matrix c_inv) {
  check_square(c);
  if (c_inv.rows() != c.rows() || c_inv.cols() != c.cols())
    throw Error(ErrorCode::DimensionMismatch, "inverse shape does not match");
  if (linalg::is_singular(c))
    throw Error(ErrorCode::SingularMatrix, "transformation matrix is singular within tolerance");
  const double residual = linalg::inverse_residual(c, c_inv);
  if (!(residual <= kInverseResidualTolerance)) {
    std::ostringstream os;
    os << "inverse residual " << residual << " exceeds " << kInverseResidualTolerance;
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  return QMTMatrix(std::move(c), std::move(c_inv), Unchecked{});
}

QMTMatrix QMTMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return QMTMatrix(Matrix::Identity(k, k), Matrix::Identity(k, k), Unchecked{});
}

double QMTMatrix::condition() const { return linalg::inf_norm(c_) * linalg::inf_norm(c_inv_); }

QMTMatrix operator*(const QMTMatrix& c1, const QMTMatrix& c2) {
  if (c1.n() != c2.n()) throw Error(ErrorCode::DimensionMismatch, "QMT dimensions differ");
  return QMTMatrix(c1.c_ * c2.c_, c2.c_inv_ * c1.c_inv_, QMTMatrix::Unchecked{});
}

QPSystem apply_qmt(const QPSystem& sys, const QMTMatrix& c) {
  if (c.n() != sys.n()) {
    std::ostringstream os;
    os << "system has n=" << sys.n() << " but C is " << c.n() << "x" << c.n();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return QPSystem::make(c.C_inv() * sys.A(), sys.B() * c.C(), c.C_inv() * sys.lambda(), sys.name());
}

ClassInvariants class_invariants(const QPSystem& sys) {
  return {sys.B() * sys.A(), sys.B() * sys.lambda()};
}

CanonicalForm canonical_lv(const QPSystem& sys) {
  auto b_inv = linalg::try_inverse(sys.B());
  if (!b_inv) throw Error(ErrorCode::SingularB, "B is not invertible within tolerance");
  auto inv = class_invariants(sys);
  const auto n = static_cast<Eigen::Index>(sys.n());
  // Keep the LV case exact: B = I gives C = I and the system itself.
  QMTMatrix transform = sys.B() == Matrix::Identity(n, n)
                            ? QMTMatrix::identity(sys.n())
                            : QMTMatrix::with_inverse(std::move(*b_inv), sys.B());
  return {LVSystem::make(std::move(inv.Gamma), std::move(inv.Lambda)), std::move(transform),
          linalg::condition_inf(sys.B())};
}

StateVector map_state(const Matrix& c, const StateVector& y) {
  if (static_cast<std::size_t>(c.cols()) != y.size() || c.rows() != c.cols())
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match transformation");
  const Vector log_x = c * y.log();
  Vector x(log_x.size());
  for (Eigen::Index i = 0; i < log_x.size(); ++i) {
    if (const auto k = linalg::unit_row_index(c, i)) {
      x(i) = y.values()(*k);
      continue;
    }
    if (!(std::abs(log_x(i)) <= kExponentGuard)) {
      std::ostringstream os;
      os << "mapped component " << i << " has log-magnitude " << log_x(i);
      throw Error(ErrorCode::Overflow, os.str());
    }
    x(i) = std::exp(log_x(i));
  }
  return StateVector(std::move(x));
}

StateVector map_state(const QMTMatrix& c, const StateVector& y) { return map_state(c.C(), y); }

}  // namespace qpd
