#include "qpd/qp_model.hpp"

#include "qpd/error.hpp"

#include <cmath>
#include <sstream>

namespace qpd {

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows, std::string_view what) {
  const auto n = rows.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream os;
      os << what << " row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace

QPSystem::QPSystem(Matrix A, Matrix B, Vector lambda, std::string name)
    : a_(std::move(A)), b_(std::move(B)), lambda_(std::move(lambda)), name_(std::move(name)) {}

QPSystem QPSystem::make(Matrix A, Matrix B, Vector lambda, std::string name) {
  const auto n = lambda.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty system");
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != n) {
    std::ostringstream os;
    os << "A is " << A.rows() << "x" << A.cols() << ", B is " << B.rows() << "x" << B.cols()
       << ", lambda has length " << n;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!linalg::all_finite(A)) throw Error(ErrorCode::NonFinite, "A has a NaN/Inf entry");
  if (!linalg::all_finite(B)) throw Error(ErrorCode::NonFinite, "B has a NaN/Inf entry");
  if (!linalg::all_finite(lambda)) throw Error(ErrorCode::NonFinite, "lambda has a NaN/Inf entry");
  return QPSystem(std::move(A), std::move(B), std::move(lambda), std::move(name));
}

QPSystem QPSystem::renamed(std::string name) const { return QPSystem(a_, b_, lambda_, std::move(name)); }

LVSystem LVSystem::make(Matrix A, Vector lambda) {
  // Reuse the QP validation with B = I.
  const auto n = lambda.size();
  auto checked = QPSystem::make(A, Matrix::Identity(n, n), lambda);
  return LVSystem(checked.A(), checked.lambda());
}

QPSystem LVSystem::to_qp(std::string name) const {
  const auto n = lambda_.size();
  return QPSystem::make(a_, Matrix::Identity(n, n), lambda_, std::move(name));
}

StateVector::StateVector(Vector x) : x_(std::move(x)) {
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    if (!(x_(i) > 0.0) || !std::isfinite(x_(i))) {
      std::ostringstream os;
      os << "component " << i << " = " << x_(i) << " is not a finite positive number";
      throw Error(ErrorCode::NonPositiveState, os.str());
    }
  }
}

StateVector::StateVector(std::initializer_list<double> x)
    : StateVector(Vector(Eigen::Map<const Vector>(x.begin(), static_cast<Eigen::Index>(x.size())))) {}

QPSystem validate_system(const RawSystem& raw) {
  const auto n = raw.lambda.size();
  if (raw.A.size() != n || raw.B.size() != n) {
    std::ostringstream os;
    os << "A has " << raw.A.size() << " rows, B has " << raw.B.size() << " rows, lambda has length "
       << n;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  Matrix a = to_matrix(raw.A, "A");
  Matrix b = to_matrix(raw.B, "B");
  Vector l = Eigen::Map<const Vector>(raw.lambda.data(), static_cast<Eigen::Index>(n));
  return QPSystem::make(std::move(a), std::move(b), std::move(l), raw.name);
}

Vector quasimonomials(const QPSystem& sys, const StateVector& x) {
  if (x.size() != sys.n())
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match system");
  const Vector log_q = sys.B() * x.log();
  Vector q(log_q.size());
  for (Eigen::Index j = 0; j < log_q.size(); ++j) {
    if (const auto k = linalg::unit_row_index(sys.B(), j)) {
      q(j) = x.values()(*k);
      continue;
    }
    if (!(std::abs(log_q(j)) <= kExponentGuard)) {
      std::ostringstream os;
      os << "quasimonomial " << j << " has log-magnitude " << log_q(j);
      throw Error(ErrorCode::Overflow, os.str());
    }
    q(j) = std::exp(log_q(j));
  }
  return q;
}

StateVector step(const QPSystem& sys, const StateVector& x) {
  const Vector q = quasimonomials(sys, x);
  const Vector arg = sys.lambda() + sys.A() * q;
  Vector next(arg.size());
  for (Eigen::Index i = 0; i < arg.size(); ++i) {
    if (!(std::abs(arg(i)) <= kExponentGuard)) {
      std::ostringstream os;
      os << "exponent argument " << arg(i) << " in component " << i;
      throw Error(ErrorCode::Overflow, os.str());
    }
    next(i) = x.values()(i) * std::exp(arg(i));
    if (!(next(i) > 0.0) || !std::isfinite(next(i))) {
      std::ostringstream os;
      os << "component " << i << " left the representable positive range";
      throw Error(ErrorCode::Overflow, os.str());
    }
  }
  return StateVector(std::move(next));
}

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::Minus: return '-';
    case Sign::Zero: return '0';
    case Sign::Plus: return '+';
  }
  return '?';
}

SignPattern::SignPattern(std::size_t rows, std::size_t cols, std::vector<Sign> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw Error(ErrorCode::DimensionMismatch, "sign pattern entry count does not match shape");
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<Sign> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t current = 0;
  auto close_row = [&] {
    if (rows == 0) cols = current;
    else if (current != cols)
      throw Error(ErrorCode::DimensionMismatch, "ragged sign pattern");
    ++rows;
    current = 0;
  };
  for (char c : text) {
    switch (c) {
      case '+': entries.push_back(Sign::Plus); ++current; break;
      case '-': entries.push_back(Sign::Minus); ++current; break;
      case '0': entries.push_back(Sign::Zero); ++current; break;
      case ';': close_row(); break;
      case ' ': break;
      default: throw Error(ErrorCode::InvalidArgument, std::string("bad sign symbol '") + c + "'");
    }
  }
  close_row();
  return SignPattern(rows, cols, std::move(entries));
}

std::string SignPattern::to_string() const {
  std::string out = "[";
  if (cols_ == 1) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) out += ',';
      out += to_char((*this)(i, 0));
    }
    return out + "]";
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ',';
      out += to_char((*this)(i, j));
    }
    out += ']';
  }
  return out + "]";
}

Sign sign_of(double value, double tol) {
  if (std::abs(value) <= tol) return Sign::Zero;
  return value > 0.0 ? Sign::Plus : Sign::Minus;
}

SignPattern sign_pattern(const Matrix& m, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "negative pattern tolerance");
  std::vector<Sign> entries;
  entries.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(sign_of(m(i, j), tol));
  return SignPattern(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                     std::move(entries));
}

SignPattern sign_pattern(const Vector& v, double tol) {
  return sign_pattern(Matrix(v), tol);
}

bool is_lotka_volterra(const QPSystem& sys, double tol) {
  const auto n = static_cast<Eigen::Index>(sys.n());
  return linalg::max_abs(Matrix(sys.B() - Matrix::Identity(n, n))) <= tol;
}

}  // namespace qpd
