#pragma once

#include "qpd/linalg.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qpd {

/// Default sign-classification tolerance shared by patterns and theorem checks.
inline constexpr double kDefaultTolerance = 1e-9;

/// Largest |exponent| accepted by exp() anywhere in the map before the step
/// is rejected as Overflow.
inline constexpr double kExponentGuard = 700.0;

/// Unvalidated input as it comes from a file or a caller.
struct RawSystem {
  std::string name;
  std::vector<std::vector<double>> A;
  std::vector<std::vector<double>> B;
  std::vector<double> lambda;
};

/// x_i(t+1) = x_i(t) exp(lambda_i + sum_j A_ij prod_k x_k^B_jk) on the open
/// positive orthant. Immutable once built; construction validates shape and
/// finiteness.
class QPSystem {
 public:
  static QPSystem make(Matrix A, Matrix B, Vector lambda, std::string name = {});

  std::size_t n() const noexcept { return static_cast<std::size_t>(lambda_.size()); }
  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  const Vector& lambda() const noexcept { return lambda_; }
  const std::string& name() const noexcept { return name_; }

  QPSystem renamed(std::string name) const;

 private:
  QPSystem(Matrix A, Matrix B, Vector lambda, std::string name);

  Matrix a_;
  Matrix b_;
  Vector lambda_;
  std::string name_;
};

/// The B = I special case. Kept as its own type so canonical forms are
/// distinguishable from general systems at the type level.
class LVSystem {
 public:
  static LVSystem make(Matrix A, Vector lambda);

  std::size_t n() const noexcept { return static_cast<std::size_t>(lambda_.size()); }
  const Matrix& A() const noexcept { return a_; }
  const Vector& lambda() const noexcept { return lambda_; }

  QPSystem to_qp(std::string name = {}) const;

 private:
  LVSystem(Matrix A, Vector lambda) : a_(std::move(A)), lambda_(std::move(lambda)) {}

  Matrix a_;
  Vector lambda_;
};

/// Point of the open positive orthant.
class StateVector {
 public:
  explicit StateVector(Vector x);
  StateVector(std::initializer_list<double> x);

  std::size_t size() const noexcept { return static_cast<std::size_t>(x_.size()); }
  double operator[](std::size_t i) const { return x_(static_cast<Eigen::Index>(i)); }
  const Vector& values() const noexcept { return x_; }

  /// Component-wise natural log.
  Vector log() const { return x_.array().log().matrix(); }

 private:
  Vector x_;
};

QPSystem validate_system(const RawSystem& raw);

/// prod_k x_k^B_jk for every j, evaluated as exp(B ln x).
Vector quasimonomials(const QPSystem& sys, const StateVector& x);

StateVector step(const QPSystem& sys, const StateVector& x);

enum class Sign : unsigned char { Minus, Zero, Plus };

char to_char(Sign s) noexcept;

class SignPattern {
 public:
  SignPattern(std::size_t rows, std::size_t cols, std::vector<Sign> entries);

  /// Rows separated by ';', e.g. "-+;+-" or "+;-" for a column.
  static SignPattern parse(std::string_view text);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Sign operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// "[[-,+],[+,-]]" for matrices, "[+,-]" for a single column.
  std::string to_string() const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Sign> entries_;
};

Sign sign_of(double value, double tol);
SignPattern sign_pattern(const Matrix& m, double tol = kDefaultTolerance);
SignPattern sign_pattern(const Vector& v, double tol = kDefaultTolerance);

bool is_lotka_volterra(const QPSystem& sys, double tol = kDefaultTolerance);

}  // namespace qpd
