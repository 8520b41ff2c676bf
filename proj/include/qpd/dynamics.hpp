#pragma once

#include "qpd/qmt.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace qpd {

/// Components below this terminate an orbit as Underflow-guard.
inline constexpr double kUnderflowGuard = 1e-300;

enum class GuardReason { Overflow, Underflow };

std::string_view to_string(GuardReason r) noexcept;

struct Termination {
  std::size_t step;  // index of the step that could not be taken
  GuardReason reason;
};

/// Orbit states x(0), x(1), ...; stops early when a guard triggers.
struct Trajectory {
  std::vector<StateVector> states;
  std::optional<Termination> terminated_early;
};

Trajectory simulate(const QPSystem& sys, const StateVector& x0, std::size_t steps);

/// Next state and d x(t+1) / d x(t).
struct StepJacobian {
  StateVector next;
  Matrix jacobian;
};

/// J_ik = (x'_i / x_i) delta_ik + x'_i sum_j A_ij B_jk q_j / x_k.
StepJacobian step_with_jacobian(const QPSystem& sys, const StateVector& x);

/// Solves A y = -lambda; the solution when it is strictly positive.
/// Throws SingularSystem when A is singular within tolerance.
std::optional<StateVector> lv_interior_fixed_point(const LVSystem& lv);

inline constexpr double kFixedPointResidual = 1e-8;

/// Interior fixed point obtained through the canonical LV form and mapped
/// back with C = B^-1. Throws SingularB, SingularSystem,
/// NoInteriorFixedPoint, or ResidualCheckFailed if the step residual
/// exceeds 1e-8 ||x*||_inf.
StateVector qp_fixed_point(const QPSystem& sys);

enum class EmpiricalKind { Permanence, Attractivity };

struct EmpiricalVerdict {
  EmpiricalKind kind{};
  std::size_t ensemble_size = 0;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::size_t guard_terminations = 0;
  double min_component = 0.0;  // permanence: over the tail window
  double max_component = 0.0;
  double max_distance = 0.0;   // attractivity: at the final step
};

/// Seeded log-uniform initial conditions on [lo, hi]^n. The mapping from
/// the 64-bit engine output to doubles is explicit so the draws are the same
/// on every standard library.
class InitialConditionSampler {
 public:
  InitialConditionSampler(std::uint64_t seed, double lo = 1e-2, double hi = 1e2);
  StateVector draw(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double log_lo_;
  double log_hi_;
};

struct PermanenceOptions {
  std::size_t ensemble_size = 50;
  std::size_t horizon = 5000;
  double tail_fraction = 0.2;
  double floor = 1e-6;
  double ceiling = 1e6;
  std::uint64_t seed = 1;
};

EmpiricalVerdict empirical_permanence(const QPSystem& sys, const PermanenceOptions& options = {});

struct AttractivityOptions {
  std::size_t ensemble_size = 50;
  std::size_t horizon = 2000;
  double tol = 1e-6;
  std::uint64_t seed = 1;
};

EmpiricalVerdict empirical_attractivity(const QPSystem& sys, const StateVector& target,
                                        const AttractivityOptions& options = {});

/// Same test on caller-supplied initial conditions.
EmpiricalVerdict attractivity_from(const QPSystem& sys, const StateVector& target,
                                   const std::vector<StateVector>& initial, std::size_t horizon,
                                   double tol);

struct ConjugacyDeviation {
  double max_relative = 0.0;
  std::vector<double> per_step;  // max component-wise relative gap at each t
};

/// Orbit of sys from x0 against the C-image of the orbit of apply_qmt(sys, C)
/// started at map_state(C^-1, x0). Throws GuardTermination if either orbit
/// hits a guard.
ConjugacyDeviation conjugacy_deviation(const QPSystem& sys, const QMTMatrix& c, const StateVector& x0,
                                       std::size_t steps);

inline constexpr double kConjugacyBudgetPerStep = 1e-7;

struct LyapunovOptions {
  std::size_t transient = 1000;
  std::size_t samples = 10000;
};

/// Largest Lyapunov exponent from tangent-vector growth, renormalized every
/// step. Throws GuardTermination when the orbit does not survive.
double largest_lyapunov(const QPSystem& sys, const StateVector& x0, const LyapunovOptions& options = {});

}  // namespace qpd
