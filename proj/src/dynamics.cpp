#include "qpd/dynamics.hpp"

#include "qpd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpd {

std::string_view to_string(GuardReason r) noexcept {
  return r == GuardReason::Overflow ? "Overflow" : "Underflow-guard";
}

namespace {

// One guarded step: nullopt plus the reason when the orbit must stop.
struct GuardedStep {
  std::optional<StateVector> next;
  GuardReason reason = GuardReason::Overflow;
};

GuardedStep guarded_step(const QPSystem& sys, const StateVector& x) {
  try {
    StateVector next = step(sys, x);
    if (next.values().minCoeff() < kUnderflowGuard) return {std::nullopt, GuardReason::Underflow};
    return {std::move(next)};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    return {std::nullopt, GuardReason::Overflow};
  }
}

}  // namespace

Trajectory simulate(const QPSystem& sys, const StateVector& x0, std::size_t steps) {
  if (x0.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "initial state dimension");
  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.states.push_back(x0);
  for (std::size_t t = 0; t < steps; ++t) {
    auto s = guarded_step(sys, traj.states.back());
    if (!s.next) {
      traj.terminated_early = Termination{t, s.reason};
      break;
    }
    traj.states.push_back(std::move(*s.next));
  }
  return traj;
}

StepJacobian step_with_jacobian(const QPSystem& sys, const StateVector& x) {
  const Vector q = quasimonomials(sys, x);
  StateVector next = step(sys, x);
  const Vector& xv = x.values();
  const Vector& nv = next.values();
  // d exponent_i / d x_k = sum_j A_ij q_j B_jk / x_k
  Matrix d_exponent = sys.A() * q.asDiagonal() * sys.B();
  d_exponent = d_exponent * xv.cwiseInverse().asDiagonal();
  Matrix jac = nv.asDiagonal() * d_exponent;
  jac.diagonal() += nv.cwiseQuotient(xv);
  return {std::move(next), std::move(jac)};
}

std::optional<StateVector> lv_interior_fixed_point(const LVSystem& lv) {
  if (linalg::is_singular(lv.A()))
    throw Error(ErrorCode::SingularSystem, "LV interaction matrix is singular within tolerance");
  const Vector y = lv.A().fullPivLu().solve(-lv.lambda());
  const double residual = linalg::max_abs(Vector(lv.lambda() + lv.A() * y));
  if (!(residual <= 1e-10 * (1.0 + linalg::max_abs(lv.lambda())))) {
    std::ostringstream os;
    os << "fixed-point solve residual " << residual;
    throw Error(ErrorCode::ResidualCheckFailed, os.str());
  }
  if (!((y.array() > 0.0).all())) return std::nullopt;
  return StateVector(y);
}

StateVector qp_fixed_point(const QPSystem& sys) {
  const auto canon = canonical_lv(sys);
  const auto y = lv_interior_fixed_point(canon.lv);
  if (!y) throw Error(ErrorCode::NoInteriorFixedPoint, "canonical LV fixed point is not strictly positive");
  StateVector x = map_state(canon.transform, *y);
  const double residual = linalg::max_abs(Vector(step(sys, x).values() - x.values()));
  const double bound = kFixedPointResidual * linalg::max_abs(x.values());
  if (!(residual <= bound)) {
    std::ostringstream os;
    os << "step residual " << residual << " exceeds " << bound;
    throw Error(ErrorCode::ResidualCheckFailed, os.str());
  }
  return x;
}

InitialConditionSampler::InitialConditionSampler(std::uint64_t seed, double lo, double hi)
    : engine_(seed), log_lo_(std::log(lo)), log_hi_(std::log(hi)) {
  if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "sampler needs 0 < lo < hi");
}

StateVector InitialConditionSampler::draw(std::size_t n) {
  Vector x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // 53 high bits -> uniform in [0, 1)
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    x(i) = std::exp(log_lo_ + u * (log_hi_ - log_lo_));
  }
  return StateVector(std::move(x));
}

EmpiricalVerdict empirical_permanence(const QPSystem& sys, const PermanenceOptions& o) {
  if (!(o.floor > 0.0) || !(o.ceiling > o.floor))
    throw Error(ErrorCode::InvalidArgument, "permanence box needs 0 < floor < ceiling");
  if (!(o.tail_fraction > 0.0) || o.tail_fraction > 1.0)
    throw Error(ErrorCode::InvalidArgument, "tail_fraction must lie in (0, 1]");

  EmpiricalVerdict v{EmpiricalKind::Permanence, o.ensemble_size, o.horizon, o.seed};
  v.min_component = std::numeric_limits<double>::infinity();
  v.max_component = 0.0;
  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(o.tail_fraction * static_cast<double>(o.horizon))));
  const std::size_t tail_start = o.horizon >= tail ? o.horizon - tail + 1 : 0;

  InitialConditionSampler sampler(o.seed);
  for (std::size_t k = 0; k < o.ensemble_size; ++k) {
    StateVector x = sampler.draw(sys.n());
    bool alive = true;
    for (std::size_t t = 0; t <= o.horizon; ++t) {
      if (t > 0) {
        auto s = guarded_step(sys, x);
        if (!s.next) {
          alive = false;
          break;
        }
        x = std::move(*s.next);
      }
      if (t >= std::min(tail_start, o.horizon)) {
        v.min_component = std::min(v.min_component, x.values().minCoeff());
        v.max_component = std::max(v.max_component, x.values().maxCoeff());
      }
    }
    if (!alive) ++v.guard_terminations;
  }
  v.pass = v.guard_terminations == 0 && v.min_component >= o.floor && v.max_component <= o.ceiling;
  return v;
}

EmpiricalVerdict attractivity_from(const QPSystem& sys, const StateVector& target,
                                   const std::vector<StateVector>& initial, std::size_t horizon,
                                   double tol) {
  if (target.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "target dimension");
  EmpiricalVerdict v{EmpiricalKind::Attractivity, initial.size(), horizon, 0};
  for (const auto& x0 : initial) {
    StateVector x = x0;
    bool alive = true;
    for (std::size_t t = 0; t < horizon; ++t) {
      auto s = guarded_step(sys, x);
      if (!s.next) {
        alive = false;
        break;
      }
      x = std::move(*s.next);
    }
    if (!alive) {
      ++v.guard_terminations;
      v.max_distance = std::numeric_limits<double>::infinity();
      continue;
    }
    v.max_distance = std::max(v.max_distance, (x.values() - target.values()).norm());
  }
  v.pass = v.guard_terminations == 0 && v.max_distance <= tol;
  return v;
}

EmpiricalVerdict empirical_attractivity(const QPSystem& sys, const StateVector& target,
                                        const AttractivityOptions& o) {
  InitialConditionSampler sampler(o.seed);
  std::vector<StateVector> initial;
  initial.reserve(o.ensemble_size);
  for (std::size_t k = 0; k < o.ensemble_size; ++k) initial.push_back(sampler.draw(sys.n()));
  auto v = attractivity_from(sys, target, initial, o.horizon, o.tol);
  v.seed = o.seed;
  return v;
}

ConjugacyDeviation conjugacy_deviation(const QPSystem& sys, const QMTMatrix& c, const StateVector& x0,
                                       std::size_t steps) {
  const QPSystem transformed = apply_qmt(sys, c);
  auto guard = [](std::string_view what) {
    return Error(ErrorCode::GuardTermination, std::string(what) + " orbit hit a guard");
  };

  ConjugacyDeviation out;
  out.per_step.reserve(steps + 1);
  StateVector x = x0;
  std::optional<StateVector> y;
  try {
    y = map_state(c.C_inv(), x0);
  } catch (const Error&) {
    throw guard("transformed");
  }

  for (std::size_t t = 0;; ++t) {
    std::optional<StateVector> mapped;
    try {
      mapped = map_state(c, *y);
    } catch (const Error&) {
      throw guard("transformed");
    }
    const double dev =
        ((mapped->values() - x.values()).array().abs() / x.values().array()).maxCoeff();
    out.per_step.push_back(dev);
    out.max_relative = std::max(out.max_relative, dev);
    if (t == steps) break;

    auto sx = guarded_step(sys, x);
    if (!sx.next) throw guard("original");
    auto sy = guarded_step(transformed, *y);
    if (!sy.next) throw guard("transformed");
    x = std::move(*sx.next);
    y = std::move(*sy.next);
  }
  return out;
}

double largest_lyapunov(const QPSystem& sys, const StateVector& x0, const LyapunovOptions& o) {
  if (o.samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one Lyapunov sample");
  StateVector x = x0;
  for (std::size_t t = 0; t < o.transient; ++t) {
    auto s = guarded_step(sys, x);
    if (!s.next) throw Error(ErrorCode::GuardTermination, "orbit did not survive the transient");
    x = std::move(*s.next);
  }

  const auto n = static_cast<Eigen::Index>(sys.n());
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 / static_cast<double>(i + 1);
  v.normalize();

  double sum = 0.0;
  for (std::size_t t = 0; t < o.samples; ++t) {
    std::optional<StepJacobian> sj;
    try {
      sj = step_with_jacobian(sys, x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      throw Error(ErrorCode::GuardTermination, "orbit overflowed while sampling");
    }
    if (sj->next.values().minCoeff() < kUnderflowGuard)
      throw Error(ErrorCode::GuardTermination, "orbit underflowed while sampling");
    v = sj->jacobian * v;
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw Error(ErrorCode::GuardTermination, "tangent vector degenerated");
    sum += std::log(norm);
    v /= norm;
    x = std::move(sj->next);
  }
  return sum / static_cast<double>(o.samples);
}

}  // namespace qpd
