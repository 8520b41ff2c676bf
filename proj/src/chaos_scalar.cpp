#include "qpd/chaos_scalar.hpp"

#include "qpd/classifiers.hpp"
#include "qpd/error.hpp"
#include "qpd/qp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qpd::chaos {

double xi(double x, double rho) {
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "xi is defined for x >= 0");
  if (rho - x > kExponentGuard) throw Error(ErrorCode::Overflow, "xi exponent exceeds guard");
  return x * std::exp(rho - x);
}

double xi_derivative(double x, double rho) { return (1.0 - x) * std::exp(rho - x); }

double xi_iterate(double x, double rho, int k) {
  for (int i = 0; i < k; ++i) x = xi(x, rho);
  return x;
}

Interval default_search_interval(double rho) { return {1e-9, std::exp(rho - 1.0) + 1.0}; }

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kCycleTolerance = 1e-9;

double scaled(double x) { return std::max(1.0, std::abs(x)); }

bool is_fixed_point(double x, double rho) {
  return std::abs(xi(x, rho) - x) <= kCycleTolerance * scaled(x);
}

// Bisection on a bracket [lo, hi] where f changes sign; stops at width tol
// or when the midpoint no longer separates the endpoints.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string format_cycle(const Cycle3& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "cycle %.10g %.10g %.10g", c[0], c[1], c[2]);
  return buf;
}

std::string format_witness(const SnapBackWitness& w) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "steps=%d x0=%.10g", w.steps, w.x0);
  return buf;
}

std::optional<Cycle3> cycle_from_root(double c, double rho) {
  if (is_fixed_point(c, rho)) return std::nullopt;
  Cycle3 cycle{c, xi(c, rho), xi(xi(c, rho), rho)};
  for (double p : cycle)
    if (std::abs(xi_iterate(p, rho, 3) - p) > kCycleTolerance * scaled(p)) return std::nullopt;
  std::sort(cycle.begin(), cycle.end());
  if (cycle[1] - cycle[0] <= 1e-6 * scaled(cycle[1]) || cycle[2] - cycle[1] <= 1e-6 * scaled(cycle[2]))
    return std::nullopt;
  return cycle;
}

}  // namespace

std::optional<Cycle3> find_period3(double rho, const Period3Options& options) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (options.grid_size < 1000) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 1000");
  const Interval iv = options.interval.value_or(default_search_interval(rho));
  if (!(iv.lo >= 0.0) || !(iv.hi > iv.lo))
    throw Error(ErrorCode::InvalidArgument, "search interval must satisfy 0 <= lo < hi");

  const std::size_t n = options.grid_size;
  const double h = (iv.hi - iv.lo) / static_cast<double>(n - 1);
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = iv.lo + h * static_cast<double>(k);
  xs.back() = iv.hi;
  std::vector<double> g(n);
  kernels::xi_cycle_residual(xs, g, rho, 3, options.backend);

  auto residual = [rho](double x) { return xi_iterate(x, rho, 3) - x; };
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<double> root;
    if (g[k] == 0.0) {
      root = xs[k];
    } else if (k + 1 < n && (g[k] > 0.0) != (g[k + 1] > 0.0) && g[k + 1] != 0.0) {
      root = bisect(residual, xs[k], xs[k + 1], kRootTolerance);
    }
    if (!root) continue;
    if (auto cycle = cycle_from_root(*root, rho)) return cycle;
  }
  return std::nullopt;
}

std::vector<double> xi_preimages(double target, double rho) {
  if (!(target > 0.0)) return {};
  const double peak = std::exp(rho - 1.0);
  if (target > peak) return {};
  if (target == peak) return {1.0};

  auto f = [&](double y) { return y * std::exp(rho - y) - target; };
  // Left branch: y e^{rho-1} <= target <= y e^{rho} on (0, 1].
  const double left_lo = target * std::exp(-rho);
  const double left_hi = std::min(1.0, target * std::exp(1.0 - rho));
  const double left = left_hi <= left_lo ? left_lo : bisect(f, left_lo, left_hi, 0.0);

  double right_hi = 2.0;
  while (f(right_hi) > 0.0) right_hi *= 2.0;
  const double right = bisect(f, 1.0, right_hi, 0.0);
  return {left, right};
}

double repelling_radius(double rho) {
  double r = std::min(0.5 * std::abs(rho - 1.0), 0.5);
  // On x > 1, |xi'| rises to x = 2 and falls after, so the minimum over an
  // interval sits at one of its ends.
  while (r > 1e-12 && (std::abs(xi_derivative(rho - r, rho)) <= 1.0 ||
                       std::abs(xi_derivative(rho + r, rho)) <= 1.0))
    r *= 0.5;
  return r;
}

namespace {

std::optional<SnapBackWitness> verify_witness(double x0, int steps, double rho, double radius) {
  SnapBackWitness w{x0, steps, 1.0, radius, {x0}};
  double x = x0;
  for (int k = 0; k < steps; ++k) {
    w.derivative_product *= xi_derivative(x, rho);
    x = xi(x, rho);
    w.orbit.push_back(x);
  }
  if (std::abs(x - rho) > kCycleTolerance * scaled(rho)) return std::nullopt;
  if (!(std::abs(w.derivative_product) > 0.0) || !std::isfinite(w.derivative_product)) return std::nullopt;
  w.orbit.back() = rho;
  return w;
}

}  // namespace

std::optional<SnapBackWitness> find_snap_back(double rho, int max_preimage_depth) {
  if (!(rho > 2.0) || !std::isfinite(rho))
    throw Error(ErrorCode::InvalidArgument, "snap-back search needs rho > 2 (repelling fixed point)");
  if (max_preimage_depth < 1) throw Error(ErrorCode::InvalidArgument, "preimage depth must be >= 1");

  const double fixed = rho;
  const double radius = repelling_radius(rho);
  const double separation = kCycleTolerance * scaled(fixed);

  std::vector<double> level;
  for (double p : xi_preimages(fixed, rho))
    if (std::abs(p - fixed) > separation) level.push_back(p);

  for (int depth = 1; depth <= max_preimage_depth && !level.empty(); ++depth) {
    for (double p : level) {
      const double d = std::abs(p - fixed);
      if (d > separation && d <= radius) {
        if (auto w = verify_witness(p, depth, rho, radius)) return w;
      }
    }
    if (depth == max_preimage_depth) break;
    std::vector<double> next;
    next.reserve(level.size() * 2);
    for (double p : level)
      for (double q : xi_preimages(p, rho))
        if (q != 1.0) next.push_back(q);  // xi'(1) = 0 would kill the derivative product
    level = std::move(next);
  }
  return std::nullopt;
}

XiAnalysis analyze_xi(double rho, const Period3Options& p3, int max_preimage_depth) {
  XiAnalysis a{rho, rho, 1.0 - rho, find_period3(rho, p3), std::nullopt};
  if (rho > 2.0) a.snap_back = find_snap_back(rho, max_preimage_depth);
  return a;
}

std::string to_string(DetectionKind k) { return k == DetectionKind::Period3 ? "period3" : "snapback"; }

std::optional<DetectionKind> detection_kind_from_string(const std::string& s) {
  if (s == "period3") return DetectionKind::Period3;
  if (s == "snapback") return DetectionKind::SnapBack;
  return std::nullopt;
}

double reference_threshold(DetectionKind k) {
  return k == DetectionKind::Period3 ? kDiamondThreshold : kMarottoThreshold;
}

namespace {

ScanPoint detect(DetectionKind kind, double rho, const ScanOptions& options) {
  if (kind == DetectionKind::Period3) {
    const auto c = find_period3(rho, options.period3);
    return {rho, c.has_value(), c ? format_cycle(*c) : std::string("none")};
  }
  if (!(rho > 2.0)) return {rho, false, "fixed point not repelling"};
  const auto w = find_snap_back(rho, options.max_preimage_depth);
  return {rho, w.has_value(), w ? format_witness(*w) : std::string("none")};
}

}  // namespace

ScanResult scan_detection(DetectionKind kind, double rho_min, double rho_max, double step,
                          const ScanOptions& options) {
  if (!std::isfinite(rho_min) || !std::isfinite(rho_max) || !(rho_min < rho_max))
    throw Error(ErrorCode::InvalidArgument, "scan range needs rho_min < rho_max");
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::InvalidArgument, "scan step must be positive");
  if (!(rho_min > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");

  ScanResult result{kind, {}, std::nullopt, 0.0, reference_threshold(kind)};
  const auto count = static_cast<std::size_t>(std::floor((rho_max - rho_min) / step + 1e-9)) + 1;
  result.grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    result.grid.push_back(detect(kind, rho_min + step * static_cast<double>(k), options));

  const auto first = std::find_if(result.grid.begin(), result.grid.end(),
                                  [](const ScanPoint& p) { return p.detected; });
  if (first == result.grid.end()) return result;
  if (first == result.grid.begin()) {
    result.threshold = first->rho;
    result.resolution = step;
    return result;
  }
  double lo = std::prev(first)->rho;
  double hi = first->rho;
  while (hi - lo > step / 10.0) {
    const double mid = 0.5 * (lo + hi);
    if (detect(kind, mid, options).detected) hi = mid;
    else lo = mid;
  }
  result.threshold = hi;
  result.resolution = hi - lo;
  return result;
}

double threshold_scan(DetectionKind kind, double rho_min, double rho_max, double step,
                      const ScanOptions& options) {
  const auto r = scan_detection(kind, rho_min, rho_max, step, options);
  if (!r.threshold) {
    std::ostringstream os;
    os << to_string(kind) << " not detected on [" << rho_min << ", " << rho_max << "]";
    throw Error(ErrorCode::NoDetection, os.str());
  }
  return *r.threshold;
}

}  // namespace qpd::chaos
