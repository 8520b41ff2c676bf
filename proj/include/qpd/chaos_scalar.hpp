#pragma once

#include "qpd/kernels/xi_kernels.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qpd::chaos {

/// xi(x) = x exp(rho - x), the scalar map governing the diagonal dynamics
/// of an LV system with Lambda = rho U. Requires x >= 0.
double xi(double x, double rho);

/// xi'(x) = (1 - x) exp(rho - x)
double xi_derivative(double x, double rho);

/// k-fold iterate of xi.
double xi_iterate(double x, double rho, int k);

struct Interval {
  double lo;
  double hi;
};

/// [1e-9, exp(rho - 1) + 1]: contains the invariant interval [0, exp(rho - 1)].
Interval default_search_interval(double rho);

inline constexpr std::size_t kDefaultPeriod3Grid = 100000;
inline constexpr int kDefaultPreimageDepth = 12;

struct Period3Options {
  std::optional<Interval> interval;  // default_search_interval(rho) when empty
  std::size_t grid_size = kDefaultPeriod3Grid;
  kernels::Backend backend = kernels::best_backend();
};

/// Sorted points of a 3-cycle.
using Cycle3 = std::array<double, 3>;

/// Brackets sign changes of xi^3(x) - x on a uniform grid, refines each by
/// bisection to 1e-12 and discards fixed points of xi. Returns the first
/// genuine 3-cycle found.
std::optional<Cycle3> find_period3(double rho, const Period3Options& options = {});

struct SnapBackWitness {
  double x0;                 // starting point inside the repelling neighborhood
  int steps;                 // xi^steps(x0) = x*
  double derivative_product; // prod_{k<steps} xi'(xi^k(x0))
  double radius;             // repelling neighborhood radius around x* = rho
  std::vector<double> orbit; // x0, xi(x0), ..., x*
};

/// Radius of the neighborhood of x* = rho on which |xi'| > 1:
/// min(0.5 |rho - 1|, 0.5), halved until the bound holds at both ends.
double repelling_radius(double rho);

/// Backward preimage search from x* = rho for an orbit that leaves the
/// repelling neighborhood and lands exactly on x*. Requires rho > 2 (so
/// |xi'(x*)| = |1 - rho| > 1); throws InvalidArgument otherwise. The witness
/// is re-verified by forward iteration before it is returned.
std::optional<SnapBackWitness> find_snap_back(double rho, int max_preimage_depth = kDefaultPreimageDepth);

/// Preimages of `target` under xi on [0, 1] and [1, inf); empty when target
/// exceeds the maximum exp(rho - 1).
std::vector<double> xi_preimages(double target, double rho);

struct XiAnalysis {
  double rho;
  double fixed_point;  // rho
  double multiplier;   // xi'(rho) = 1 - rho
  std::optional<Cycle3> period3;
  std::optional<SnapBackWitness> snap_back;
};

XiAnalysis analyze_xi(double rho, const Period3Options& p3 = {},
                      int max_preimage_depth = kDefaultPreimageDepth);

enum class DetectionKind { Period3, SnapBack };

std::string to_string(DetectionKind k);
std::optional<DetectionKind> detection_kind_from_string(const std::string& s);

/// Reference onset from the literature for the given detector.
double reference_threshold(DetectionKind k);

struct ScanPoint {
  double rho;
  bool detected;
  std::string detail;
};

struct ScanResult {
  DetectionKind kind;
  std::vector<ScanPoint> grid;
  std::optional<double> threshold;  // smallest detected rho after refinement
  double resolution = 0.0;          // width of the final bisection bracket
  double reference = 0.0;
};

struct ScanOptions {
  Period3Options period3;
  int max_preimage_depth = kDefaultPreimageDepth;
};

/// Evaluates the detector on rho_min + k * step and refines the first onset
/// by bisection on rho down to step / 10. A detection at rho_min itself is
/// reported without refinement.
ScanResult scan_detection(DetectionKind kind, double rho_min, double rho_max, double step,
                          const ScanOptions& options = {});

/// Threshold of scan_detection, or NoDetection.
double threshold_scan(DetectionKind kind, double rho_min, double rho_max, double step,
                      const ScanOptions& options = {});

}  // namespace qpd::chaos
