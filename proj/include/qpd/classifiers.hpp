#pragma once

#include "qpd/qmt.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpd {

/// Reference onset values for chaos of the scalar map x exp(rho - x).
/// chaos_scalar reports its own scanned thresholds next to these.
inline constexpr double kDiamondThreshold = 3.13;
inline constexpr double kMarottoThreshold = 2.89;

enum class TheoremId { T1 = 1, T2, T3, T4, T5, T6, T7 };

enum class Conclusion {
  NotPermanent,
  Permanent,
  GloballyAttractive,
  GlobalAttractorExists,
  Dissipative,
  ChaoticDiamond,
  ChaoticMarotto,
  Inconclusive,
};

std::string_view to_string(TheoremId id) noexcept;
std::string_view to_string(Conclusion c) noexcept;
std::optional<TheoremId> theorem_from_string(std::string_view s) noexcept;
std::optional<Conclusion> conclusion_from_string(std::string_view s) noexcept;

struct HypothesisCheck {
  std::string label;
  bool pass = false;
  std::vector<double> witness;
  /// Some tested quantity lies within 10*tol of its decision boundary.
  bool near_boundary = false;
  std::string note;

  friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

/// applicable holds exactly when every hypothesis passed; conclusions is
/// {Inconclusive} otherwise.
struct TheoremVerdict {
  TheoremId theorem{};
  bool applicable = false;
  std::vector<Conclusion> conclusions;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<std::string> notes;

  bool concludes(Conclusion c) const;
  bool near_boundary() const;

  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

/// (v1, v2) -> (v2, -v1). Throws WrongDimension for other lengths.
Vector perp(const Vector& v);

/// Index rearrangement sigma with P'_ij = P[sigma_i, sigma_j] non-negative on
/// and above the diagonal and strictly positive on it.
struct HierarchicalOrderWitness {
  std::vector<std::size_t> permutation;
};

/// Direct check of the definition for a given permutation.
bool satisfies_hierarchical_order(const Matrix& p, const std::vector<std::size_t>& permutation,
                                  double tol = kDefaultTolerance);

std::optional<HierarchicalOrderWitness> is_hierarchically_ordered(const Matrix& p,
                                                                  double tol = kDefaultTolerance);

TheoremVerdict check_theorem1(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem2(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem3(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem4(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem5(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem6(const QPSystem& sys, double tol = kDefaultTolerance);
TheoremVerdict check_theorem7(const QPSystem& sys, double tol = kDefaultTolerance);

std::array<TheoremVerdict, 7> check_all_theorems(const QPSystem& sys, double tol = kDefaultTolerance);

}  // namespace qpd
