#pragma once

#include "qpd/classifiers.hpp"
#include "qpd/dynamics.hpp"
#include "qpd/system_io.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qpd {

inline constexpr const char* kToolVersion = "0.1.0";

struct VerifyOptions {
  PermanenceOptions permanence;
  AttractivityOptions attractivity;
  LyapunovOptions lyapunov;
};

struct NumericalChecks {
  std::optional<StateVector> fixed_point;
  std::string fixed_point_note;  // error text when no fixed point was found
  EmpiricalVerdict permanence;
  std::optional<EmpiricalVerdict> attractivity;  // target is the fixed point
  std::optional<double> lyapunov;                // started from the all-ones state
  std::string lyapunov_note;
  /// Analytic conclusions contradicted by the simulations.
  std::vector<std::string> disagreements;
};

struct AnalysisReport {
  QPSystem system;
  double tolerance = kDefaultTolerance;
  ClassInvariants invariants;
  std::optional<CanonicalForm> canonical;
  std::string canonical_note;
  std::array<TheoremVerdict, 7> verdicts;
  std::optional<NumericalChecks> checks;
  VerifyOptions verify_options;
};

AnalysisReport analyze(const QPSystem& sys, bool verify, const VerifyOptions& options = {},
                       double tol = kDefaultTolerance);

std::string render_text(const AnalysisReport& report);
io::Json report_to_json(const AnalysisReport& report);

}  // namespace qpd
