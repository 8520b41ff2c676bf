#include "qpd/report.hpp"

#include "qpd/error.hpp"

#include <sstream>

namespace qpd {

namespace {

bool any_concludes(const std::array<TheoremVerdict, 7>& verdicts, std::initializer_list<TheoremId> ids,
                   Conclusion c) {
  for (auto id : ids)
    if (verdicts[static_cast<std::size_t>(id) - 1].concludes(c)) return true;
  return false;
}

std::vector<std::string> find_disagreements(const std::array<TheoremVerdict, 7>& v, const NumericalChecks& c) {
  std::vector<std::string> out;
  if (v[0].concludes(Conclusion::NotPermanent) && c.permanence.pass)
    out.push_back("T1 concludes NotPermanent but the permanence ensemble stayed inside the box");
  if (v[1].concludes(Conclusion::Permanent) && !c.permanence.pass)
    out.push_back("T2 concludes Permanent but the permanence ensemble failed");
  if (any_concludes(v, {TheoremId::T3, TheoremId::T4}, Conclusion::GloballyAttractive)) {
    if (!c.fixed_point)
      out.push_back("global attractivity concluded but no interior fixed point was found");
    else if (c.attractivity && !c.attractivity->pass)
      out.push_back("global attractivity concluded but the attractivity ensemble failed");
  }
  return out;
}

NumericalChecks verify_numerically(const QPSystem& sys, const std::array<TheoremVerdict, 7>& verdicts,
                                   const VerifyOptions& o) {
  NumericalChecks c;
  try {
    c.fixed_point = qp_fixed_point(sys);
  } catch (const Error& e) {
    c.fixed_point_note = e.what();
  }
  c.permanence = empirical_permanence(sys, o.permanence);
  if (c.fixed_point) c.attractivity = empirical_attractivity(sys, *c.fixed_point, o.attractivity);
  try {
    c.lyapunov = largest_lyapunov(sys, StateVector(Vector::Ones(static_cast<Eigen::Index>(sys.n()))), o.lyapunov);
  } catch (const Error& e) {
    c.lyapunov_note = e.what();
  }
  c.disagreements = find_disagreements(verdicts, c);
  return c;
}

std::string fmt(double x) { return io::format_shortest(x); }

std::string fmt(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
  return s + ")";
}

void print_matrix(std::ostream& os, const char* label, const Matrix& m) {
  os << "  " << label << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) os << "    " << fmt(Vector(m.row(i).transpose())) << '\n';
}

io::Json empirical_to_json(const EmpiricalVerdict& v) {
  io::Json j;
  j["pass"] = v.pass;
  j["ensemble_size"] = v.ensemble_size;
  j["horizon"] = v.horizon;
  j["seed"] = v.seed;
  j["guard_terminations"] = v.guard_terminations;
  if (v.kind == EmpiricalKind::Permanence) {
    j["min_component"] = io::number_to_json(v.min_component);
    j["max_component"] = io::number_to_json(v.max_component);
  } else {
    j["max_distance"] = io::number_to_json(v.max_distance);
  }
  return j;
}

}  // namespace

AnalysisReport analyze(const QPSystem& sys, bool verify, const VerifyOptions& options, double tol) {
  AnalysisReport r{sys, tol, class_invariants(sys), std::nullopt, {}, check_all_theorems(sys, tol),
                   std::nullopt, options};
  try {
    r.canonical = canonical_lv(sys);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularB) throw;
    r.canonical_note = e.what();
  }
  if (verify) r.checks = verify_numerically(sys, r.verdicts, options);
  return r;
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream os;
  const auto& sys = r.system;
  os << "qpd " << kToolVersion << " analysis of "
     << (sys.name().empty() ? std::string("<unnamed>") : sys.name()) << " (n = " << sys.n() << ")\n\n";
  os << "System\n";
  print_matrix(os, "A", sys.A());
  print_matrix(os, "B", sys.B());
  os << "  lambda: " << fmt(sys.lambda()) << "\n\n";

  os << "Class invariants\n";
  print_matrix(os, "Gamma = B A", r.invariants.Gamma);
  os << "  Lambda = B lambda: " << fmt(r.invariants.Lambda) << "\n\n";

  os << "Canonical LV form\n";
  if (r.canonical) {
    os << "  transform C = B^-1, cond_inf(B) = " << fmt(r.canonical->condition) << '\n';
  } else {
    os << "  unavailable: " << r.canonical_note << '\n';
  }
  os << '\n';

  os << "Theorems (tol = " << fmt(r.tolerance) << ")\n";
  for (const auto& v : r.verdicts) {
    os << "  " << to_string(v.theorem) << ": ";
    if (v.applicable) {
      for (std::size_t i = 0; i < v.conclusions.size(); ++i)
        os << (i ? " + " : "") << to_string(v.conclusions[i]);
    } else {
      os << "not applicable";
    }
    if (v.near_boundary()) os << "  [near boundary]";
    os << '\n';
    for (const auto& h : v.hypotheses) {
      os << "      " << (h.pass ? "ok  " : "FAIL") << ' ' << h.label;
      if (!h.note.empty()) os << " (" << h.note << ')';
      if (h.near_boundary) os << " [near boundary]";
      os << '\n';
    }
    for (const auto& n : v.notes) os << "      note: " << n << '\n';
  }

  if (r.checks) {
    const auto& c = *r.checks;
    const auto& o = r.verify_options;
    os << "\nNumerical cross-checks\n";
    if (c.fixed_point) os << "  fixed point: " << fmt(c.fixed_point->values()) << '\n';
    else os << "  fixed point: none (" << c.fixed_point_note << ")\n";
    os << "  permanence: " << (c.permanence.pass ? "pass" : "fail") << ", tail range ["
       << fmt(c.permanence.min_component) << ", " << fmt(c.permanence.max_component) << "], "
       << c.permanence.guard_terminations << " guard terminations\n";
    os << "    (" << o.permanence.ensemble_size << " orbits, T = " << o.permanence.horizon
       << ", tail " << fmt(o.permanence.tail_fraction) << ", box [" << fmt(o.permanence.floor) << ", "
       << fmt(o.permanence.ceiling) << "], seed " << o.permanence.seed << ")\n";
    if (c.attractivity) {
      os << "  attractivity: " << (c.attractivity->pass ? "pass" : "fail") << ", max distance "
         << fmt(c.attractivity->max_distance) << '\n';
      os << "    (" << o.attractivity.ensemble_size << " orbits, T = " << o.attractivity.horizon
         << ", tol " << fmt(o.attractivity.tol) << ", seed " << o.attractivity.seed << ")\n";
    } else {
      os << "  attractivity: skipped (no fixed point)\n";
    }
    if (c.lyapunov) os << "  largest Lyapunov exponent: " << fmt(*c.lyapunov);
    else os << "  largest Lyapunov exponent: unavailable (" << c.lyapunov_note << ")";
    os << "  (x0 = ones, transient " << o.lyapunov.transient << ", samples " << o.lyapunov.samples << ")\n";
    if (c.disagreements.empty()) {
      os << "  analytic and numerical results agree\n";
    } else {
      os << "\n  !!! DISAGREEMENT !!!\n";
      for (const auto& d : c.disagreements) os << "  !!! " << d << '\n';
    }
  }
  return os.str();
}

io::Json report_to_json(const AnalysisReport& r) {
  io::Json j;
  j["tool_version"] = kToolVersion;
  j["system"] = io::system_to_json(r.system);
  j["tolerance"] = r.tolerance;
  j["invariants"]["Gamma"] = io::matrix_to_json(r.invariants.Gamma);
  j["invariants"]["Lambda"] = io::vector_to_json(r.invariants.Lambda);
  if (r.canonical) {
    j["canonical_lv"]["A"] = io::matrix_to_json(r.canonical->lv.A());
    j["canonical_lv"]["lambda"] = io::vector_to_json(r.canonical->lv.lambda());
    j["canonical_lv"]["C"] = io::matrix_to_json(r.canonical->transform.C());
    j["canonical_lv"]["condition"] = io::number_to_json(r.canonical->condition);
  } else {
    j["canonical_lv"] = nullptr;
    j["canonical_note"] = r.canonical_note;
  }
  j["verdicts"] = io::Json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back(io::verdict_to_json(v));

  if (r.checks) {
    const auto& c = *r.checks;
    const auto& o = r.verify_options;
    io::Json v;
    v["fixed_point"] = c.fixed_point ? io::vector_to_json(c.fixed_point->values()) : io::Json(nullptr);
    if (!c.fixed_point) v["fixed_point_note"] = c.fixed_point_note;
    v["permanence"] = empirical_to_json(c.permanence);
    v["permanence"]["tail_fraction"] = o.permanence.tail_fraction;
    v["permanence"]["floor"] = o.permanence.floor;
    v["permanence"]["ceiling"] = o.permanence.ceiling;
    if (c.attractivity) {
      v["attractivity"] = empirical_to_json(*c.attractivity);
      v["attractivity"]["tol"] = o.attractivity.tol;
    } else {
      v["attractivity"] = nullptr;
    }
    v["lyapunov"]["value"] = c.lyapunov ? io::number_to_json(*c.lyapunov) : io::Json(nullptr);
    if (!c.lyapunov) v["lyapunov"]["note"] = c.lyapunov_note;
    v["lyapunov"]["x0"] = "ones";
    v["lyapunov"]["transient"] = o.lyapunov.transient;
    v["lyapunov"]["samples"] = o.lyapunov.samples;
    v["disagreements"] = c.disagreements;
    j["verification"] = std::move(v);
  }
  return j;
}

}  // namespace qpd
