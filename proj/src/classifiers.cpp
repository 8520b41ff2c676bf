#include "qpd/classifiers.hpp"

#include "qpd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qpd {

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T4: return "T4";
    case TheoremId::T5: return "T5";
    case TheoremId::T6: return "T6";
    case TheoremId::T7: return "T7";
  }
  return "T?";
}

std::string_view to_string(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::NotPermanent: return "NotPermanent";
    case Conclusion::Permanent: return "Permanent";
    case Conclusion::GloballyAttractive: return "GloballyAttractive";
    case Conclusion::GlobalAttractorExists: return "GlobalAttractorExists";
    case Conclusion::Dissipative: return "Dissipative";
    case Conclusion::ChaoticDiamond: return "ChaoticDiamond";
    case Conclusion::ChaoticMarotto: return "ChaoticMarotto";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<TheoremId> theorem_from_string(std::string_view s) noexcept {
  for (int k = 1; k <= 7; ++k) {
    const auto id = static_cast<TheoremId>(k);
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

std::optional<Conclusion> conclusion_from_string(std::string_view s) noexcept {
  for (int k = 0; k <= static_cast<int>(Conclusion::Inconclusive); ++k) {
    const auto c = static_cast<Conclusion>(k);
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

bool TheoremVerdict::concludes(Conclusion c) const {
  return std::find(conclusions.begin(), conclusions.end(), c) != conclusions.end();
}

bool TheoremVerdict::near_boundary() const {
  return std::any_of(hypotheses.begin(), hypotheses.end(),
                     [](const HypothesisCheck& h) { return h.near_boundary; });
}

Vector perp(const Vector& v) {
  if (v.size() != 2) {
    std::ostringstream os;
    os << "perp is defined on 2-vectors, got length " << v.size();
    throw Error(ErrorCode::WrongDimension, os.str());
  }
  Vector out(2);
  out << v(1), -v(0);
  return out;
}

// ---------------------------------------------------------------------------
// Hierarchical ordering

bool satisfies_hierarchical_order(const Matrix& p, const std::vector<std::size_t>& permutation,
                                  double tol) {
  const auto n = static_cast<std::size_t>(p.rows());
  if (p.cols() != p.rows() || permutation.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto k : permutation) {
    if (k >= n || seen[k]) return false;
    seen[k] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(permutation[i]);
    if (!(p(r, r) > tol)) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p(r, static_cast<Eigen::Index>(permutation[j])) < -tol) return false;
    }
  }
  return true;
}

std::optional<HierarchicalOrderWitness> is_hierarchically_ordered(const Matrix& p, double tol) {
  if (p.rows() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  const auto n = static_cast<std::size_t>(p.rows());

  // Position k may hold index r only if P_rr > 0 and row r is non-negative
  // over every index not yet placed. That property survives removal of other
  // indices, so any admissible index can be placed first without losing a
  // solution: peeling admissible rows is exact and never backtracks.
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});

  auto negatives = [&](std::size_t r) {
    std::size_t count = 0;
    for (auto c : remaining)
      if (p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) < -tol) ++count;
    return count;
  };

  HierarchicalOrderWitness witness;
  witness.permutation.reserve(n);
  while (!remaining.empty()) {
    std::optional<std::size_t> pick;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      const auto r = remaining[pos];
      if (!(p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) > tol)) continue;
      if (negatives(r) == 0) {
        pick = pos;
        break;
      }
    }
    if (!pick) return std::nullopt;
    witness.permutation.push_back(remaining[*pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*pick));
  }
  return witness;
}

// ---------------------------------------------------------------------------
// Theorem checks

namespace {

bool near_zero(const std::vector<double>& values, double tol) {
  return std::any_of(values.begin(), values.end(),
                     [tol](double v) { return std::abs(v) <= 10.0 * tol; });
}

std::vector<double> entries(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

std::vector<double> entries(const Vector& v) { return {v.data(), v.data() + v.size()}; }

struct Context {
  std::size_t n;
  ClassInvariants inv;
  std::optional<Matrix> b_inv;
  double b_condition;
};

Context make_context(const QPSystem& sys) {
  Context ctx{sys.n(), class_invariants(sys), linalg::try_inverse(sys.B()), 0.0};
  ctx.b_condition = ctx.b_inv ? linalg::inf_norm(sys.B()) * linalg::inf_norm(*ctx.b_inv)
                              : std::numeric_limits<double>::infinity();
  return ctx;
}

class VerdictBuilder {
 public:
  VerdictBuilder(TheoremId id, double tol) : tol_(tol) { verdict_.theorem = id; }

  double tol() const { return tol_; }

  HypothesisCheck& add(std::string label, bool pass, std::vector<double> witness = {},
                       bool near = false, std::string note = {}) {
    verdict_.hypotheses.push_back({std::move(label), pass, std::move(witness), near, std::move(note)});
    return verdict_.hypotheses.back();
  }

  bool add_dimension_two(const Context& ctx) {
    return add("n = 2", ctx.n == 2, {static_cast<double>(ctx.n)}).pass;
  }

  bool add_b_invertible(const Context& ctx) {
    auto& h = add("B invertible", ctx.b_inv.has_value(), {ctx.b_condition});
    h.note = "witness: condition estimate of B";
    return h.pass;
  }

  template <typename M>
  bool add_pattern(std::string label, const M& value, std::string_view expected) {
    const auto actual = sign_pattern(value, tol_);
    const auto want = SignPattern::parse(expected);
    auto values = entries(value);
    const bool near = near_zero(values, tol_);
    auto& h = add(std::move(label), actual == want, std::move(values), near,
                  "Pattern = " + actual.to_string() + ", required " + want.to_string());
    return h.pass;
  }

  bool all_passed() const {
    return std::all_of(verdict_.hypotheses.begin(), verdict_.hypotheses.end(),
                       [](const HypothesisCheck& h) { return h.pass; });
  }

  void note(std::string text) { verdict_.notes.push_back(std::move(text)); }

  TheoremVerdict finish(std::vector<Conclusion> on_success) {
    verdict_.applicable = all_passed();
    verdict_.conclusions =
        verdict_.applicable ? std::move(on_success) : std::vector<Conclusion>{Conclusion::Inconclusive};
    return std::move(verdict_);
  }

 private:
  double tol_;
  TheoremVerdict verdict_;
};

// Hypotheses (a)-(c) of the two-dimensional competitive case.
void add_competitive_hypotheses(VerdictBuilder& b, const Context& ctx) {
  const auto& g = ctx.inv.Gamma;
  const auto& l = ctx.inv.Lambda;
  b.add_pattern("(a) Pattern(Gamma) competitive", g, "--;--");
  b.add_pattern("(b) Pattern(Lambda) positive", l, "+;+");
  const Vector c = g.transpose() * perp(l);
  b.add_pattern("(c) Pattern(Gamma^T Lambda_perp) = (-,+)", c, "-;+");
}

}  // namespace

TheoremVerdict check_theorem1(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T1, tol);
  const auto ctx = make_context(sys);
  if (b.add_dimension_two(ctx)) {
    b.add_b_invertible(ctx);
    b.add_pattern("Pattern(Gamma) cooperative", ctx.inv.Gamma, "-+;+-");
  }
  return b.finish({Conclusion::NotPermanent});
}

TheoremVerdict check_theorem2(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T2, tol);
  const auto ctx = make_context(sys);
  if (b.add_dimension_two(ctx)) {
    b.add_b_invertible(ctx);
    add_competitive_hypotheses(b, ctx);
  }
  return b.finish({Conclusion::Permanent});
}

TheoremVerdict check_theorem3(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T3, tol);
  const auto ctx = make_context(sys);
  if (b.add_dimension_two(ctx)) {
    b.add_b_invertible(ctx);
    add_competitive_hypotheses(b, ctx);
    const auto& l = ctx.inv.Lambda;
    const bool pass = l(0) - 1.0 <= tol && l(1) - 1.0 <= tol;
    const bool near = std::abs(l(0) - 1.0) <= 10 * tol || std::abs(l(1) - 1.0) <= 10 * tol;
    b.add("Lambda_i <= 1", pass, entries(l), near);
  }
  b.note("conclusion concerns the unique interior fixed point");
  return b.finish({Conclusion::GloballyAttractive});
}

TheoremVerdict check_theorem4(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T4, tol);
  const auto ctx = make_context(sys);
  if (b.add_dimension_two(ctx)) {
    b.add_b_invertible(ctx);
    const auto& g = ctx.inv.Gamma;
    const auto& l = ctx.inv.Lambda;
    b.add_pattern("(a) Pattern(Gamma) predator-prey", g, "--;+-");
    b.add_pattern("(b) Pattern(Lambda) = (+,-)", l, "+;-");
    b.add("(c) Lambda_1 <= 1", l(0) - 1.0 <= tol, {l(0)}, std::abs(l(0) - 1.0) <= 10 * tol);

    if (std::abs(g(0, 0)) <= tol) {
      b.add("(d) Lambda_1 Gamma_21/Gamma_11 < Lambda_2 <= Gamma_21/Gamma_11 + 1", false, {g(0, 0)},
            true, "Gamma_11 vanishes; bounds undefined");
    } else {
      const double ratio = g(1, 0) / g(0, 0);
      const double lower = l(0) * ratio;
      const double upper = ratio + 1.0;
      const bool pass = l(1) - lower > tol && l(1) - upper <= tol;
      const bool near = std::abs(l(1) - lower) <= 10 * tol || std::abs(l(1) - upper) <= 10 * tol;
      auto& h = b.add("(d) Lambda_1 Gamma_21/Gamma_11 < Lambda_2 <= Gamma_21/Gamma_11 + 1", pass,
                      {lower, l(1), upper}, near);
      if (!(upper - lower > tol)) h.note = "hypotheses unsatisfiable for these parameters (empty interval)";
    }

    const double e = g(0, 0) * g(1, 1) + g(0, 1) * g(1, 0);
    b.add("(e) Gamma_11 Gamma_22 + Gamma_12 Gamma_21 > 0", e > tol, {e}, std::abs(e) <= 10 * tol);
  }
  b.note("conclusion concerns the unique interior fixed point");
  return b.finish({Conclusion::GloballyAttractive});
}

namespace {

void add_hierarchical_hypotheses(VerdictBuilder& b, const Context& ctx) {
  b.add_b_invertible(ctx);
  const Matrix minus_gamma = -ctx.inv.Gamma;
  const auto witness = is_hierarchically_ordered(minus_gamma, b.tol());
  std::vector<double> perm;
  if (witness)
    for (auto k : witness->permutation) perm.push_back(static_cast<double>(k));
  auto& h = b.add("-Gamma hierarchically ordered", witness.has_value(), std::move(perm),
                  near_zero(entries(minus_gamma), b.tol()));
  h.note = witness ? "witness: index rearrangement (0-based)" : "no admissible rearrangement";
}

}  // namespace

TheoremVerdict check_theorem5(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T5, tol);
  const auto ctx = make_context(sys);
  add_hierarchical_hypotheses(b, ctx);
  b.note("independent of the invariant Lambda");
  return b.finish({Conclusion::GlobalAttractorExists});
}

TheoremVerdict check_theorem6(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T6, tol);
  const auto ctx = make_context(sys);
  add_hierarchical_hypotheses(b, ctx);
  if (ctx.b_inv) {
    const double min_entry = ctx.b_inv->minCoeff();
    b.add("B^-1 non-negative", min_entry >= -tol, {min_entry}, std::abs(min_entry) <= 10 * tol)
        .note = "witness: smallest entry of B^-1";
  } else {
    b.add("B^-1 non-negative", false, {}, false, "B is singular");
  }
  return b.finish({Conclusion::Dissipative});
}

TheoremVerdict check_theorem7(const QPSystem& sys, double tol) {
  VerdictBuilder b(TheoremId::T7, tol);
  const auto ctx = make_context(sys);
  const auto& g = ctx.inv.Gamma;
  const auto& l = ctx.inv.Lambda;
  const auto n = static_cast<Eigen::Index>(ctx.n);

  b.add_b_invertible(ctx);
  const auto g_inv = linalg::try_inverse(g);
  b.add("(b) Gamma invertible", g_inv.has_value(), {linalg::condition_inf(g)})
      .note = "witness: condition estimate of Gamma";
  if (g_inv) {
    const Vector w = *g_inv * Vector::Ones(n);
    const bool pass = (w.array() < -tol).all();
    b.add("(c) Gamma^-1 U < 0", pass, entries(w), near_zero(entries(w), tol));
  } else {
    b.add("(c) Gamma^-1 U < 0", false, {}, false, "Gamma is singular");
  }

  const double rho = l.mean();
  const double spread = (l.array() - rho).abs().maxCoeff();
  const bool proportional = spread <= tol && rho > tol;
  b.add("(d) Lambda = rho U, rho > 0", proportional, {rho, spread},
        std::abs(rho) <= 10 * tol || (spread >= 0.1 * tol && spread <= 10 * tol))
      .note = "witness: rho (mean of Lambda), max |Lambda_i - rho|";

  const bool base_holds = b.all_passed();
  const bool marotto = rho >= kMarottoThreshold - tol;
  auto& threshold = b.add("rho >= 2.89 (Marotto onset)", marotto, {rho, kMarottoThreshold, kDiamondThreshold},
                          std::abs(rho - kMarottoThreshold) <= 10 * tol ||
                              std::abs(rho - kDiamondThreshold) <= 10 * tol);
  if (base_holds && !marotto) threshold.note = "hypotheses (a)-(d) hold, below both thresholds";

  std::vector<Conclusion> conclusions;
  if (rho >= kDiamondThreshold - tol) conclusions.push_back(Conclusion::ChaoticDiamond);
  conclusions.push_back(Conclusion::ChaoticMarotto);
  return b.finish(std::move(conclusions));
}

std::array<TheoremVerdict, 7> check_all_theorems(const QPSystem& sys, double tol) {
  return {check_theorem1(sys, tol), check_theorem2(sys, tol), check_theorem3(sys, tol),
          check_theorem4(sys, tol), check_theorem5(sys, tol), check_theorem6(sys, tol),
          check_theorem7(sys, tol)};
}

}  // namespace qpd
