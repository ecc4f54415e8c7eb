#ifndef MQL_MCSHANE_HPP
#define MQL_MCSHANE_HPP

// BQ checks and McShane sums: sum over faces of h(ab) = 1/2, with
// h(x) = (1 - sqrt(1 - 4/x)) / 2 and Psi(e) = d / (a+b+c+d).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "mql/curve_complex.hpp"
#include "mql/error.hpp"
#include "mql/quad.hpp"

namespace mql {

/// Evaluated as 2 / (x (1 + sqrt(1 - 4/x))) to avoid cancellation at large |x|.
inline Complex h(Complex x, double tol = kDefaultTol) {
  if (distance_to_segment(x, 0.0, 4.0) <= tol) {
    throw PreconditionViolation("h is undefined on the real segment [0,4]");
  }
  return 2.0 / (x * (1.0 + std::sqrt(1.0 - 4.0 / x)));
}

/// 1 / (1 + exp(l/2)) for the two-sided class of a face with product ab.
inline Complex mcshane_geometric_term(Complex ab) {
  return 1.0 / (1.0 + std::exp(two_sided_length(ab - 2.0) / 2.0));
}

/// Psi of the oriented edge pointing into entry i: q_i / (a+b+c+d).
inline Complex psi(const MarkoffQuad& q, std::size_t i) {
  const Complex s = q.sum();
  Complex others{1.0, 0.0};
  for (std::size_t j = 0; j < 4; ++j)
    if (j != i) others *= q[j];
  if (s == Complex{} || others == Complex{}) throw PreconditionViolation("psi: zero denominator");
  return q[i] / s;
}

// ---------------------------------------------------------------------------

struct BqReport {
  double cutoff = 0.0;
  std::vector<FaceRecord> faces;       // |ab| <= cutoff
  std::vector<FaceRecord> faces4;      // |ab| <= 4
  std::vector<FaceRecord> violations;  // ab within tol of [0,4]
  std::size_t cellsBelow2 = 0;
  bool budgetHit = false;

  bool passed() const { return violations.empty() && !budgetHit; }
};

/// Faces with |ab| <= max(k, 4) under the cell budget. Finiteness can only be
/// refuted (budget hit), never certified.
inline BqReport check_bq(const MarkoffQuad& q, double k, const EnumerationOptions& opts = {},
                         double tol = kDefaultTol) {
  require_valid(q, tol);
  BqReport r;
  r.cutoff = std::max(k, 4.0);
  MarkoffQuad start = q;
  try {
    start = reduce_to_sink(q, opts.maxCells, tol).sink;
  } catch (const BudgetExceeded&) {
    r.budgetHit = true;
  }

  auto faces = scan_faces(start, r.cutoff, opts);
  r.budgetHit = r.budgetHit || faces.budgetHit;
  for (auto& f : faces.faces) {
    const Complex ab = f.product();
    if (std::abs(ab) <= 4.0) {
      if (distance_to_segment(ab, 0.0, 4.0) <= tol) r.violations.push_back(f);
      r.faces4.push_back(f);
    }
    r.faces.push_back(std::move(f));
  }
  auto cells = scan_cells(start, 2.0, opts);
  r.budgetHit = r.budgetHit || cells.budgetHit;
  r.cellsBelow2 = cells.cells.size();
  return r;
}

// ---------------------------------------------------------------------------

enum class McShaneVerdict { Converged, NotConverged, BudgetExceeded };

inline const char* to_string(McShaneVerdict v) {
  switch (v) {
    case McShaneVerdict::Converged: return "converged";
    case McShaneVerdict::NotConverged: return "not-converged";
    case McShaneVerdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct McShaneOptions {
  std::size_t maxFaces = 1'000'000;
  EnumerationOptions enumeration{};
};

struct McShaneReport {
  Complex partialSum;
  std::size_t termCount = 0;
  double productCutoff = 0.0;
  double lastShellMax = 0.0;  // max |h| over faces with |ab| in (cutoff/2, cutoff]
  McShaneVerdict verdict = McShaneVerdict::NotConverged;
  double maxFormDisagreement = 0.0;  // |h(ab) - 1/(1+exp(l/2))| over all terms
};

namespace detail {

inline void require_bq(const MarkoffQuad& q, const McShaneOptions& opts) {
  const BqReport bq = check_bq(q, 4.0, opts.enumeration);
  if (!bq.violations.empty()) {
    throw PreconditionViolation("BQ condition violated: a face has ab in [0,4]");
  }
}

// Sums in ascending id-pair order, which fixes the floating-point total.
inline McShaneReport sum_faces(const MarkoffQuad& sink, double cutoff, const McShaneOptions& opts) {
  McShaneReport r;
  r.productCutoff = cutoff;
  const FaceScan scan = scan_faces(sink, cutoff, opts.enumeration);
  if (scan.budgetHit || scan.faces.size() > opts.maxFaces) {
    r.verdict = McShaneVerdict::BudgetExceeded;
    return r;
  }
  for (const auto& f : scan.faces) {
    const Complex ab = f.product();
    const Complex term = h(ab);
    r.partialSum += term;
    const double disagreement = std::abs(term - mcshane_geometric_term(ab));
    r.maxFormDisagreement = std::max(r.maxFormDisagreement, disagreement);
    if (std::abs(ab) > cutoff / 2.0) r.lastShellMax = std::max(r.lastShellMax, std::abs(term));
  }
  r.termCount = scan.faces.size();
  return r;
}

}  // namespace detail

/// Sum of h(ab) over distinct faces with |ab| <= productCutoff. The verdict is
/// NotConverged unless the budget was hit; mcshane_verify judges convergence.
inline McShaneReport mcshane_partial(const MarkoffQuad& q, double productCutoff, const McShaneOptions& opts = {}) {
  require_valid(q);
  detail::require_bq(q, opts);
  return detail::sum_faces(reduce_to_sink(q).sink, productCutoff, opts);
}

/// 16 * 4^k for k = 0..17.
inline std::vector<double> default_cutoff_schedule() {
  std::vector<double> s;
  for (double c = 16.0; c <= 16.0 * std::pow(4.0, 17); c *= 4.0) s.push_back(c);
  return s;
}

struct McShaneVerification {
  bool pass = false;
  McShaneReport report;                // last evaluated cutoff
  std::vector<McShaneReport> history;  // one per evaluated cutoff
};

/// Walks the cutoff schedule until |sum - 1/2| <= targetTol and the last shell
/// is below targetTol / 10, or the budget runs out. Each report also carries
/// the per-term disagreement with the 1/(1+exp(l/2)) form.
inline McShaneVerification mcshane_verify(const MarkoffQuad& q, double targetTol,
                                          const std::vector<double>& schedule = default_cutoff_schedule(),
                                          const McShaneOptions& opts = {}) {
  require_valid(q);
  detail::require_bq(q, opts);
  const MarkoffQuad sink = reduce_to_sink(q).sink;
  McShaneVerification v;
  for (double cutoff : schedule) {
    McShaneReport r = detail::sum_faces(sink, cutoff, opts);
    if (r.verdict == McShaneVerdict::BudgetExceeded) {
      v.report = r;
      v.history.push_back(r);
      return v;
    }
    if (std::abs(r.partialSum - 0.5) <= targetTol && r.lastShellMax <= targetTol / 10.0) {
      r.verdict = McShaneVerdict::Converged;
      v.pass = true;
    }
    v.report = r;
    v.history.push_back(r);
    if (v.pass) break;
  }
  return v;
}

// ---------------------------------------------------------------------------

/// Sum of Psi over the oriented edges entering a finite subtree from outside.
/// The subtree is given as reduced flip words from q (the empty word is q);
/// every word's parent must be present.
inline Complex finite_tree_psi_sum(const MarkoffQuad& q, const std::set<FlipWord>& tree) {
  require_valid(q);
  if (!tree.count(FlipWord{})) throw PreconditionViolation("subtree must contain the root vertex");
  for (const auto& w : tree) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] > 3) throw PreconditionViolation("flip index out of range");
      if (k > 0 && w[k] == w[k - 1]) throw PreconditionViolation("subtree word backtracks");
    }
    if (!w.empty() && !tree.count(FlipWord(w.begin(), w.end() - 1))) {
      throw PreconditionViolation("subtree is disconnected");
    }
  }
  Complex total{};
  for (const auto& w : tree) {
    const MarkoffQuad v = apply_word(q, w);
    for (std::uint8_t i = 0; i < 4; ++i) {
      const bool toParent = !w.empty() && w.back() == i;
      if (toParent) continue;
      FlipWord child = w;
      child.push_back(i);
      if (tree.count(child)) continue;
      total += psi(v, i);
    }
  }
  return total;
}

}  // namespace mql

#endif  // MQL_MCSHANE_HPP
