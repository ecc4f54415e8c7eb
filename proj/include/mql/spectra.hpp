#ifndef MQL_SPECTRA_HPP
#define MQL_SPECTRA_HPP

// Simple length spectra, the counting function s(L), systoles and power-law
// growth fits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mql/curve_complex.hpp"
#include "mql/error.hpp"
#include "mql/klein.hpp"
#include "mql/quad.hpp"

namespace mql {

enum class Sidedness { OneSided, TwoSided };

inline const char* to_string(Sidedness s) { return s == Sidedness::OneSided ? "one-sided" : "two-sided"; }

struct SpectrumEntry {
  Sidedness kind = Sidedness::OneSided;
  Complex trace;               // a for one-sided, e = ab - 2 for two-sided
  Complex length;
  std::vector<CellId> cells;   // one cell, or the two cells of a face
  FlipWord word;               // discovery vertex, relative to the sink
};

namespace detail {

inline bool entry_order(const SpectrumEntry& x, const SpectrumEntry& y) {
  const double lx = std::abs(x.length), ly = std::abs(y.length);
  if (lx != ly) return lx < ly;
  if (word_order(x.word, y.word) || word_order(y.word, x.word)) return word_order(x.word, y.word);
  return x.cells < y.cells;
}

inline MarkoffQuad sink_of(const MarkoffQuad& q) { return reduce_to_sink(q).sink; }

}  // namespace detail

/// One-sided classes with |length| < L, sorted by |length| then discovery word.
///
/// Cells are collected up to |trace| <= 2 sinh(L/2), which contains every
/// candidate because |sinh z| <= sinh |z|.
inline std::vector<SpectrumEntry> one_sided_spectrum(const MarkoffQuad& q, double L,
                                                     const EnumerationOptions& opts = {}) {
  require_valid(q);
  if (!(L > 0.0)) return {};
  const MarkoffQuad sink = detail::sink_of(q);
  const double bound = 2.0 * std::sinh(L / 2.0);
  std::vector<SpectrumEntry> out;
  for (auto& c : enumerate_cells(sink, bound, opts)) {
    const Complex len = one_sided_length(c.value);
    if (std::abs(len) < L) out.push_back({Sidedness::OneSided, c.value, len, {c.id}, std::move(c.word)});
  }
  std::sort(out.begin(), out.end(), detail::entry_order);
  return out;
}

/// Two-sided classes with |length| < L. A face has |ab| <= |e| + 2 and
/// |e| <= 2 cosh(|l|/2), which fixes the product bound.
inline std::vector<SpectrumEntry> two_sided_spectrum(const MarkoffQuad& q, double L,
                                                     const EnumerationOptions& opts = {}) {
  require_valid(q);
  if (!(L > 0.0)) return {};
  const MarkoffQuad sink = detail::sink_of(q);
  const double bound = 2.0 * std::cosh(L / 2.0) + 2.0;
  std::vector<SpectrumEntry> out;
  for (auto& f : enumerate_faces(sink, bound, opts)) {
    const Complex e = two_sided_trace(f.a, f.b);
    const Complex len = two_sided_length(e);
    if (std::abs(len) < L) out.push_back({Sidedness::TwoSided, e, len, {f.cells[0], f.cells[1]}, std::move(f.word)});
  }
  std::sort(out.begin(), out.end(), detail::entry_order);
  return out;
}

inline std::size_t count_s(const MarkoffQuad& q, double L, const EnumerationOptions& opts = {}) {
  return one_sided_spectrum(q, L, opts).size();
}

struct SystoleResult {
  Complex length;
  SpectrumEntry witness;
};

/// Shortest simple closed geodesic, compared by |length|.
///
/// One-sided candidates are the sink entries and every cell with |trace| <= 4;
/// two-sided candidates are faces with |ab| <= 18. Some sink entry always has
/// trace at most 4, so no longer two-sided curve can win.
inline SystoleResult systole(const MarkoffQuad& q, const EnumerationOptions& opts = {}) {
  require_valid(q);
  const MarkoffQuad sink = detail::sink_of(q);
  std::vector<SpectrumEntry> candidates;
  for (std::size_t i = 0; i < 4; ++i) {
    candidates.push_back({Sidedness::OneSided, sink[i], one_sided_length(sink[i]), {cell_id(i)}, {}});
  }
  for (auto& c : enumerate_cells(sink, 4.0, opts)) {
    if (to_index(c.id) < 4) continue;
    candidates.push_back({Sidedness::OneSided, c.value, one_sided_length(c.value), {c.id}, std::move(c.word)});
  }
  for (auto& f : enumerate_faces(sink, 18.0, opts)) {
    const Complex e = two_sided_trace(f.a, f.b);
    candidates.push_back({Sidedness::TwoSided, e, two_sided_length(e), {f.cells[0], f.cells[1]}, std::move(f.word)});
  }
  auto best = std::min_element(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    const double lx = std::abs(x.length), ly = std::abs(y.length);
    if (lx != ly) return lx < ly;
    return x.kind == Sidedness::OneSided && y.kind == Sidedness::TwoSided;
  });
  return {best->length, *best};
}

// ---------------------------------------------------------------------------
// Growth fits

struct GrowthFit {
  std::vector<std::pair<double, std::size_t>> samples;  // (L, s(L))
  double exponent = 0.0;
  double interceptLogEta = 0.0;
  double fitResidual = 0.0;  // RMS of log-count residuals
};

/// Least-squares fit of log s = m log L + c over samples with s > 0.
inline GrowthFit fit_power_law(std::vector<std::pair<double, std::size_t>> samples) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [L, n] : samples)
    if (n > 0 && L > 0.0) pts.emplace_back(std::log(L), std::log(static_cast<double>(n)));
  if (pts.size() < 2) throw PreconditionViolation("growth fit needs at least two shells with nonzero counts");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw PreconditionViolation("growth fit needs distinct L values");

  GrowthFit fit;
  fit.samples = std::move(samples);
  fit.exponent = sxy / sxx;
  fit.interceptLogEta = my - fit.exponent * mx;
  double ss = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (fit.exponent * x + fit.interceptLogEta);
    ss += r * r;
  }
  fit.fitResidual = std::sqrt(ss / static_cast<double>(pts.size()));
  return fit;
}

/// `shells` values of L spaced geometrically over [lmin, lmax].
inline std::vector<double> geometric_shells(double lmin, double lmax, std::size_t shells) {
  std::vector<double> out;
  for (std::size_t k = 0; k < shells; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(shells - 1);
    out.push_back(k + 1 == shells ? lmax : lmin * std::pow(lmax / lmin, t));
  }
  return out;
}

/// Counts from a sorted list of |length| values at each shell.
inline std::vector<std::pair<double, std::size_t>> shell_counts(const std::vector<double>& sortedLengths,
                                                                const std::vector<double>& shells) {
  std::vector<std::pair<double, std::size_t>> out;
  for (double L : shells) {
    const auto n = std::lower_bound(sortedLengths.begin(), sortedLengths.end(), L) - sortedLengths.begin();
    out.emplace_back(L, static_cast<std::size_t>(n));
  }
  return out;
}

inline void check_shell_args(double lmin, double lmax, std::size_t shells) {
  if (!(lmin > 0.0) || !(lmax > lmin)) throw PreconditionViolation("growth window needs 0 < lmin < lmax");
  if (shells < 4) throw PreconditionViolation("growth fit needs at least 4 shells");
}

/// Fits s(L) ~ eta L^m on geometric shells. The spectrum is generated once at
/// lmax and counted at every shell.
inline GrowthFit growth_exponent(const MarkoffQuad& q, double lmin, double lmax, std::size_t shells,
                                 const EnumerationOptions& opts = {}) {
  check_shell_args(lmin, lmax, shells);
  std::vector<double> lengths;
  for (const auto& e : one_sided_spectrum(q, lmax, opts)) lengths.push_back(std::abs(e.length));
  return fit_power_law(shell_counts(lengths, geometric_shells(lmin, lmax, shells)));
}

/// One-sided lengths 2 arcsinh |a_i| of the Klein-bottle sequence below lmax,
/// read forward from the seed, fitted like growth_exponent.
inline GrowthFit klein_growth(Complex A, Complex a0, Complex a1, double lmin, double lmax, std::size_t shells) {
  check_shell_args(lmin, lmax, shells);
  const KleinSequence seq = klein_sequence(A, a0, a1, 2);
  std::vector<double> lengths;
  Complex prev = seq.terms[0], cur = seq.terms[1];
  lengths.push_back(2.0 * std::asinh(std::abs(prev)));
  for (std::size_t guard = 0; guard < 1'000'000; ++guard) {
    const double len = 2.0 * std::asinh(std::abs(cur));
    if (len >= lmax) break;
    lengths.push_back(len);
    const Complex next = A * cur - prev;
    prev = cur;
    cur = next;
  }
  std::sort(lengths.begin(), lengths.end());
  return fit_power_law(shell_counts(lengths, geometric_shells(lmin, lmax, shells)));
}

}  // namespace mql

#endif  // MQL_SPECTRA_HPP
