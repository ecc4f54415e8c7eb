#ifndef MQL_COORDS_HPP
#define MQL_COORDS_HPP

// Teichmüller coordinates for positive real quads (lambda lengths and
// horocyclic coordinates) and the mapping class group action.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mql/error.hpp"
#include "mql/integral.hpp"
#include "mql/quad.hpp"

namespace mql {

namespace detail {

inline std::array<double, 4> positive_entries(const MarkoffQuad& q, double tol) {
  std::array<double, 4> x{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(q[i].real() > 0.0) || std::abs(q[i].imag()) > tol * std::max(1.0, std::abs(q[i]))) {
      throw PreconditionViolation("coordinates need a positive real quad");
    }
    x[i] = q[i].real();
  }
  return x;
}

}  // namespace detail

struct LambdaCoords {
  std::array<double, 3> lambda{};
  std::array<double, 3> mu{};
};

/// (sqrt bc, sqrt ac, sqrt ab, sqrt ad, sqrt bd, sqrt cd).
inline LambdaCoords quad_to_lambda(const MarkoffQuad& q, double tol = kDefaultTol) {
  const auto [a, b, c, d] = detail::positive_entries(q, tol);
  return {{std::sqrt(b * c), std::sqrt(a * c), std::sqrt(a * b)},
          {std::sqrt(a * d), std::sqrt(b * d), std::sqrt(c * d)}};
}

inline MarkoffQuad lambda_to_quad(const LambdaCoords& x) {
  for (double v : x.lambda)
    if (!(v > 0.0)) throw PreconditionViolation("lambda lengths must be positive");
  for (double v : x.mu)
    if (!(v > 0.0)) throw PreconditionViolation("lambda lengths must be positive");
  const auto& [l1, l2, l3] = x.lambda;
  const auto& [m1, m2, m3] = x.mu;
  (void)m3;
  return {l2 * l3 / l1, l1 * l3 / l2, l1 * l2 / l3, m1 * m2 / l3};
}

/// Relative residuals of the three simplex equations
///   m1 m2 m3 + m1 l2 l3 + l1 m2 l3 + l1 l2 m3 = l1 l2 m1 m2   (and cyclic).
inline std::array<double, 3> simplex_residuals(const LambdaCoords& x) {
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = k, j = (k + 1) % 3, m = (k + 2) % 3;
    const double l1 = x.lambda[i], l2 = x.lambda[j], l3 = x.lambda[m];
    const double m1 = x.mu[i], m2 = x.mu[j], m3 = x.mu[m];
    const double lhs = m1 * m2 * m3 + m1 * l2 * l3 + l1 * m2 * l3 + l1 * l2 * m3;
    const double rhs = l1 * l2 * m1 * m2;
    out[k] = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
  }
  return out;
}

struct HorocyclicCoords {
  std::array<double, 4> h{};
  double sum() const { return h[0] + h[1] + h[2] + h[3]; }
};

/// H_i = q_i / (a+b+c+d).
inline HorocyclicCoords quad_to_horocyclic(const MarkoffQuad& q, double tol = kDefaultTol) {
  const auto x = detail::positive_entries(q, tol);
  const double s = x[0] + x[1] + x[2] + x[3];
  return {{x[0] / s, x[1] / s, x[2] / s, x[3] / s}};
}

/// a = sqrt(H_a / (H_b H_c H_d)) and cyclic.
inline MarkoffQuad horocyclic_to_quad(const HorocyclicCoords& H, double tol = kDefaultTol) {
  for (double v : H.h)
    if (!(v > 0.0)) throw PreconditionViolation("horocyclic coordinates must be positive");
  if (std::abs(H.sum() - 1.0) > tol) throw PreconditionViolation("horocyclic coordinates must sum to 1");
  const double p = H.h[0] * H.h[1] * H.h[2] * H.h[3];
  MarkoffQuad q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = std::sqrt(H.h[i] * H.h[i] / p);
  return q;
}

struct DomainTest {
  bool inside = false;
  std::array<bool, 4> walls{};  // H_i within tol of 1/2
};

/// Inside when every H_i <= 1/2 + tol; the walls H_i = 1/2 are fixed by flips.
inline DomainTest in_fundamental_domain(const HorocyclicCoords& H, double tol = kDefaultTol) {
  DomainTest t{true, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    t.inside = t.inside && H.h[i] <= 0.5 + tol;
    t.walls[i] = std::abs(H.h[i] - 0.5) <= tol;
  }
  return t;
}

/// Uniform point of the open simplex, kept off the faces and the H_i = 1/2
/// walls by 1e-6.
template <class Rng>
HorocyclicCoords sample_horocyclic(Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  for (;;) {
    HorocyclicCoords H;
    for (auto& v : H.h) v = exp1(rng);
    const double s = H.sum();
    for (auto& v : H.h) v /= s;
    const bool ok = std::all_of(H.h.begin(), H.h.end(),
                                [](double v) { return v >= 1e-6 && std::abs(v - 0.5) >= 1e-6; });
    if (ok) return H;
  }
}

template <class Rng>
MarkoffQuad sample_fuchsian(Rng& rng) {
  return horocyclic_to_quad(sample_horocyclic(rng));
}

// ---------------------------------------------------------------------------
// Mapping class group

enum class McgLetter { F1, F2, F3, F4, P1, P2, P3 };
using McgWord = std::vector<McgLetter>;

inline std::string to_string(McgLetter l) {
  static constexpr std::array<const char*, 7> names{"f1", "f2", "f3", "f4", "p1", "p2", "p3"};
  return names[static_cast<std::size_t>(l)];
}

inline std::string to_string(const McgWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(w[i]);
  return s;
}

/// Letters f1..f4, p1..p3 (also "phi1".."phi3"), and g = p1, h = p2, separated
/// by optional spaces, commas or dots.
inline McgWord parse_mcg_word(std::string_view text) {
  McgWord w;
  std::size_t i = 0;
  auto digit = [&](int lo, int hi) {
    if (i >= text.size() || text[i] < '0' + lo || text[i] > '0' + hi) {
      throw std::invalid_argument("bad mapping class word near position " + std::to_string(i));
    }
    return text[i++] - '0';
  };
  while (i < text.size()) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    if (ch == ' ' || ch == ',' || ch == '.' || ch == '*') {
      ++i;
    } else if (ch == 'f') {
      ++i;
      w.push_back(static_cast<McgLetter>(digit(1, 4) - 1));
    } else if (ch == 'p') {
      ++i;
      if (text.substr(i, 2) == "hi") i += 2;
      w.push_back(static_cast<McgLetter>(3 + digit(1, 3)));
    } else if (text.substr(i, 2) == "\xCF\x86") {  // UTF-8 phi
      i += 2;
      w.push_back(static_cast<McgLetter>(3 + digit(1, 3)));
    } else if (ch == 'g') {
      ++i;
      w.push_back(McgLetter::P1);
    } else if (ch == 'h') {
      ++i;
      w.push_back(McgLetter::P2);
    } else {
      throw std::invalid_argument("bad mapping class word near position " + std::to_string(i));
    }
  }
  return w;
}

namespace detail {

template <class Q>
Q permute(const Q& q, std::array<std::size_t, 4> from) {
  return Q{q[from[0]], q[from[1]], q[from[2]], q[from[3]]};
}

inline MarkoffQuad flip_any(const MarkoffQuad& q, std::size_t i) { return flip(q, i); }
inline integral::IntegerQuad flip_any(const integral::IntegerQuad& q, std::size_t i) {
  return integral::int_flip(q, i);
}

}  // namespace detail

/// Applies the letters right to left: p1 = (b,a,d,c), p2 = (c,d,a,b),
/// p3 = (d,c,b,a), f_i flips entry i.
template <class Q>
Q mcg_apply(const McgWord& w, Q q) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (*it) {
      case McgLetter::F1: q = detail::flip_any(q, 0); break;
      case McgLetter::F2: q = detail::flip_any(q, 1); break;
      case McgLetter::F3: q = detail::flip_any(q, 2); break;
      case McgLetter::F4: q = detail::flip_any(q, 3); break;
      case McgLetter::P1: q = detail::permute(q, {1, 0, 3, 2}); break;
      case McgLetter::P2: q = detail::permute(q, {2, 3, 0, 1}); break;
      case McgLetter::P3: q = detail::permute(q, {3, 2, 1, 0}); break;
    }
  }
  return q;
}

struct RelationCheck {
  std::string lhs, rhs;
  double maxDeviation = 0.0;
};

struct McgRelationReport {
  std::size_t samples = 0;
  std::vector<RelationCheck> relations;
  double maxDeviation = 0.0;

  bool passed(double tol = kDefaultTol) const { return maxDeviation <= tol; }
};

/// Checks f_i^2 = g^2 = h^2 = 1, gh = hg, g f1 g = f2, h f1 h = f3, g f3 g = f4
/// with g = p1, h = p2, as maps on (4,4,4,4) plus `sampleCount` random
/// Fuchsian quads. Deviations are relative to max(1, |entry|).
inline McgRelationReport mcg_relations_check(std::size_t sampleCount, unsigned seed = 1) {
  static const std::vector<std::pair<std::string, std::string>> kRelations{
      {"f1 f1", ""},       {"f2 f2", ""},    {"f3 f3", ""},    {"f4 f4", ""},
      {"g g", ""},         {"h h", ""},      {"g h", "h g"},   {"g h", "p3"},
      {"g f1 g", "f2"},    {"h f1 h", "f3"}, {"g f3 g", "f4"},
  };
  std::vector<MarkoffQuad> quads{{4.0, 4.0, 4.0, 4.0}};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < sampleCount; ++k) quads.push_back(sample_fuchsian(rng));

  McgRelationReport report;
  report.samples = quads.size();
  for (const auto& [lhs, rhs] : kRelations) {
    RelationCheck check{lhs, rhs.empty() ? "1" : rhs, 0.0};
    const McgWord wl = parse_mcg_word(lhs), wr = parse_mcg_word(rhs);
    for (const auto& q : quads) {
      const MarkoffQuad x = mcg_apply(wl, q), y = mcg_apply(wr, q);
      for (std::size_t i = 0; i < 4; ++i) {
        check.maxDeviation = std::max(check.maxDeviation, std::abs(x[i] - y[i]) / std::max(1.0, std::abs(y[i])));
      }
    }
    report.maxDeviation = std::max(report.maxDeviation, check.maxDeviation);
    report.relations.push_back(std::move(check));
  }
  return report;
}

}  // namespace mql

#endif  // MQL_COORDS_HPP
