#ifndef MQL_QUAD_HPP
#define MQL_QUAD_HPP

// Markoff quads: complex 4-tuples (a,b,c,d) with (a+b+c+d)^2 = abcd.
//
// Entries are traces of four pairwise once-intersecting one-sided curves,
// a = 2 sinh(l/2) for complex length l. Indices are 0-based throughout the
// library; the CLI translates to the 1-based f1..f4 convention.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

#include "mql/error.hpp"

namespace mql {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

struct MarkoffQuad {
  std::array<Complex, 4> v{};

  constexpr MarkoffQuad() = default;
  constexpr MarkoffQuad(Complex a, Complex b, Complex c, Complex d) : v{a, b, c, d} {}

  Complex& operator[](std::size_t i) { return v[i]; }
  const Complex& operator[](std::size_t i) const { return v[i]; }

  Complex sum() const { return v[0] + v[1] + v[2] + v[3]; }
  Complex product() const { return v[0] * v[1] * v[2] * v[3]; }

  // Largest entry magnitude.
  double scale() const {
    double s = 0.0;
    for (const auto& z : v) s = std::max(s, std::abs(z));
    return s;
  }

  bool is_real(double tol = 0.0) const {
    return std::all_of(v.begin(), v.end(), [tol](const Complex& z) {
      return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z));
    });
  }

  friend bool operator==(const MarkoffQuad&, const MarkoffQuad&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const MarkoffQuad& q) {
  return os << '(' << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ')';
}

namespace detail {
inline std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}
}  // namespace detail

/// Relative residual |(a+b+c+d)^2 - abcd| / max(1, |abcd|).
inline double relation_residual(const MarkoffQuad& q) {
  const Complex s = q.sum();
  const Complex p = q.product();
  return std::abs(s * s - p) / std::max(1.0, std::abs(p));
}

/// Same as relation_residual; the caller compares against its tolerance.
inline double verify_quad(const MarkoffQuad& q) { return relation_residual(q); }

inline bool is_valid(const MarkoffQuad& q, double tol = kDefaultTol) {
  return relation_residual(q) <= tol;
}

inline void require_valid(const MarkoffQuad& q, double tol = kDefaultTol) {
  const double r = relation_residual(q);
  if (!(r <= tol)) {
    throw InvalidQuad("quad relation violated: relative residual " + detail::short_double(r));
  }
}

inline Complex flipped_value(const MarkoffQuad& q, std::size_t i) {
  Complex prod{1.0, 0.0};
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < 4; ++j) {
    if (j == i) continue;
    prod *= q[j];
    sum += q[j];
  }
  return prod - 2.0 * sum - q[i];
}

/// Replace entry i by the other root of its completion quadratic.
inline MarkoffQuad flip(const MarkoffQuad& q, std::size_t i) {
  MarkoffQuad r = q;
  r[i] = flipped_value(q, i);
  return r;
}

struct QuadCompletion {
  Complex d;       // smaller magnitude root
  Complex dPrime;  // larger magnitude root
};

namespace detail {

inline bool lex_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

}  // namespace detail

/// Both roots of x^2 + (2a+2b+2c-abc)x + (a+b+c)^2. The larger-magnitude root
/// is reported as dPrime; equal magnitudes are ordered lexicographically by
/// (re, im).
inline QuadCompletion complete_quad(Complex a, Complex b, Complex c) {
  const Complex s = a + b + c;
  const Complex abc = a * b * c;
  const Complex linear = 2.0 * s - abc;
  // Discriminant linear^2 - 4 s^2, factored to avoid cancellation.
  const Complex root_disc = std::sqrt(abc * (abc - 4.0 * s));
  const Complex plus = -linear + root_disc;
  const Complex minus = -linear - root_disc;
  const Complex big = std::abs(plus) >= std::abs(minus) ? plus / 2.0 : minus / 2.0;
  const Complex small = big == Complex{} ? Complex{} : (s * s) / big;

  const double mb = std::abs(big), ms = std::abs(small);
  if (std::abs(mb - ms) <= 1e-12 * std::max(1.0, mb)) {
    return detail::lex_less(big, small) ? QuadCompletion{big, small} : QuadCompletion{small, big};
  }
  return mb > ms ? QuadCompletion{small, big} : QuadCompletion{big, small};
}

/// Trace e = ab - 2 of the two-sided curve disjoint from a once-intersecting pair.
inline Complex two_sided_trace(Complex a, Complex b) { return a * b - 2.0; }

/// Complex length l with 2 sinh(l/2) = a and Re(l) >= 0.
///
/// When the principal arcsinh has negative real part the length is taken as
/// 2(i*pi - arcsinh(a/2)), which has the same sinh and positive real part.
inline Complex one_sided_length(Complex a) {
  if (a == Complex{}) {
    throw PreconditionViolation("one-sided trace 0 has no length (degenerate class)");
  }
  const Complex w = std::asinh(a / 2.0);
  if (w.real() >= 0.0) return 2.0 * w;
  return 2.0 * (Complex{0.0, std::numbers::pi} - w);
}

inline Complex trace_from_length(Complex length) { return 2.0 * std::sinh(length / 2.0); }

/// Distance from z to the real segment [lo, hi].
inline double distance_to_segment(Complex z, double lo, double hi) {
  const double x = std::clamp(z.real(), lo, hi);
  return std::abs(z - Complex{x, 0.0});
}

/// Complex length l = 2 arccosh(e/2) (principal branch, Re(l) >= 0) of a
/// two-sided class with trace e. Traces in the real segment [-2, 2] are
/// parabolic or elliptic and rejected.
inline Complex two_sided_length(Complex e, double tol = kDefaultTol) {
  if (distance_to_segment(e, -2.0, 2.0) <= tol) {
    throw PreconditionViolation("two-sided trace lies in [-2,2] (elliptic or parabolic class)");
  }
  return 2.0 * std::acosh(e / 2.0);
}

inline Complex two_sided_trace_from_length(Complex length) {
  return 2.0 * std::cosh(length / 2.0);
}

// Solutions of a1^2 + a2^2 + a3^2 + a4^2 = a1 a2 a3 a4.
using HurwitzSolution = std::array<Complex, 4>;

inline double hurwitz_residual(const HurwitzSolution& x) {
  Complex squares{}, prod{1.0, 0.0};
  for (const auto& z : x) {
    squares += z * z;
    prod *= z;
  }
  return std::abs(squares - prod) / std::max(1.0, std::abs(prod));
}

inline MarkoffQuad hurwitz_to_quad(const HurwitzSolution& x, double tol = kDefaultTol) {
  if (!(hurwitz_residual(x) <= tol)) {
    throw InvalidQuad("Markoff-Hurwitz relation violated");
  }
  return {x[0] * x[0], x[1] * x[1], x[2] * x[2], x[3] * x[3]};
}

/// Principal square roots; one representative of the sign orbit, not a
/// canonical choice. The first root is negated when the principal choice
/// lands on sum-of-squares = -product instead.
inline HurwitzSolution quad_to_hurwitz(const MarkoffQuad& q) {
  HurwitzSolution x{std::sqrt(q[0]), std::sqrt(q[1]), std::sqrt(q[2]), std::sqrt(q[3])};
  const Complex squares = q.sum();
  const Complex prod = x[0] * x[1] * x[2] * x[3];
  if (std::abs(squares - prod) > std::abs(squares + prod)) x[0] = -x[0];
  return x;
}

}  // namespace mql

#endif  // MQL_QUAD_HPP
