#ifndef MQL_REPRESENTATION_HPP
#define MQL_REPRESENTATION_HPP

// Explicit SL^{+-}(2,C) representations of F_3 = <A1, A2, A3> realising a
// Markoff quad: det Ai = -1, tr A1A2 = tr A2A3 = tr A3A1 = 2,
// (tr A1, tr A2, tr A3) = (a, b, c) and tr (A1A2A3)^{-1} = d.

#include <algorithm>
#include <array>
#include <cmath>

#include "mql/quad.hpp"

namespace mql {

struct Matrix2 {
  Complex m00{}, m01{}, m10{}, m11{};

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex trace() const { return m00 + m11; }
  Complex det() const { return m00 * m11 - m01 * m10; }

  Matrix2 inverse() const {
    const Complex dt = det();
    if (dt == Complex{}) throw PreconditionViolation("singular matrix");
    return {m11 / dt, -m01 / dt, -m10 / dt, m00 / dt};
  }

  double max_abs() const {
    return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
  }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }

  friend Matrix2 operator*(Complex s, const Matrix2& x) {
    return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
  }
};

using Representation = std::array<Matrix2, 3>;

namespace detail {

// Zero-trace generator form for a quad (0, b, c, -(b+c)).
inline Representation zero_first_representation(Complex b, Complex c) {
  return {Matrix2{0.0, 1.0, 1.0, 0.0}, Matrix2{b, 1.0, 1.0, 0.0}, Matrix2{0.0, 1.0, 1.0, c}};
}

}  // namespace detail

/// Generator matrices for a valid quad.
///
/// Nowhere-zero quads use the scaled closed form. A zero entry
/// is moved into the first slot by relabelling generators: cyclically among
/// A1, A2, A3 for zeros in slots 1 and 2, and for a zero in slot 3 through
/// (A1, A2, A3) = (N1 N2^{-1} N3^{-1}, N3, N3^{-1} N2 N3) where N realises
/// (d, c, b, a).
inline Representation build_representation(const MarkoffQuad& q, double tol = kDefaultTol) {
  require_valid(q, tol);
  const double zero_tol = tol * (1.0 + q.scale());
  const Complex a = q[0], b = q[1], c = q[2], d = q[3];

  if (std::abs(a) <= zero_tol) return detail::zero_first_representation(b, c);
  if (std::abs(b) <= zero_tol) {
    const auto n = detail::zero_first_representation(c, a);  // realises (0, c, a, .)
    return {n[2], n[0], n[1]};
  }
  if (std::abs(c) <= zero_tol) {
    const auto n = detail::zero_first_representation(a, b);  // realises (0, a, b, .)
    return {n[1], n[2], n[0]};
  }
  if (std::abs(d) <= zero_tol) {
    // N realises the quad (d, c, b, a) with d = 0 in the first slot.
    const auto n = detail::zero_first_representation(c, b);
    const Matrix2 n2i = n[1].inverse();
    const Matrix2 n3i = n[2].inverse();
    return {n[0] * n2i * n3i, n[2], n3i * n[1] * n[2]};
  }

  // The closed form realises the flipped root as tr (A1A2A3)^{-1}, so it is
  // evaluated at (a, b, c, d') to return d in the fourth slot.
  const Complex dp = a * b * c - 2.0 * (a + b + c) - d;
  const Complex s = a + b + c + dp;
  const Complex k = 1.0 / s;
  return {k * Matrix2{a * b, b * (a + c), a * (a + dp), a * (a + c + dp)},
          k * Matrix2{a * b, -b * (b + dp), -a * (b + c), b * (b + c + dp)},
          k * Matrix2{a * b + c * s, b * (a + c), -a * (b + c), -a * b}};
}

/// Quad (tr A1, tr A2, tr A3, tr (A1A2A3)^{-1}) induced by three matrices.
inline MarkoffQuad induced_quad(const Representation& r) {
  return {r[0].trace(), r[1].trace(), r[2].trace(), (r[0] * r[1] * r[2]).inverse().trace()};
}

/// Residual of Fricke's relation for (A1, A2, A3) with A0 = A1A2A3, divided
/// by max(1, largest monomial magnitude).
inline double fricke_residual(const Matrix2& a1, const Matrix2& a2, const Matrix2& a3) {
  const std::array<Matrix2, 3> m{a1, a2, a3};
  const Matrix2 a0 = a1 * a2 * a3;
  const Complex t0 = a0.trace();
  std::array<Complex, 3> t{}, dt{};
  for (int i = 0; i < 3; ++i) {
    t[i] = m[i].trace();
    dt[i] = m[i].det();
  }
  // Pair traces and determinants indexed by the missing generator.
  std::array<Complex, 3> tp{}, dp{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    tp[i] = (m[j] * m[k]).trace();
    dp[i] = (m[j] * m[k]).det();
  }

  double scale = 1.0;
  auto term = [&scale](Complex x) {
    scale = std::max(scale, std::abs(x));
    return x;
  };

  const Complex lhs = term(4.0 * a0.det());
  Complex rhs = term(t0 * t0) + term(t[0] * t[1] * t[2] * t0) + term(tp[0] * tp[1] * tp[2]);
  // Both orderings of (j, k) contribute identical terms; the factor 1/2 of the
  // symmetric sum cancels against that duplication.
  for (int i = 0; i < 3; ++i) {
    rhs += term(t[i] * t[i] * dp[i]);
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    rhs -= term(dt[i] * t[j] * t[k] * tp[i]);
    rhs += term(dt[i] * tp[i] * tp[i]);
    rhs -= term(t0 * t[i] * tp[i]);
  }
  return std::abs(lhs - rhs) / scale;
}

}  // namespace mql

#endif  // MQL_REPRESENTATION_HPP
