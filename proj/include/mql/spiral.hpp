#ifndef MQL_SPIRAL_HPP
#define MQL_SPIRAL_HPP

// Values c_n of the cells met in turn around a fixed face {a, b}:
//   c_{n+1} + (2 - ab) c_n + c_{n-1} + 2(a + b) = 0.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mql/error.hpp"
#include "mql/quad.hpp"

namespace mql {

struct SpiralClosedForm {
  Complex A, B, lambda, offset;  // c_n = A lambda^n + B lambda^-n + offset

  Complex at(int n) const { return A * std::pow(lambda, n) + B * std::pow(lambda, -n) + offset; }
};

struct SpiralSequence {
  Complex a, b;
  int n0 = 0;
  std::vector<Complex> terms;  // terms[k] = c_{n0 + k}
  std::optional<SpiralClosedForm> closedForm;

  int n1() const { return n0 + static_cast<int>(terms.size()) - 1; }
  Complex at(int n) const { return terms.at(static_cast<std::size_t>(n - n0)); }
};

/// Residual of the spiral recurrence at interior index n, relative to the
/// largest magnitude involved.
inline double spiral_residual(const SpiralSequence& s, int n) {
  const Complex ab = s.a * s.b;
  const Complex prev = s.at(n - 1), cur = s.at(n), next = s.at(n + 1);
  const Complex r = next + (2.0 - ab) * cur + prev + 2.0 * (s.a + s.b);
  const double scale = std::max({1.0, std::abs(next), std::abs(ab * cur), std::abs(prev)});
  return std::abs(r) / scale;
}

/// Iterates from c0 (index 0) and c1 (index 1) over [n0, n1], which must
/// contain both seeds. The closed form is attached when ab is neither 0 nor 4.
inline SpiralSequence spiral_sequence(Complex a, Complex b, Complex c0, Complex c1, int n0, int n1) {
  if (n0 > 0 || n1 < 1) throw PreconditionViolation("spiral range must contain indices 0 and 1");
  const Complex ab = a * b;
  const Complex k = ab - 2.0;
  const Complex shift = 2.0 * (a + b);

  std::vector<Complex> back{c1, c0};  // c_1, c_0, c_-1, ...
  for (int n = 0; n > n0; --n) {
    const std::size_t i = back.size();
    back.push_back(k * back[i - 1] - back[i - 2] - shift);
  }
  SpiralSequence s{a, b, n0, {back.rbegin(), back.rend() - 1}, std::nullopt};
  s.terms.push_back(c1);
  for (int n = 1; n < n1; ++n) {
    const std::size_t i = s.terms.size();
    s.terms.push_back(k * s.terms[i - 1] - s.terms[i - 2] - shift);
  }

  if (std::abs(ab) > 1e-12 && std::abs(ab - 4.0) > 1e-12) {
    const Complex lambda = (k + std::sqrt(ab * (ab - 4.0))) / 2.0;
    const Complex offset = -shift / (4.0 - ab);
    const Complex u0 = c0 - offset, u1 = c1 - offset;
    const Complex A = (u1 - u0 / lambda) / (lambda - 1.0 / lambda);
    s.closedForm = SpiralClosedForm{A, u0 - A, lambda, offset};
  }
  return s;
}

}  // namespace mql

#endif  // MQL_SPIRAL_HPP
