#ifndef MQL_KLEIN_HPP
#define MQL_KLEIN_HPP

// One-sided curve sequence of a once-punctured Klein bottle:
// a_i^2 + a_{i+1}^2 - a_i a_{i+1} A = -1 with A = 2 cosh(l/2) the trace of the
// unique two-sided curve and a_i = sinh(l_i / 2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mql/quad.hpp"

namespace mql {

/// x^2 + y^2 - xyA + 1; zero for consecutive terms. Works for any field type.
template <class T>
T klein_relation(const T& A, const T& x, const T& y) {
  return x * x + y * y - x * y * A + T(1);
}

/// Extend (a0, a1) to n terms with a_{i+1} = A a_i - a_{i-1}.
template <class T>
std::vector<T> klein_terms(const T& A, const T& a0, const T& a1, std::size_t n) {
  std::vector<T> terms;
  terms.reserve(n);
  if (n > 0) terms.push_back(a0);
  if (n > 1) terms.push_back(a1);
  while (terms.size() < n) {
    const std::size_t i = terms.size();
    terms.push_back(A * terms[i - 1] - terms[i - 2]);
  }
  return terms;
}

struct KleinSequence {
  Complex A;
  std::vector<Complex> terms;
  Complex lambdaPlus;
  Complex lambdaMinus;
};

inline double klein_relative_residual(Complex A, Complex x, Complex y) {
  const double scale = std::max({1.0, std::norm(x), std::norm(y), std::abs(x * y * A)});
  return std::abs(klein_relation(A, x, y)) / scale;
}

inline KleinSequence klein_sequence(Complex A, Complex a0, Complex a1, std::size_t n,
                                    double tol = kDefaultTol) {
  if (!(klein_relative_residual(A, a0, a1) <= tol)) {
    throw InvalidQuad("Klein seed pair violates a0^2 + a1^2 - a0 a1 A = -1");
  }
  // Roots of l^2 - A l + 1, the larger-magnitude one first.
  const Complex root_disc = std::sqrt(A * A - 4.0);
  Complex plus = (A + root_disc) / 2.0;
  Complex minus = (A - root_disc) / 2.0;
  if (std::abs(minus) > std::abs(plus)) std::swap(plus, minus);
  minus = 1.0 / plus;
  return {A, klein_terms(A, a0, a1, n), plus, minus};
}

}  // namespace mql

#endif  // MQL_KLEIN_HPP
