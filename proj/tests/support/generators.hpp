#ifndef MQL_TESTS_GENERATORS_HPP
#define MQL_TESTS_GENERATORS_HPP

// Hand-rolled random inputs for the property tests. All generators take an
// explicit engine so every test is reproducible from its seed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "mql/mql.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Positive real quad from a point of the horocyclic simplex, drawn by
/// normalising four exponentials (independent of the library sampler).
/// Raising hmin keeps the entries in a moderate range.
inline mql::MarkoffQuad fuchsian(Rng& rng, double hmin = 1e-6) {
  std::array<double, 4> h{};
  for (;;) {
    double s = 0.0;
    for (auto& v : h) s += v = -std::log(uniform(rng, 1e-300, 1.0));
    bool ok = true;
    for (auto& v : h) {
      v /= s;
      ok = ok && v > hmin && std::abs(v - 0.5) > 1e-6;
    }
    if (ok) break;
  }
  const double p = h[0] * h[1] * h[2] * h[3];
  return {h[0] / std::sqrt(p), h[1] / std::sqrt(p), h[2] / std::sqrt(p), h[3] / std::sqrt(p)};
}

/// (a, b, c) from a complex box, d a root of the completion quadratic.
inline mql::MarkoffQuad complex_quad(Rng& rng, double box = 6.0) {
  mql::Complex a{uniform(rng, -box, box), uniform(rng, -box, box)};
  mql::Complex b{uniform(rng, -box, box), uniform(rng, -box, box)};
  mql::Complex c{uniform(rng, -box, box), uniform(rng, -box, box)};
  const auto roots = mql::complete_quad(a, b, c);
  return {a, b, c, uniform_int(rng, 0, 1) ? roots.d : roots.dPrime};
}

/// Small complex deformation of a reduced quad: a, b, c move by up to `eps`
/// in each coordinate, d follows the root nearest its old value.
inline mql::MarkoffQuad perturbed(Rng& rng, const mql::MarkoffQuad& q, double eps) {
  mql::MarkoffQuad r = q;
  for (int i = 0; i < 3; ++i) r[i] += mql::Complex{uniform(rng, -eps, eps), uniform(rng, -eps, eps)};
  const auto roots = mql::complete_quad(r[0], r[1], r[2]);
  r[3] = std::abs(roots.d - q[3]) <= std::abs(roots.dPrime - q[3]) ? roots.d : roots.dPrime;
  return r;
}

/// Reduced flip word (no letter repeated back to back).
inline mql::FlipWord reduced_word(Rng& rng, int length) {
  mql::FlipWord w;
  while (static_cast<int>(w.size()) < length) {
    const auto i = static_cast<std::uint8_t>(uniform_int(rng, 0, 3));
    if (w.empty() || w.back() != i) w.push_back(i);
  }
  return w;
}

inline mql::McgWord mcg_word(Rng& rng, int length) {
  mql::McgWord w;
  for (int k = 0; k < length; ++k) w.push_back(static_cast<mql::McgLetter>(uniform_int(rng, 0, 6)));
  return w;
}

/// Connected subtree containing the root, grown by attaching random
/// non-backtracking children to random existing vertices.
inline std::set<mql::FlipWord> subtree(Rng& rng, int size) {
  std::vector<mql::FlipWord> vertices{{}};
  std::set<mql::FlipWord> tree{{}};
  while (static_cast<int>(tree.size()) < size) {
    mql::FlipWord w = vertices[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(vertices.size()) - 1))];
    const auto i = static_cast<std::uint8_t>(uniform_int(rng, 0, 3));
    if (!w.empty() && w.back() == i) continue;
    w.push_back(i);
    if (tree.insert(w).second) vertices.push_back(w);
  }
  return tree;
}

/// 2x2 complex matrix with entries in the box [-r, r]^2.
inline mql::Matrix2 matrix(Rng& rng, double r = 2.0) {
  auto z = [&] { return mql::Complex{uniform(rng, -r, r), uniform(rng, -r, r)}; };
  return {z(), z(), z(), z()};
}

}  // namespace gen

#endif  // MQL_TESTS_GENERATORS_HPP
