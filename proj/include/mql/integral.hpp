#ifndef MQL_INTEGRAL_HPP
#define MQL_INTEGRAL_HPP

// Positive integer Markoff quads in exact arithmetic. Every one of them is
// carried by flips and permutations to one of eight reduced quads.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mql/curve_complex.hpp"
#include "mql/error.hpp"

namespace mql::integral {

using BigInt = boost::multiprecision::cpp_int;

struct IntegerQuad {
  std::array<BigInt, 4> v;

  IntegerQuad() = default;
  IntegerQuad(BigInt a, BigInt b, BigInt c, BigInt d) : v{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  BigInt& operator[](std::size_t i) { return v[i]; }
  const BigInt& operator[](std::size_t i) const { return v[i]; }

  BigInt sum() const { return v[0] + v[1] + v[2] + v[3]; }
  BigInt product() const { return v[0] * v[1] * v[2] * v[3]; }

  IntegerQuad sorted() const {
    IntegerQuad s = *this;
    std::sort(s.v.begin(), s.v.end());
    return s;
  }

  friend bool operator==(const IntegerQuad&, const IntegerQuad&) = default;
  friend bool operator<(const IntegerQuad& x, const IntegerQuad& y) { return x.v < y.v; }
};

inline std::ostream& operator<<(std::ostream& os, const IntegerQuad& q) {
  return os << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3];
}

inline std::string to_string(const IntegerQuad& q) {
  return q[0].str() + "," + q[1].str() + "," + q[2].str() + "," + q[3].str();
}

inline bool is_valid(const IntegerQuad& q) {
  const BigInt s = q.sum();
  return s * s == q.product();
}

inline bool is_positive(const IntegerQuad& q) {
  return std::all_of(q.v.begin(), q.v.end(), [](const BigInt& x) { return x > 0; });
}

inline void require_valid(const IntegerQuad& q) {
  if (!is_valid(q)) throw InvalidQuad("integer quad violates (a+b+c+d)^2 = abcd");
}

inline BigInt flipped_value(const IntegerQuad& q, std::size_t i) {
  BigInt prod = 1, sum = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j == i) continue;
    prod *= q[j];
    sum += q[j];
  }
  return prod - 2 * sum - q[i];
}

inline IntegerQuad int_flip(const IntegerQuad& q, std::size_t i) {
  IntegerQuad r = q;
  r[i] = flipped_value(q, i);
  return r;
}

struct IntReduction {
  IntegerQuad quad;  // sorted ascending
  FlipWord word;
};

/// Flips the largest entry (lowest index among equals) while that strictly
/// decreases it. A tie d' = d is terminal.
inline IntReduction int_reduce(const IntegerQuad& q) {
  require_valid(q);
  if (!is_positive(q)) throw PreconditionViolation("int_reduce needs positive entries");
  IntReduction r{q, {}};
  for (;;) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (r.quad[i] > r.quad[top]) top = i;
    BigInt next = flipped_value(r.quad, top);
    if (!(next < r.quad[top])) break;
    r.quad[top] = std::move(next);
    r.word.push_back(static_cast<std::uint8_t>(top));
  }
  r.quad = r.quad.sorted();
  return r;
}

// ---------------------------------------------------------------------------
// The eight reduced quads

// Per-a search ranges from the classification argument: b spans the values
// with 5 <= ab <= 36 and b >= a, and d is capped by the tabulated bound.
struct CaseBounds {
  std::int64_t a, bMin, bMax, dMax;
};

inline constexpr std::array<CaseBounds, 4> kCaseTable{{
    {1, 5, 36, 337},
    {2, 3, 18, 101},
    {3, 3, 12, 40},
    {4, 4, 9, 26},
}};

/// Largest d allowed by (a + bMax + 2d)^2 >= a bMin d (d - a - bMax), which any
/// reduced quad a <= b <= c <= d <= a+b+c with b in [bMin, bMax] satisfies
/// (use c <= d on the left and c >= d - a - b on the right).
inline std::int64_t derived_d_bound(std::int64_t a, std::int64_t bMin, std::int64_t bMax) {
  const std::int64_t k = a + bMax;
  std::int64_t d = 0;
  while ((k + 2 * (d + 1)) * (k + 2 * (d + 1)) >= a * bMin * (d + 1) * (d + 1 - k)) ++d;
  return d;
}

/// Exhaustive search over the case table, returning sorted reduced quads in
/// lexicographic order.
inline std::vector<IntegerQuad> enumerate_fundamental() {
  std::vector<IntegerQuad> out;
  for (const auto& row : kCaseTable) {
    const std::int64_t a = row.a;
    for (std::int64_t b = std::max(row.bMin, a); b <= row.bMax; ++b) {
      if (a * b < 5 || a * b > 36) continue;
      for (std::int64_t d = b; d <= row.dMax; ++d) {
        for (std::int64_t c = std::max(b, d - a - b); c <= d; ++c) {
          const std::int64_t s = a + b + c + d;
          if (s * s == a * b * c * d) out.emplace_back(a, b, c, d);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline const std::vector<IntegerQuad>& fundamental_quads() {
  static const std::vector<IntegerQuad> table = enumerate_fundamental();
  return table;
}

struct Classification {
  IntegerQuad root;
  FlipWord word;
};

inline Classification classify(const IntegerQuad& q) {
  IntReduction r = int_reduce(q);
  const auto& table = fundamental_quads();
  if (std::find(table.begin(), table.end(), r.quad) == table.end()) {
    throw InvalidQuad("reduced quad " + to_string(r.quad) + " is not one of the eight fundamental quads");
  }
  return {std::move(r.quad), std::move(r.word)};
}

/// Every positive integer quad (as a sorted tuple) with all entries <= bound.
/// Reduction never raises an entry, so the flip closure of the roots pruned at
/// the bound reaches all of them.
inline std::vector<IntegerQuad> enumerate_integral_below(const BigInt& bound) {
  if (bound < 4) throw PreconditionViolation("enumerate_integral_below needs B >= 4");
  std::set<IntegerQuad> seen;
  std::deque<IntegerQuad> queue;
  for (const auto& root : fundamental_quads()) {
    if (root[3] <= bound && seen.insert(root).second) queue.push_back(root);
  }
  while (!queue.empty()) {
    const IntegerQuad q = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < 4; ++i) {
      const BigInt v = flipped_value(q, i);
      if (v > bound || v <= 0) continue;
      IntegerQuad next = q;
      next[i] = v;
      next = next.sorted();
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace mql::integral

#endif  // MQL_INTEGRAL_HPP
