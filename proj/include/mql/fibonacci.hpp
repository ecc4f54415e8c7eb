#ifndef MQL_FIBONACCI_HPP
#define MQL_FIBONACCI_HPP

// Fibonacci function F_e on 3-cells: 1 on the three cells of a basis edge e,
// and each cell created across an edge pointing away from e gets the sum of
// the three cells it replaces the fourth of.

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "mql/curve_complex.hpp"
#include "mql/error.hpp"

namespace mql {

struct FibonacciCell {
  CellId id{};
  std::uint64_t value = 0;
  std::array<CellId, 3> neighbors{};  // cells met at the creation vertex; unused for basis cells
  bool basis = false;
};

struct FibonacciAssignment {
  std::array<CellId, 3> basisEdge{};
  std::vector<FibonacciCell> cells;  // ascending id

  // Number of cells with F_e = n, for n in [0, maxValue].
  std::vector<std::size_t> level_counts(std::uint64_t maxValue) const {
    std::vector<std::size_t> counts(maxValue + 1, 0);
    for (const auto& c : cells)
      if (c.value <= maxValue) ++counts[c.value];
    return counts;
  }
};

namespace detail {

// Walks outward from both ends of the basis edge. A vertex at distance k from
// the nearer endpoint has depth k + 1; the endpoints hold depth 1. Branches
// whose new value exceeds maxValue are cut, which is exact because F_e grows
// strictly along every ray leaving the edge.
inline FibonacciAssignment fibonacci_walk(const std::array<CellId, 3>& basis, std::size_t depth,
                                          std::uint64_t maxValue) {
  FibonacciAssignment out;
  out.basisEdge = basis;
  std::uint64_t next = 0;
  for (const auto id : basis) {
    out.cells.push_back({id, 1, {}, true});
    next = std::max(next, to_index(id) + 1);
  }
  if (depth == 0) return out;

  struct Vertex {
    std::array<CellId, 4> cells;
    std::array<std::uint64_t, 4> values;
    std::size_t frozen;  // slot that must not be flipped (back toward the edge)
    std::size_t depth;
  };
  auto checked_sum = [](std::uint64_t x, std::uint64_t y) {
    if (x > std::numeric_limits<std::uint64_t>::max() - y) {
      throw BudgetExceeded("Fibonacci value overflows 64 bits; reduce the depth");
    }
    return x + y;
  };

  std::deque<Vertex> queue;
  if (3 > maxValue) return out;
  for (int side = 0; side < 2; ++side) {
    const CellId id = cell_id(next++);
    out.cells.push_back({id, 3, basis, false});
    queue.push_back({{basis[0], basis[1], basis[2], id}, {1, 1, 1, 3}, 3, 1});
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (v.depth >= depth) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == v.frozen) continue;
      std::uint64_t value = 0;
      std::array<CellId, 3> nb{};
      for (std::size_t j = 0, k = 0; j < 4; ++j) {
        if (j == i) continue;
        value = checked_sum(value, v.values[j]);
        nb[k++] = v.cells[j];
      }
      if (value > maxValue) continue;
      const CellId id = cell_id(next++);
      out.cells.push_back({id, value, nb, false});
      Vertex child = v;
      child.cells[i] = id;
      child.values[i] = value;
      child.frozen = i;
      child.depth = v.depth + 1;
      queue.push_back(child);
    }
  }
  return out;
}

}  // namespace detail

/// F_e on every cell created within the given tree depth of the basis edge.
/// Depth 0 gives the basis cells, depth 1 adds the two cells at the edge's
/// endpoints (value 3).
inline FibonacciAssignment fibonacci_values(const std::array<CellId, 3>& basisEdge, std::size_t depth) {
  return detail::fibonacci_walk(basisEdge, depth, std::numeric_limits<std::uint64_t>::max());
}

/// Every cell with F_e <= maxValue, regardless of depth.
inline FibonacciAssignment fibonacci_values_up_to(const std::array<CellId, 3>& basisEdge,
                                                  std::uint64_t maxValue) {
  return detail::fibonacci_walk(basisEdge, std::numeric_limits<std::size_t>::max(), maxValue);
}

/// Jordan's totient J_2(n) = n^2 prod_{p | n} (1 - 1/p^2).
inline std::uint64_t jordan_totient2(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n * n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result = result / (p * p) * (p * p - 1);
  }
  if (m > 1) result = result / (m * m) * (m * m - 1);
  return result;
}

}  // namespace mql

#endif  // MQL_FIBONACCI_HPP
