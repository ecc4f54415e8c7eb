#ifndef MQL_CURVE_COMPLEX_HPP
#define MQL_CURVE_COMPLEX_HPP

// The 4-regular tree of Markoff quads. Vertices are quads, edges are flips,
// 3-cells are one-sided curve classes (identified by discovery ids, never by
// value) and 2-cells are once-intersecting pairs of 3-cells.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mql/error.hpp"
#include "mql/quad.hpp"

namespace mql {

enum class CellId : std::uint64_t {};

constexpr std::uint64_t to_index(CellId id) { return static_cast<std::uint64_t>(id); }
constexpr CellId cell_id(std::uint64_t i) { return static_cast<CellId>(i); }

// Flip indices (0-based) in application order.
using FlipWord = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultMaxCells = 2'000'000;
inline constexpr std::size_t kDefaultMaxSteps = 100'000;

struct ComplexNode {
  std::array<CellId, 4> cells{};
  MarkoffQuad values;
  std::optional<std::size_t> parentMove;
  std::size_t depth = 0;
};

inline ComplexNode root_node(const MarkoffQuad& q, double tol = kDefaultTol) {
  require_valid(q, tol);
  return {{cell_id(0), cell_id(1), cell_id(2), cell_id(3)}, q, std::nullopt, 0};
}

inline ComplexNode apply_flip(const ComplexNode& node, std::size_t i, CellId next) {
  ComplexNode child = node;
  child.values = flip(node.values, i);
  child.cells[i] = next;
  child.parentMove = i;
  child.depth = node.depth + 1;
  return child;
}

inline MarkoffQuad apply_word(MarkoffQuad q, const FlipWord& word) {
  for (auto i : word) q = flip(q, i);
  return q;
}

// ---------------------------------------------------------------------------
// Local edge dynamics

enum class EdgeOrientation { Incoming, Outgoing, Tie };
enum class VertexKind { Sink, Funnel, Saddle2, Saddle3 };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Sink: return "sink";
    case VertexKind::Funnel: return "funnel";
    case VertexKind::Saddle2: return "saddle2";
    case VertexKind::Saddle3: return "saddle3";
  }
  return "?";
}

struct VertexClass {
  VertexKind kind = VertexKind::Sink;
  std::array<EdgeOrientation, 4> edges{};

  std::size_t outgoing() const {
    return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), EdgeOrientation::Outgoing));
  }
};

/// Edge i is outgoing when flipping entry i strictly decreases its magnitude.
/// Ties count as incoming for the classification.
inline VertexClass classify_vertex(const MarkoffQuad& q, double tol = kDefaultTol) {
  require_valid(q, tol);
  VertexClass vc;
  for (std::size_t i = 0; i < 4; ++i) {
    const double now = std::abs(q[i]);
    const double next = std::abs(flipped_value(q, i));
    vc.edges[i] = next < now   ? EdgeOrientation::Outgoing
                  : next > now ? EdgeOrientation::Incoming
                               : EdgeOrientation::Tie;
  }
  switch (vc.outgoing()) {
    case 0: vc.kind = VertexKind::Sink; break;
    case 1: vc.kind = VertexKind::Funnel; break;
    case 2: vc.kind = VertexKind::Saddle2; break;
    case 3: vc.kind = VertexKind::Saddle3; break;
    default:
      throw InvalidQuad("vertex with four outgoing edges (numerically invalid quad)");
  }
  return vc;
}

struct SinkReduction {
  MarkoffQuad sink;
  FlipWord word;
};

/// Follow decreasing flips to a sink. At each step the largest-magnitude entry
/// whose flip strictly decreases it is flipped (lowest index on ties).
inline SinkReduction reduce_to_sink(const MarkoffQuad& q, std::size_t maxSteps = kDefaultMaxSteps,
                                    double tol = kDefaultTol) {
  require_valid(q, tol);
  SinkReduction r{q, {}};
  for (std::size_t step = 0;; ++step) {
    std::optional<std::size_t> best;
    Complex best_value;
    for (std::size_t i = 0; i < 4; ++i) {
      const Complex next = flipped_value(r.sink, i);
      if (!(std::abs(next) < std::abs(r.sink[i]))) continue;
      if (!best || std::abs(r.sink[i]) > std::abs(r.sink[*best])) {
        best = i;
        best_value = next;
      }
    }
    if (!best) return r;
    if (step >= maxSteps) {
      throw BudgetExceeded("reduce_to_sink: step budget of " + std::to_string(maxSteps) +
                           " exhausted (non-BQ input or cycling)");
    }
    r.sink[*best] = best_value;
    r.word.push_back(static_cast<std::uint8_t>(*best));
  }
}

// ---------------------------------------------------------------------------
// Pruned enumeration

struct CellRecord {
  CellId id{};
  Complex value;
  FlipWord word;  // vertex at which the cell was created; empty for root cells
  std::size_t slot = 0;
};

struct FaceRecord {
  std::array<CellId, 2> cells{};  // ascending ids
  Complex a, b;                   // values of the two cells
  FlipWord word;                  // vertex at which the pair was first seen
  Complex product() const { return a * b; }
};

struct EnumerationOptions {
  std::size_t maxCells = kDefaultMaxCells;
  unsigned threads = 1;
};

// When budgetHit is set the records carry empty words: a runaway walk on a
// non-BQ input can be arbitrarily deep.
struct CellScan {
  std::vector<CellRecord> cells;  // |value| <= bound, ascending id
  std::size_t explored = 0;       // cells created, including pruned-through ones
  bool budgetHit = false;
};

struct FaceScan {
  std::vector<FaceRecord> faces;  // |ab| <= bound, ascending id pair
  std::vector<CellRecord> cells;  // every cell the walk created; cells[k].id == k
  std::size_t explored = 0;
  bool budgetHit = false;
};

namespace detail {

enum class ScanMode { Cells, Faces };

// Vertices are stored as parent pointers so that a long path costs O(1) per
// vertex; words are rebuilt only for the records handed back to the caller.
struct RawVertex {
  std::size_t parent = 0;
  std::uint8_t move = 0;
};

struct RawCell {
  Complex value;
  std::size_t vertex = 0;  // creation vertex; 0 is the root
  std::size_t slot = 0;
  std::size_t depth = 0;   // length of the creation word
};

struct RawScan {
  std::vector<RawVertex> vertices{RawVertex{}};
  std::vector<RawCell> cells;                               // index = local id
  std::vector<std::pair<std::size_t, std::size_t>> faces;   // local ids
  bool budgetHit = false;

  FlipWord word(std::size_t vertex) const {
    FlipWord w;
    for (; vertex != 0; vertex = vertices[vertex].parent) w.push_back(vertices[vertex].move);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

inline bool keep_branch(ScanMode mode, double bound, const MarkoffQuad& q, std::size_t i, Complex v) {
  const double mag = std::abs(v);
  double max_retained = 0.0, min_product = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < 4; ++j) {
    if (j == i) continue;
    max_retained = std::max(max_retained, std::abs(q[j]));
    min_product = std::min(min_product, std::abs(v * q[j]));
  }
  if (mag < max_retained) return true;  // never prune a descending direction
  return mode == ScanMode::Cells ? mag <= bound : min_product <= bound;
}

// Breadth-first walk with children in index order. When firstMove is set only
// that branch is taken at the root (used to split the tree into subtrees).
inline RawScan scan(const MarkoffQuad& root, ScanMode mode, double bound, std::size_t maxCells,
                    std::optional<std::size_t> firstMove) {
  struct Frontier {
    std::array<std::size_t, 4> cells;
    MarkoffQuad values;
    std::optional<std::size_t> parentMove;
    std::size_t vertex, depth;
  };

  RawScan out;
  for (std::size_t i = 0; i < 4; ++i) out.cells.push_back({root[i], 0, i, 0});
  if (mode == ScanMode::Faces && !firstMove) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (std::abs(root[i] * root[j]) <= bound) out.faces.emplace_back(i, j);
  }

  std::deque<Frontier> queue;
  queue.push_back({{0, 1, 2, 3}, root, std::nullopt, 0, 0});
  while (!queue.empty()) {
    const Frontier node = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < 4; ++i) {
      if (node.parentMove == i) continue;
      if (node.depth == 0 && firstMove && *firstMove != i) continue;
      const Complex v = flipped_value(node.values, i);
      if (!keep_branch(mode, bound, node.values, i, v)) continue;
      if (out.cells.size() >= maxCells) {
        out.budgetHit = true;
        return out;
      }
      Frontier child{node.cells, node.values, i, out.vertices.size(), node.depth + 1};
      out.vertices.push_back({node.vertex, static_cast<std::uint8_t>(i)});
      child.values[i] = v;
      const std::size_t id = out.cells.size();
      child.cells[i] = id;
      out.cells.push_back({v, child.vertex, i, child.depth});
      if (mode == ScanMode::Faces) {
        for (std::size_t j = 0; j < 4; ++j)
          if (j != i && std::abs(v * node.values[j]) <= bound) out.faces.emplace_back(node.cells[j], id);
      }
      queue.push_back(child);
    }
  }
  return out;
}

inline bool word_order(const FlipWord& x, const FlipWord& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

// Runs the scan, optionally one subtree per root direction in parallel, and
// returns cells with ids in breadth-first discovery order. Breadth-first order
// is (word length, word) order, and within one subtree the local order already
// has that form, so the merge sorts by (depth, first letter, local id). The
// merged result is identical to the single-threaded walk.
inline RawScan run_scan(const MarkoffQuad& root, ScanMode mode, double bound, const EnumerationOptions& opts) {
  if (opts.threads <= 1) return scan(root, mode, bound, opts.maxCells, std::nullopt);

  std::vector<std::future<RawScan>> parts;
  for (std::size_t i = 0; i < 4; ++i) {
    parts.push_back(std::async(std::launch::async, [&root, mode, bound, &opts, i] {
      return scan(root, mode, bound, opts.maxCells, i);
    }));
  }
  RawScan merged;
  for (std::size_t i = 0; i < 4; ++i) merged.cells.push_back({root[i], 0, i, 0});
  if (mode == ScanMode::Faces) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (std::abs(root[i] * root[j]) <= bound) merged.faces.emplace_back(i, j);
  }

  std::vector<RawScan> results;
  for (auto& f : parts) results.push_back(f.get());

  // vertex 0 of every part is the shared root
  std::vector<std::size_t> vertexOffset(results.size());
  for (std::size_t p = 0; p < results.size(); ++p) {
    merged.budgetHit = merged.budgetHit || results[p].budgetHit;
    vertexOffset[p] = merged.vertices.size() - 1;
    for (std::size_t v = 1; v < results[p].vertices.size(); ++v) {
      RawVertex rv = results[p].vertices[v];
      if (rv.parent != 0) rv.parent += vertexOffset[p];
      merged.vertices.push_back(rv);
    }
  }

  struct Tagged {
    std::size_t depth, part, local;
  };
  std::vector<Tagged> order;
  for (std::size_t p = 0; p < results.size(); ++p)
    for (std::size_t k = 4; k < results[p].cells.size(); ++k) order.push_back({results[p].cells[k].depth, p, k});
  std::sort(order.begin(), order.end(), [](const Tagged& x, const Tagged& y) {
    return std::tie(x.depth, x.part, x.local) < std::tie(y.depth, y.part, y.local);
  });
  std::vector<std::vector<std::size_t>> remap(results.size());
  for (std::size_t p = 0; p < results.size(); ++p) {
    remap[p].resize(results[p].cells.size());
    for (std::size_t k = 0; k < 4; ++k) remap[p][k] = k;
  }
  for (const auto& t : order) {
    remap[t.part][t.local] = merged.cells.size();
    RawCell c = results[t.part].cells[t.local];
    if (c.vertex != 0) c.vertex += vertexOffset[t.part];
    merged.cells.push_back(c);
  }
  for (std::size_t p = 0; p < results.size(); ++p)
    for (auto [x, y] : results[p].faces) merged.faces.emplace_back(remap[p][x], remap[p][y]);
  if (merged.cells.size() > opts.maxCells) merged.budgetHit = true;
  return merged;
}

}  // namespace detail

/// Cells with |value| <= bound reachable from q, without throwing on budget.
///
/// A branch through flip i is kept when the new value is within the bound or
/// smaller than the largest of the three retained values. Start from a
/// reduced quad; descending directions are never pruned, so non-reduced starts
/// still terminate for BQ inputs but may walk further.
inline CellScan scan_cells(const MarkoffQuad& q, double bound, const EnumerationOptions& opts = {}) {
  const auto raw = detail::run_scan(q, detail::ScanMode::Cells, bound, opts);
  CellScan out;
  out.explored = raw.cells.size();
  out.budgetHit = raw.budgetHit;
  for (std::size_t k = 0; k < raw.cells.size(); ++k) {
    const auto& c = raw.cells[k];
    if (std::abs(c.value) <= bound) {
      out.cells.push_back({cell_id(k), c.value, raw.budgetHit ? FlipWord{} : raw.word(c.vertex), c.slot});
    }
  }
  return out;
}

/// Once-intersecting pairs with |ab| <= productBound, deduplicated by id pair.
inline FaceScan scan_faces(const MarkoffQuad& q, double productBound, const EnumerationOptions& opts = {}) {
  auto raw = detail::run_scan(q, detail::ScanMode::Faces, productBound, opts);
  for (auto& [x, y] : raw.faces)
    if (x > y) std::swap(x, y);
  std::sort(raw.faces.begin(), raw.faces.end());
  raw.faces.erase(std::unique(raw.faces.begin(), raw.faces.end()), raw.faces.end());

  FaceScan out;
  out.explored = raw.cells.size();
  out.budgetHit = raw.budgetHit;
  auto word = [&raw](std::size_t vertex) { return raw.budgetHit ? FlipWord{} : raw.word(vertex); };
  out.faces.reserve(raw.faces.size());
  for (auto [x, y] : raw.faces) {
    out.faces.push_back({{cell_id(x), cell_id(y)}, raw.cells[x].value, raw.cells[y].value, word(raw.cells[y].vertex)});
  }
  out.cells.reserve(raw.cells.size());
  for (std::size_t k = 0; k < raw.cells.size(); ++k) {
    const auto& c = raw.cells[k];
    out.cells.push_back({cell_id(k), c.value, word(c.vertex), c.slot});
  }
  return out;
}

inline std::vector<CellRecord> enumerate_cells(const MarkoffQuad& q, double bound,
                                               const EnumerationOptions& opts = {}) {
  require_valid(q);
  auto scan = scan_cells(q, bound, opts);
  if (scan.budgetHit) {
    throw BudgetExceeded("enumerate_cells: cell budget of " + std::to_string(opts.maxCells) +
                         " exhausted (suspected non-BQ input)");
  }
  return std::move(scan.cells);
}

inline std::vector<FaceRecord> enumerate_faces(const MarkoffQuad& q, double productBound,
                                               const EnumerationOptions& opts = {}) {
  require_valid(q);
  auto scan = scan_faces(q, productBound, opts);
  if (scan.budgetHit) {
    throw BudgetExceeded("enumerate_faces: cell budget of " + std::to_string(opts.maxCells) +
                         " exhausted (suspected non-BQ input)");
  }
  return std::move(scan.faces);
}

}  // namespace mql

#endif  // MQL_CURVE_COMPLEX_HPP
