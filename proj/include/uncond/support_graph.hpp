#pragma once

// Supports I ⊆ R×C viewed as bipartite graphs on rows ∐ columns, together
// with the combinatorial predicates (forest, girth, rectangle unions, ...)
// and their certificates.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uncond {

/// Couple (r, c) of the support; ordered lexicographically.
struct Edge {
  int row = 0;
  int col = 0;
  auto operator<=>(const Edge&) const = default;
};

enum class Side { Column, Row };

struct Vertex {
  Side side = Side::Column;
  int index = 0;
  auto operator<=>(const Vertex&) const = default;

  static Vertex column(int c) { return {Side::Column, c}; }
  static Vertex row(int r) { return {Side::Row, r}; }
};

std::string to_string(const Vertex& v);

/// Malformed or inconsistent input (bad JSON, out-of-range vertex, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed alternating sequence (c_1, r_1, ..., c_s, r_s) of distinct vertices.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }
  /// Couples (r, c) traversed by the cycle, sorted.
  std::vector<Edge> edges() const;
  bool operator==(const Cycle&) const = default;
};

/// Sequence of distinct vertices, consecutive ones adjacent.
struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  std::vector<Edge> edges() const;
  bool operator==(const Path&) const = default;
};

class NotAForestError : public std::runtime_error {
 public:
  NotAForestError(const std::string& what, Cycle witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const Cycle& witness() const { return witness_; }

 private:
  Cycle witness_;
};

/// Immutable support. Edges are duplicate-free and sorted by (row, col).
class BipartiteSupport {
 public:
  BipartiteSupport() = default;
  /// Throws InputError on out-of-range endpoints or duplicate edges; the
  /// message carries the offending index in `edges`.
  BipartiteSupport(int n_rows, int n_cols, std::vector<Edge> edges);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool contains(Edge e) const;
  /// Position of `e` in edges(), if present.
  std::optional<std::size_t> edge_index(Edge e) const;

  /// Columns adjacent to row r, ascending.
  std::span<const int> row_neighbors(int r) const;
  /// Rows adjacent to column c, ascending.
  std::span<const int> col_neighbors(int c) const;
  std::size_t degree(const Vertex& v) const;
  bool is_valid(const Vertex& v) const;

  bool operator==(const BipartiteSupport& o) const {
    return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ && edges_ == o.edges_;
  }

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> row_adj_;
  std::vector<std::vector<int>> col_adj_;
};

/// Support together with the optional display labels of the edge-list schema.
struct SupportDocument {
  BipartiteSupport support;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

/// Parses {"rows": n, "cols": m, "edges": [[r, c], ...]} with optional
/// "row_labels" / "col_labels".
SupportDocument parse_support_document(std::string_view text);
BipartiteSupport parse_support(std::string_view text);
std::string support_to_json(const BipartiteSupport& s);

struct ForestResult {
  bool forest = true;
  std::optional<Cycle> witness;
};

struct GirthResult {
  int length = 0;
  Cycle witness;
};

ForestResult is_forest(const BipartiteSupport& s);

/// Shortest cycle length, or nullopt for forests.
std::optional<GirthResult> even_girth(const BipartiteSupport& s);

struct Rectangle {
  std::vector<int> rows;
  std::vector<int> cols;
  bool operator==(const Rectangle&) const = default;
};

/// (r0,c0), (r0,c1), (r1,c0) in I while (r1,c1) is not.
struct RectangleViolation {
  int r0 = 0, c0 = 0, r1 = 0, c1 = 0;
};

struct RectangleUnionResult {
  bool is_union = true;
  std::vector<Rectangle> rectangles;
  std::optional<RectangleViolation> witness;
};

RectangleUnionResult is_rectangle_union(const BipartiteSupport& s);

/// True iff no path of length 3, i.e. every component is a star.
bool is_star_union(const BipartiteSupport& s);

struct DensityCertificate {
  std::vector<int> rows;
  std::vector<int> cols;
  std::size_t edge_count = 0;
  /// |rows| = |cols| = k and edge_count > 2k - 1.
  std::size_t k = 0;
};

std::optional<DensityCertificate> density_certificate(const BipartiteSupport& s);

struct Bisection {
  std::vector<Edge> row_section;
  std::vector<Edge> column_section;
};

/// Splits a forest into a row section and a column section. Each tree is
/// rooted at its smallest column; an edge whose parent endpoint is a column
/// goes to the row section, one whose parent is a row to the column section.
/// Throws NotAForestError otherwise.
Bisection bisection_decompose(const BipartiteSupport& s);

struct UniquePathsResult {
  bool unique = true;
  /// Two distinct paths with the same endpoints, both of length <= k.
  std::optional<std::pair<Path, Path>> witness;
};

/// Searches paths directly (not through the girth).
UniquePathsResult unique_paths_up_to(const BipartiteSupport& s, int k);

/// Breadth-first distance, nullopt if disconnected.
std::optional<int> distance(const BipartiteSupport& s, const Vertex& v, const Vertex& w);

/// Shortest path from v to w, BFS with ascending neighbour order.
std::optional<Path> shortest_path(const BipartiteSupport& s, const Vertex& v, const Vertex& w);

}  // namespace uncond
