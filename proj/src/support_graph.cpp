#include "uncond/support_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

namespace uncond {

namespace {

using json = nlohmann::json;

// Dense vertex ids: columns first, then rows.
struct VertexIds {
  int n_cols;
  int id(const Vertex& v) const { return v.side == Side::Column ? v.index : n_cols + v.index; }
  Vertex vertex(int id) const {
    return id < n_cols ? Vertex::column(id) : Vertex::row(id - n_cols);
  }
};

std::vector<Edge> edges_of_sequence(const std::vector<Vertex>& vs, bool closed) {
  std::vector<Edge> out;
  const std::size_t n = vs.size();
  const std::size_t steps = closed ? n : (n == 0 ? 0 : n - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const Vertex& a = vs[i];
    const Vertex& b = vs[(i + 1) % n];
    if (a.side == Side::Row) {
      out.push_back({a.index, b.index});
    } else {
      out.push_back({b.index, a.index});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Adjacency over dense ids, neighbours ascending by id.
std::vector<std::vector<int>> adjacency(const BipartiteSupport& s) {
  VertexIds ids{s.n_cols()};
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(s.n_cols() + s.n_rows()));
  for (const Edge& e : s.edges()) {
    adj[ids.id(Vertex::column(e.col))].push_back(ids.id(Vertex::row(e.row)));
    adj[ids.id(Vertex::row(e.row))].push_back(ids.id(Vertex::column(e.col)));
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

// BFS from `from`; the edge {skip_a, skip_b} is ignored when skip_a >= 0.
// Returns the parent array (-1 unreachable, from -> itself).
std::vector<int> bfs_parents(const std::vector<std::vector<int>>& adj, int from, int skip_a = -1,
                             int skip_b = -1, int max_depth = -1) {
  std::vector<int> parent(adj.size(), -1);
  std::vector<int> depth(adj.size(), 0);
  std::deque<int> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && depth[u] >= max_depth) continue;
    for (int w : adj[u]) {
      if ((u == skip_a && w == skip_b) || (u == skip_b && w == skip_a)) continue;
      if (parent[w] != -1) continue;
      parent[w] = u;
      depth[w] = depth[u] + 1;
      queue.push_back(w);
    }
  }
  return parent;
}

std::vector<int> trace_back(const std::vector<int>& parent, int from, int to) {
  std::vector<int> seq;
  for (int v = to; v != from; v = parent[v]) seq.push_back(v);
  seq.push_back(from);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

// Rotate so the smallest column comes first, then orient towards the smaller
// of its two row neighbours.
Cycle normalize_cycle(std::vector<Vertex> vs) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].side == Side::Column &&
        (vs[best].side != Side::Column || vs[i].index < vs[best].index)) {
      best = i;
    }
  }
  std::rotate(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(best), vs.end());
  if (vs.size() > 2 && vs.back().index < vs[1].index) {
    std::reverse(vs.begin() + 1, vs.end());
  }
  return Cycle{std::move(vs)};
}

bool cycle_less(const Cycle& a, const Cycle& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.vertices < b.vertices;
}

std::vector<std::vector<int>> components_by_edges(const BipartiteSupport& s,
                                                  const std::vector<std::vector<int>>& adj) {
  VertexIds ids{s.n_cols()};
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::vector<int>> comps;
  // Seed from columns ascending so each component starts at its smallest column.
  for (int c = 0; c < s.n_cols(); ++c) {
    const int start = ids.id(Vertex::column(c));
    if (seen[start] || adj[start].empty()) continue;
    std::vector<int> comp;
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (int w : adj[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

std::string to_string(const Vertex& v) {
  return (v.side == Side::Column ? "col " : "row ") + std::to_string(v.index);
}

std::vector<Edge> Cycle::edges() const { return edges_of_sequence(vertices, true); }

std::vector<Edge> Path::edges() const { return edges_of_sequence(vertices, false); }

BipartiteSupport::BipartiteSupport(int n_rows, int n_cols, std::vector<Edge> edges)
    : n_rows_(n_rows), n_cols_(n_cols) {
  if (n_rows < 0 || n_cols < 0) throw InputError("negative vertex count");
  std::set<Edge> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
      std::ostringstream msg;
      msg << "edge " << i << " (" << e.row << ", " << e.col << ") out of range for " << n_rows
          << "x" << n_cols << " support";
      throw InputError(msg.str());
    }
    if (!seen.insert(e).second) {
      std::ostringstream msg;
      msg << "duplicate edge at index " << i << " (" << e.row << ", " << e.col << ")";
      throw InputError(msg.str());
    }
  }
  edges_.assign(seen.begin(), seen.end());
  row_adj_.assign(static_cast<std::size_t>(n_rows), {});
  col_adj_.assign(static_cast<std::size_t>(n_cols), {});
  for (const Edge& e : edges_) {
    row_adj_[e.row].push_back(e.col);
    col_adj_[e.col].push_back(e.row);
  }
  for (auto& a : col_adj_) std::sort(a.begin(), a.end());
}

bool BipartiteSupport::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<std::size_t> BipartiteSupport::edge_index(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::span<const int> BipartiteSupport::row_neighbors(int r) const { return row_adj_.at(r); }

std::span<const int> BipartiteSupport::col_neighbors(int c) const { return col_adj_.at(c); }

bool BipartiteSupport::is_valid(const Vertex& v) const {
  return v.index >= 0 && v.index < (v.side == Side::Row ? n_rows_ : n_cols_);
}

std::size_t BipartiteSupport::degree(const Vertex& v) const {
  return v.side == Side::Row ? row_adj_.at(v.index).size() : col_adj_.at(v.index).size();
}

SupportDocument parse_support_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("support document must be a JSON object");
  auto count = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0) {
      throw InputError(std::string("missing or invalid \"") + key + "\"");
    }
    return doc[key].get<int>();
  };
  const int rows = count("rows");
  const int cols = count("cols");
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw InputError("missing or invalid \"edges\"");
  }
  std::vector<Edge> edges;
  const auto& list = doc["edges"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& e = list[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("edge " + std::to_string(i) + " is not a [row, col] pair");
    }
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  SupportDocument out{BipartiteSupport(rows, cols, std::move(edges)), {}, {}};
  auto labels = [&](const char* key, int expected, std::vector<std::string>& into) {
    if (!doc.contains(key)) return;
    const auto& arr = doc[key];
    if (!arr.is_array() || static_cast<int>(arr.size()) != expected) {
      throw InputError(std::string("\"") + key + "\" must list one label per vertex");
    }
    for (const auto& l : arr) {
      if (!l.is_string()) throw InputError(std::string("\"") + key + "\" entries must be strings");
      into.push_back(l.get<std::string>());
    }
  };
  labels("row_labels", rows, out.row_labels);
  labels("col_labels", cols, out.col_labels);
  return out;
}

BipartiteSupport parse_support(std::string_view text) {
  return parse_support_document(text).support;
}

std::string support_to_json(const BipartiteSupport& s) {
  json edges = json::array();
  for (const Edge& e : s.edges()) edges.push_back({e.row, e.col});
  json doc{{"rows", s.n_rows()}, {"cols", s.n_cols()}, {"edges", edges}};
  return doc.dump();
}

std::optional<GirthResult> even_girth(const BipartiteSupport& s) {
  const auto adj = adjacency(s);
  VertexIds ids{s.n_cols()};
  std::optional<Cycle> best;
  for (const Edge& e : s.edges()) {
    const int c = ids.id(Vertex::column(e.col));
    const int r = ids.id(Vertex::row(e.row));
    // A cycle through e has length dist_{G-e}(c, r) + 1; no need to look
    // beyond the best length found so far.
    const int limit = best ? static_cast<int>(best->length()) - 1 : -1;
    const auto parent = bfs_parents(adj, c, c, r, limit);
    if (parent[r] == -1) continue;
    std::vector<Vertex> vs;
    for (int id : trace_back(parent, c, r)) vs.push_back(ids.vertex(id));
    Cycle candidate = normalize_cycle(std::move(vs));
    if (!best || cycle_less(candidate, *best)) best = std::move(candidate);
  }
  if (!best) return std::nullopt;
  return GirthResult{static_cast<int>(best->length()), std::move(*best)};
}

ForestResult is_forest(const BipartiteSupport& s) {
  // Cheap acyclicity test first; a witness is only searched when needed.
  const std::size_t nv = static_cast<std::size_t>(s.n_rows() + s.n_cols());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool acyclic = true;
  for (const Edge& e : s.edges()) {
    const int a = find(e.col);
    const int b = find(s.n_cols() + e.row);
    if (a == b) {
      acyclic = false;
      break;
    }
    parent[a] = b;
  }
  if (acyclic) return {true, std::nullopt};
  auto girth = even_girth(s);
  return {false, std::move(girth->witness)};
}

RectangleUnionResult is_rectangle_union(const BipartiteSupport& s) {
  const auto adj = adjacency(s);
  VertexIds ids{s.n_cols()};
  RectangleUnionResult out;
  for (const auto& comp : components_by_edges(s, adj)) {
    Rectangle rect;
    for (int id : comp) {
      const Vertex v = ids.vertex(id);
      (v.side == Side::Row ? rect.rows : rect.cols).push_back(v.index);
    }
    std::sort(rect.rows.begin(), rect.rows.end());
    std::sort(rect.cols.begin(), rect.cols.end());
    std::size_t edges_in = 0;
    for (int r : rect.rows) edges_in += s.row_neighbors(r).size();
    if (edges_in != rect.rows.size() * rect.cols.size()) {
      // Smallest missing couple inside the component; the first four vertices
      // of a shortest path from its row to its column give the witness.
      for (int r1 : rect.rows) {
        for (int c1 : rect.cols) {
          if (s.contains({r1, c1})) continue;
          const auto path = shortest_path(s, Vertex::row(r1), Vertex::column(c1));
          const auto& v = path->vertices;
          out.is_union = false;
          out.rectangles.clear();
          out.witness = RectangleViolation{v[2].index, v[1].index, r1, v[3].index};
          return out;
        }
      }
    }
    out.rectangles.push_back(std::move(rect));
  }
  return out;
}

bool is_star_union(const BipartiteSupport& s) {
  for (const Edge& e : s.edges()) {
    if (s.row_neighbors(e.row).size() >= 2 && s.col_neighbors(e.col).size() >= 2) return false;
  }
  return true;
}

std::optional<DensityCertificate> density_certificate(const BipartiteSupport& s) {
  auto girth = even_girth(s);
  if (!girth) return std::nullopt;
  DensityCertificate cert;
  for (const Vertex& v : girth->witness.vertices) {
    (v.side == Side::Row ? cert.rows : cert.cols).push_back(v.index);
  }
  std::sort(cert.rows.begin(), cert.rows.end());
  std::sort(cert.cols.begin(), cert.cols.end());
  for (int r : cert.rows) {
    for (int c : s.row_neighbors(r)) {
      if (std::binary_search(cert.cols.begin(), cert.cols.end(), c)) ++cert.edge_count;
    }
  }
  cert.k = cert.rows.size();
  return cert;
}

Bisection bisection_decompose(const BipartiteSupport& s) {
  auto forest = is_forest(s);
  if (!forest.forest) throw NotAForestError("support is not a forest", *forest.witness);
  const auto adj = adjacency(s);
  VertexIds ids{s.n_cols()};
  std::vector<int> parent(adj.size(), -1);
  for (const auto& comp : components_by_edges(s, adj)) {
    // comp.front() is the smallest column of the tree.
    const auto p = bfs_parents(adj, comp.front());
    for (int id : comp) parent[id] = p[id];
  }
  Bisection out;
  for (const Edge& e : s.edges()) {
    const int r = ids.id(Vertex::row(e.row));
    const int c = ids.id(Vertex::column(e.col));
    if (parent[r] == c) {
      out.row_section.push_back(e);
    } else {
      out.column_section.push_back(e);
    }
  }
  return out;
}

UniquePathsResult unique_paths_up_to(const BipartiteSupport& s, int k) {
  if (k < 1) throw InputError("unique_paths_up_to requires k >= 1");
  const auto adj = adjacency(s);
  VertexIds ids{s.n_cols()};
  const std::size_t nv = adj.size();
  UniquePathsResult out;
  std::vector<char> on_path(nv, 0);
  std::vector<int> stack;
  // First path found to each endpoint from the current start.
  std::vector<std::vector<int>> first(nv);
  std::vector<char> reached(nv, 0);

  auto to_path = [&](const std::vector<int>& seq) {
    Path p;
    for (int id : seq) p.vertices.push_back(ids.vertex(id));
    return p;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int w : adj[u]) {
      if (on_path[w]) continue;
      stack.push_back(w);
      if (reached[w]) {
        out.unique = false;
        out.witness = std::make_pair(to_path(first[w]), to_path(stack));
        return true;
      }
      reached[w] = 1;
      first[w] = stack;
      if (static_cast<int>(stack.size()) - 1 < k) {
        on_path[w] = 1;
        if (dfs(w)) return true;
        on_path[w] = 0;
      }
      stack.pop_back();
    }
    return false;
  };

  for (int start = 0; start < static_cast<int>(nv); ++start) {
    if (adj[start].empty()) continue;
    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(1, start);
    on_path[start] = 1;
    reached[start] = 1;
    first[start] = stack;
    const bool found = dfs(start);
    on_path[start] = 0;
    if (found) return out;
  }
  return out;
}

std::optional<Path> shortest_path(const BipartiteSupport& s, const Vertex& v, const Vertex& w) {
  if (!s.is_valid(v) || !s.is_valid(w)) throw InputError("vertex out of range");
  const auto adj = adjacency(s);
  VertexIds ids{s.n_cols()};
  const auto parent = bfs_parents(adj, ids.id(v));
  if (parent[ids.id(w)] == -1) return std::nullopt;
  Path p;
  for (int id : trace_back(parent, ids.id(v), ids.id(w))) p.vertices.push_back(ids.vertex(id));
  return p;
}

std::optional<int> distance(const BipartiteSupport& s, const Vertex& v, const Vertex& w) {
  auto p = shortest_path(s, v, w);
  if (!p) return std::nullopt;
  return static_cast<int>(p->length());
}

}  // namespace uncond
