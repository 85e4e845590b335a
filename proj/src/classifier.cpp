#include "uncond/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uncond/closed_walks.hpp"

namespace uncond {

namespace {

constexpr std::uint64_t kPathBudget = 2'000'000;

// Rows and columns touched by a level; edges with both ends inside are deleted.
struct Hull {
  std::vector<bool> rows;
  std::vector<bool> cols;

  Hull(const BipartiteSupport& top, const BipartiteSupport* level)
      : rows(static_cast<std::size_t>(top.n_rows()), false),
        cols(static_cast<std::size_t>(top.n_cols()), false) {
    if (!level) return;
    for (const Edge& e : level->edges()) {
      rows[static_cast<std::size_t>(e.row)] = true;
      cols[static_cast<std::size_t>(e.col)] = true;
    }
  }
  bool deletes(int r, int c) const {
    return rows[static_cast<std::size_t>(r)] && cols[static_cast<std::size_t>(c)];
  }
};

// Simple paths (c_0, r_0, ..., c_j, r_j) of odd length <= k, in DFS order.
std::vector<Path> odd_paths(const BipartiteSupport& s, int k) {
  std::vector<Path> out;
  std::vector<bool> row_used(static_cast<std::size_t>(s.n_rows()), false);
  std::vector<bool> col_used(static_cast<std::size_t>(s.n_cols()), false);
  Path current;
  std::function<void()> extend = [&]() {
    const Vertex v = current.vertices.back();
    if (v.side == Side::Row) {
      out.push_back(current);
      if (out.size() > kPathBudget) {
        throw BudgetExceeded("path budget of " + std::to_string(kPathBudget) + " exceeded",
                             kPathBudget);
      }
    }
    if (static_cast<int>(current.length()) >= k) return;
    if (v.side == Side::Column) {
      for (int r : s.col_neighbors(v.index)) {
        if (row_used[static_cast<std::size_t>(r)]) continue;
        row_used[static_cast<std::size_t>(r)] = true;
        current.vertices.push_back(Vertex::row(r));
        extend();
        current.vertices.pop_back();
        row_used[static_cast<std::size_t>(r)] = false;
      }
    } else {
      for (int c : s.row_neighbors(v.index)) {
        if (col_used[static_cast<std::size_t>(c)]) continue;
        col_used[static_cast<std::size_t>(c)] = true;
        current.vertices.push_back(Vertex::column(c));
        extend();
        current.vertices.pop_back();
        col_used[static_cast<std::size_t>(c)] = false;
      }
    }
  };
  for (int c = 0; c < s.n_cols(); ++c) {
    if (s.col_neighbors(c).empty()) continue;
    col_used[static_cast<std::size_t>(c)] = true;
    current.vertices = {Vertex::column(c)};
    extend();
    col_used[static_cast<std::size_t>(c)] = false;
  }
  return out;
}

// Searches a path Q from the last vertex of P back to its first one, internally
// disjoint from P, avoiding the hull, such that P ∪ Q is a cycle of length in
// {max(4, 4j+2), ..., 2k} where |P| = 2j+1.
std::optional<Cycle> completion(const BipartiteSupport& top, const Path& p, const Hull& hull, int k) {
  const int len = static_cast<int>(p.length());
  const int j = (len - 1) / 2;
  const int q_min = std::max(4, 4 * j + 2) - len;
  const int q_max = 2 * k - len;
  if (q_max < q_min) return std::nullopt;
  std::vector<bool> row_used(static_cast<std::size_t>(top.n_rows()), false);
  std::vector<bool> col_used(static_cast<std::size_t>(top.n_cols()), false);
  for (const Vertex& v : p.vertices) {
    (v.side == Side::Row ? row_used : col_used)[static_cast<std::size_t>(v.index)] = true;
  }
  const Vertex start = p.vertices.front();
  std::vector<Vertex> q;
  std::function<bool(Vertex, int)> dfs = [&](Vertex v, int depth) -> bool {
    if (depth >= q_max) return false;
    if (v.side == Side::Row) {
      for (int c : top.row_neighbors(v.index)) {
        if (hull.deletes(v.index, c)) continue;
        if (Vertex::column(c) == start) {
          if (depth + 1 >= q_min) return true;
          continue;
        }
        if (col_used[static_cast<std::size_t>(c)]) continue;
        col_used[static_cast<std::size_t>(c)] = true;
        q.push_back(Vertex::column(c));
        if (dfs(Vertex::column(c), depth + 1)) return true;
        q.pop_back();
        col_used[static_cast<std::size_t>(c)] = false;
      }
    } else {
      for (int r : top.col_neighbors(v.index)) {
        if (hull.deletes(r, v.index) || row_used[static_cast<std::size_t>(r)]) continue;
        row_used[static_cast<std::size_t>(r)] = true;
        q.push_back(Vertex::row(r));
        if (dfs(Vertex::row(r), depth + 1)) return true;
        q.pop_back();
        row_used[static_cast<std::size_t>(r)] = false;
      }
    }
    return false;
  };
  if (!dfs(p.vertices.back(), 0)) return std::nullopt;
  Cycle cycle{p.vertices};
  cycle.vertices.insert(cycle.vertices.end(), q.begin(), q.end());
  return cycle;
}

void check_level_range(int max_level) {
  if (max_level < 1) throw InputError("family evidence needs max_level >= 1");
}

}  // namespace

bool UnconditionalityProfile::one_unconditional_at(double p) const {
  if (all_p) return true;
  return std::find(even_p.begin(), even_p.end(), p) != even_p.end();
}

std::string UnconditionalityProfile::describe_p() const {
  if (all_p) return "all p in (0, inf]";
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < even_p.size(); ++i) out << (i ? ", " : "") << even_p[i];
  out << '}';
  return out.str();
}

UnconditionalityProfile classify(const BipartiteSupport& s) {
  UnconditionalityProfile out;
  const auto girth = even_girth(s);
  if (!girth) return out;
  out.forest = false;
  out.all_p = false;
  out.even_girth = girth->length;
  for (int p = 2; p <= girth->length - 2; p += 2) out.even_p.push_back(p);
  out.v_interpolation_constant_1 = false;
  out.factorization_available = false;
  out.cycle_witness = girth->witness;
  return out;
}

bool star_union_tensor_verdict(const BipartiteSupport& s) { return is_star_union(s); }

BipartiteSupport SupportFamily::level(int n) const {
  if (n < 0) throw InputError("family levels start at 0");
  return generator_(n);
}

std::vector<BipartiteSupport> SupportFamily::levels(int max_level) const {
  std::vector<BipartiteSupport> out;
  for (int n = 0; n <= max_level; ++n) {
    out.push_back(level(n));
    if (n == 0) continue;
    const BipartiteSupport& prev = out[static_cast<std::size_t>(n - 1)];
    const BipartiteSupport& cur = out.back();
    for (const Edge& e : prev.edges()) {
      if (e.row >= cur.n_rows() || e.col >= cur.n_cols() || !cur.contains(e)) {
        std::ostringstream msg;
        msg << "family is not increasing: edge (" << e.row << ", " << e.col << ") of level "
            << n - 1 << " is missing from level " << n;
        throw InputError(msg.str());
      }
    }
  }
  return out;
}

namespace {

BipartiteSupport ij_level(int j, int n, bool plus) {
  std::vector<Edge> edges;
  if (plus) edges.push_back({0, 0});
  for (int m = 0; m <= n; ++m) {
    const int b = m * j;
    edges.push_back({b + 1, 0});
    for (int i = 1; i <= j; ++i) edges.push_back({b + i, b + i});
    for (int i = 1; i < j; ++i) edges.push_back({b + i + 1, b + i});
    edges.push_back({0, b + j});
  }
  const int size = (n + 1) * j + 1;
  return BipartiteSupport(size, size, std::move(edges));
}

}  // namespace

SupportFamily SupportFamily::path_union(int j) {
  if (j < 1) throw InputError("path_union needs j >= 1");
  return SupportFamily([j](int n) { return ij_level(j, n, false); },
                       "union of the paths of length " + std::to_string(2 * j + 1) +
                           " from col 0 to row 0 (j = " + std::to_string(j) + ")");
}

SupportFamily SupportFamily::path_union_plus(int j) {
  if (j < 1) throw InputError("path_union_plus needs j >= 1");
  return SupportFamily([j](int n) { return ij_level(j, n, true); },
                       "union of the paths of length " + std::to_string(2 * j + 1) +
                           " from col 0 to row 0 plus the edge (0, 0) (j = " + std::to_string(j) +
                           ")");
}

SupportFamily SupportFamily::hankel(const IntegerSet& lambda) {
  return SupportFamily([lambda](int n) { return hankel_support(lambda, n + 1, n + 1); },
                       "Hankel support {(r, c) : r + c in lambda}, level n truncated to (n+1)x(n+1)");
}

SupportFamily SupportFamily::constant(const BipartiteSupport& s) {
  return SupportFamily([s](int) { return s; }, "constant family");
}

SupportFamily SupportFamily::explicit_levels(std::vector<BipartiteSupport> levels) {
  if (levels.empty()) throw InputError("explicit family needs at least one level");
  return SupportFamily(
      [levels = std::move(levels)](int n) {
        return levels[std::min<std::size_t>(static_cast<std::size_t>(n), levels.size() - 1)];
      },
      "explicit levels");
}

SupportFamily parse_family_levels(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("family JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("levels")) j = j["levels"];
  if (!j.is_array()) throw InputError("family JSON must be an array of supports or {\"levels\": [...]}");
  std::vector<BipartiteSupport> levels;
  for (const auto& level : j) levels.push_back(parse_support(level.dump()));
  return SupportFamily::explicit_levels(std::move(levels));
}

JkReport check_Jk(const SupportFamily& family, int k, int max_level) {
  if (k < 1) throw InputError("J_k needs k >= 1");
  check_level_range(max_level);
  const std::vector<BipartiteSupport> levels = family.levels(max_level);
  const BipartiteSupport& top = levels.back();
  std::vector<Hull> hulls;  // hulls[ℓ + 1] for ℓ = -1, ..., max_level - 1
  hulls.emplace_back(top, nullptr);
  for (int l = 0; l < max_level; ++l) hulls.emplace_back(top, &levels[static_cast<std::size_t>(l)]);
  auto hull = [&](int l) -> const Hull& { return hulls[static_cast<std::size_t>(l + 1)]; };

  JkReport report;
  report.k = k;
  report.max_level = max_level;
  for (const Path& p : odd_paths(top, k)) {
    ++report.paths_checked;
    if (!completion(top, p, hull(-1), k)) continue;
    if (completion(top, p, hull(max_level - 1), k)) {
      report.holds = false;
      JkCounterexample ce{p, {}};
      for (int l = 0; l < max_level; ++l) ce.cycles.emplace_back(l, *completion(top, p, hull(l), k));
      report.counterexample = std::move(ce);
      return report;
    }
    // Completions only disappear as ℓ grows: binary search the first kill.
    int lo = -1, hi = max_level - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (completion(top, p, hull(mid), k) ? lo : hi) = mid;
    }
    report.evidence.push_back({p, hi});
    report.max_kill_level = std::max(report.max_kill_level, hi);
  }
  return report;
}

AsymptoticDistance asymptotic_distance_lower_bound(const SupportFamily& family, int r, int c,
                                                   int max_level) {
  check_level_range(max_level);
  const std::vector<BipartiteSupport> levels = family.levels(max_level);
  const BipartiteSupport& base = levels.front();
  if (r < 0 || r >= base.n_rows() || c < 0 || c >= base.n_cols()) {
    throw InputError("row and column must exist at level 0");
  }
  const BipartiteSupport& top = levels.back();
  AsymptoticDistance out;
  out.max_level = max_level;
  out.distance = 0;
  for (int l = -1; l < max_level; ++l) {
    const Hull hull(top, l < 0 ? nullptr : &levels[static_cast<std::size_t>(l)]);
    // BFS from row r; rows at even depth, columns at odd depth.
    std::vector<int> row_d(static_cast<std::size_t>(top.n_rows()), -1);
    std::vector<int> col_d(static_cast<std::size_t>(top.n_cols()), -1);
    std::deque<Vertex> queue{Vertex::row(r)};
    row_d[static_cast<std::size_t>(r)] = 0;
    while (!queue.empty() && col_d[static_cast<std::size_t>(c)] < 0) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (v.side == Side::Row) {
        for (int w : top.row_neighbors(v.index)) {
          if (hull.deletes(v.index, w) || col_d[static_cast<std::size_t>(w)] >= 0) continue;
          col_d[static_cast<std::size_t>(w)] = row_d[static_cast<std::size_t>(v.index)] + 1;
          queue.push_back(Vertex::column(w));
        }
      } else {
        for (int w : top.col_neighbors(v.index)) {
          if (hull.deletes(w, v.index) || row_d[static_cast<std::size_t>(w)] >= 0) continue;
          row_d[static_cast<std::size_t>(w)] = col_d[static_cast<std::size_t>(v.index)] + 1;
          queue.push_back(Vertex::row(w));
        }
      }
    }
    const int d = col_d[static_cast<std::size_t>(c)];
    if (d < 0) {
      out.distance = std::nullopt;
      out.level = l;
      return out;
    }
    if (d > *out.distance) {
      out.distance = d;
      out.level = l;
    }
  }
  return out;
}

UmapVerdict umap_verdict_even_p(const SupportFamily& family, int p, int max_level) {
  if (p < 2 || p % 2 != 0) throw InputError("umap verdict needs an even p >= 2");
  UmapVerdict out;
  out.p = p;
  out.jk = check_Jk(family, p / 2, max_level);
  out.equivalence = "S^" + std::to_string(p) + " has the metric unconditional approximation "
                    "property along the support iff it enjoys J_" + std::to_string(p / 2);
  return out;
}

}  // namespace uncond
