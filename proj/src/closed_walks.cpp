#include "uncond/closed_walks.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace uncond {

namespace {

int total(const EdgeCounts& m) {
  int sum = 0;
  for (const auto& [e, n] : m) sum += n;
  return sum;
}

void add_into(EdgeCounts& into, const EdgeCounts& from) {
  for (const auto& [e, n] : from) into[e] += n;
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

Complex ipow(Complex z, int n) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

std::size_t index_of(const BipartiteSupport& s, const Edge& e) {
  auto idx = s.edge_index(e);
  if (!idx) {
    std::ostringstream msg;
    msg << "relation refers to (" << e.row << ", " << e.col << ") outside the support";
    throw InputError(msg.str());
  }
  return *idx;
}

}  // namespace

std::vector<Vertex> ClosedWalk::vertices() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out.push_back(Vertex::column(columns[i]));
    out.push_back(Vertex::row(rows[i]));
  }
  return out;
}

int ClosedWalkRelation::k() const { return total(alpha); }

void for_each_closed_walk(const BipartiteSupport& s, int p,
                          const std::function<void(const ClosedWalk&)>& visit,
                          std::uint64_t budget) {
  if (p < 2 || p % 2 != 0) throw InputError("closed walk length must be an even integer >= 2");
  const int k = p / 2;
  ClosedWalk walk;
  walk.columns.resize(static_cast<std::size_t>(k));
  walk.rows.resize(static_cast<std::size_t>(k));
  std::uint64_t count = 0;

  // Position i: choose rows[i] adjacent to columns[i], then columns[i+1]
  // adjacent to rows[i]; the last row must also be adjacent to columns[0].
  std::function<void(int)> extend = [&](int i) {
    for (int r : s.col_neighbors(walk.columns[i])) {
      walk.rows[i] = r;
      if (i + 1 == k) {
        if (!s.contains({r, walk.columns[0]})) continue;
        if (++count > budget) {
          throw BudgetExceeded("closed walk budget of " + std::to_string(budget) + " exceeded",
                               count - 1);
        }
        visit(walk);
        continue;
      }
      for (int c : s.row_neighbors(r)) {
        walk.columns[i + 1] = c;
        extend(i + 1);
      }
    }
  };

  for (int c = 0; c < s.n_cols(); ++c) {
    if (s.col_neighbors(c).empty()) continue;
    walk.columns[0] = c;
    extend(0);
  }
}

std::vector<ClosedWalk> enumerate_closed_walks(const BipartiteSupport& s, int p,
                                               std::uint64_t budget) {
  std::vector<ClosedWalk> out;
  for_each_closed_walk(s, p, [&](const ClosedWalk& w) { out.push_back(w); }, budget);
  return out;
}

ClosedWalkRelation relation_of_walk(const ClosedWalk& w) {
  ClosedWalkRelation rel;
  const std::size_t k = w.columns.size();
  for (std::size_t i = 0; i < k; ++i) {
    rel.alpha[{w.rows[i], w.columns[i]}] += 1;
    rel.beta[{w.rows[i], w.columns[(i + 1) % k]}] += 1;
  }
  return rel;
}

RelationTable relation_table(const BipartiteSupport& s, int k, std::uint64_t budget) {
  if (k < 1) throw InputError("relation_table requires k >= 1");
  RelationTable table;
  for_each_closed_walk(
      s, 2 * k, [&](const ClosedWalk& w) { ++table[relation_of_walk(w)]; }, budget);
  return table;
}

bool is_row_column_disjoint(const ClosedWalkRelation& a, const ClosedWalkRelation& b) {
  if (a.k() < 1 || b.k() < 1) return false;
  std::set<int> rows, cols;
  for (const auto& [e, n] : a.alpha) {
    rows.insert(e.row);
    cols.insert(e.col);
  }
  for (const auto& [e, n] : b.alpha) {
    if (rows.count(e.row) || cols.count(e.col)) return false;
  }
  return true;
}

bool is_balanced(const ClosedWalkRelation& rel) {
  if (total(rel.alpha) != total(rel.beta)) return false;
  std::map<int, int> row_diff, col_diff;
  for (const auto& [e, n] : rel.alpha) {
    if (n < 0) return false;
    row_diff[e.row] += n;
    col_diff[e.col] += n;
  }
  for (const auto& [e, n] : rel.beta) {
    if (n < 0) return false;
    row_diff[e.row] -= n;
    col_diff[e.col] -= n;
  }
  for (const auto& [r, d] : row_diff) {
    if (d != 0) return false;
  }
  for (const auto& [c, d] : col_diff) {
    if (d != 0) return false;
  }
  return true;
}

bool is_closed_walk_relation(const ClosedWalkRelation& rel) {
  if (rel.k() < 1 || !is_balanced(rel)) return false;
  // Union-find over touched vertices; rows are tagged by a negative key.
  std::map<long long, long long> parent;
  auto key_row = [](int r) { return -1LL - r; };
  auto find = [&](long long x) {
    if (!parent.count(x)) parent[x] = x;
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](const EdgeCounts& m) {
    for (const auto& [e, n] : m) {
      if (n == 0) continue;
      parent[find(key_row(e.row))] = find(e.col);
    }
  };
  unite(rel.alpha);
  unite(rel.beta);
  std::set<long long> roots;
  for (const auto& [x, p] : parent) roots.insert(find(x));
  return roots.size() == 1;
}

ClosedWalkRelation add(const ClosedWalkRelation& a, const ClosedWalkRelation& b) {
  ClosedWalkRelation out = a;
  add_into(out.alpha, b.alpha);
  add_into(out.beta, b.beta);
  return out;
}

CycleDecomposition decompose_into_cycles(const ClosedWalk& w) {
  if (w.columns.empty() || w.columns.size() != w.rows.size()) {
    throw InputError("closed walk must have matching, nonempty column and row sequences");
  }
  CycleDecomposition out;
  std::vector<ClosedWalk> work{w};
  while (!work.empty()) {
    ClosedWalk piece = std::move(work.back());
    work.pop_back();
    const std::size_t k = piece.columns.size();
    // Scan c_1, r_1, c_2, r_2, ... for the first vertex seen twice.
    std::map<int, std::size_t> col_at, row_at;
    bool cut = false;
    for (std::size_t j = 0; j < k && !cut; ++j) {
      if (auto it = col_at.find(piece.columns[j]); it != col_at.end()) {
        const std::size_t i = it->second;
        ClosedWalk inner, outer;
        for (std::size_t t = i; t < j; ++t) {
          inner.columns.push_back(piece.columns[t]);
          inner.rows.push_back(piece.rows[t]);
        }
        for (std::size_t t = 0; t < k; ++t) {
          if (t >= i && t < j) continue;
          outer.columns.push_back(piece.columns[t]);
          outer.rows.push_back(piece.rows[t]);
        }
        work.push_back(std::move(outer));
        work.push_back(std::move(inner));
        cut = true;
        break;
      }
      col_at[piece.columns[j]] = j;
      if (auto it = row_at.find(piece.rows[j]); it != row_at.end()) {
        const std::size_t i = it->second;
        ClosedWalk inner, outer;
        for (std::size_t t = i + 1; t <= j; ++t) {
          inner.columns.push_back(piece.columns[t]);
          inner.rows.push_back(piece.rows[t]);
        }
        for (std::size_t t = 0; t < k; ++t) {
          if (t > i && t <= j) continue;
          outer.columns.push_back(piece.columns[t]);
          outer.rows.push_back(piece.rows[t]);
        }
        work.push_back(std::move(outer));
        work.push_back(std::move(inner));
        cut = true;
        break;
      }
      row_at[piece.rows[j]] = j;
    }
    if (cut) continue;
    if (k == 1) {
      out.gamma[{piece.rows[0], piece.columns[0]}] += 1;
    } else {
      out.cycle_relations.push_back(relation_of_walk(piece));
      out.cycles.push_back(std::move(piece));
    }
  }
  return out;
}

bool all_relations_diagonal(const BipartiteSupport& s, int k, std::uint64_t budget) {
  for (const auto& [rel, n] : relation_table(s, k, budget)) {
    if (rel.alpha != rel.beta) return false;
  }
  return true;
}

double phi_expand(const BipartiteSupport& s, const RelationTable& table, const SignAssignment& eps,
                  const Coefficients& a) {
  if (eps.size() != s.size() || a.size() != s.size()) {
    throw InputError("signs and coefficients must have one entry per edge");
  }
  CompensatedSum re, im;
  for (const auto& [rel, n] : table) {
    Complex term(static_cast<double>(n), 0.0);
    for (const auto& [e, m] : rel.alpha) {
      const std::size_t q = index_of(s, e);
      term *= ipow(std::conj(eps[q]) * std::conj(a[q]), m);
    }
    for (const auto& [e, m] : rel.beta) {
      const std::size_t q = index_of(s, e);
      term *= ipow(eps[q] * a[q], m);
    }
    re.add(term.real());
    im.add(term.imag());
  }
  const double real = re.value();
  const double imag = im.value();
  if (std::abs(imag) > 1e-9 * std::abs(real) + 1e-12) {
    std::ostringstream msg;
    msg << "walk expansion has non-negligible imaginary part " << imag << " (real " << real << ")";
    throw NumericalError(msg.str());
  }
  return real;
}

double phi_expand(const BipartiteSupport& s, int k, const SignAssignment& eps,
                  const Coefficients& a, std::uint64_t budget) {
  return phi_expand(s, relation_table(s, k, budget), eps, a);
}

}  // namespace uncond
