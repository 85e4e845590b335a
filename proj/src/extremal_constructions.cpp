#include "uncond/extremal_constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "uncond/closed_walks.hpp"

namespace uncond {

IntegerSet::IntegerSet(std::vector<long long> elements) : elements_(std::move(elements)) {
  for (long long x : elements_) {
    if (x < 0) throw InputError("integer sets hold nonnegative values, got " + std::to_string(x));
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool IntegerSet::contains(long long x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

IntegerSet parse_integer_set(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("integer set JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("integer set must be a JSON array");
  std::vector<long long> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("integer set entries must be integers");
    v.push_back(x.get<long long>());
  }
  return IntegerSet(std::move(v));
}

BipartiteSupport cycle_support(int s) {
  if (s < 2) throw InputError("cycle_support needs s >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < s; ++i) {
    edges.push_back({i, i});
    edges.push_back({i, (i + 1) % s});
  }
  return BipartiteSupport(s, s, std::move(edges));
}

BipartiteSupport hankel_support(const IntegerSet& lambda, int n_rows, int n_cols) {
  if (n_rows < 1 || n_cols < 1) throw InputError("hankel_support needs dimensions >= 1");
  std::vector<Edge> edges;
  for (int r = 0; r < n_rows; ++r) {
    for (int c = 0; c < n_cols; ++c) {
      if (lambda.contains(static_cast<long long>(r) + c)) edges.push_back({r, c});
    }
  }
  return BipartiteSupport(n_rows, n_cols, std::move(edges));
}

IndependenceResult is_n_independent(const IntegerSet& lambda, int n) {
  if (n < 1) throw InputError("n-independence needs n >= 1");
  IndependenceResult out;
  const auto& el = lambda.elements();
  if (el.empty()) return out;
  // C(|Λ| + n - 1, n) multisets, capped just above the budget.
  std::uint64_t total = 1;
  for (int i = 1; i <= n && total <= kMultisetBudget; ++i) {
    total = total * (el.size() + static_cast<std::uint64_t>(i) - 1) / static_cast<std::uint64_t>(i);
  }
  if (total > kMultisetBudget) {
    throw BudgetExceeded("more than " + std::to_string(kMultisetBudget) + " multisets to enumerate", 0);
  }
  // A collision between repetition-free multisets is preferred as witness; it
  // also refutes uniqueness of sums of n distinct elements.
  std::map<long long, std::vector<long long>> seen, seen_distinct;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<long long> ms;
    long long sum = 0;
    bool distinct = true;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      ms.push_back(el[idx[i]]);
      sum += el[idx[i]];
      if (i > 0 && idx[i] == idx[i - 1]) distinct = false;
    }
    if (distinct) {
      auto [it, inserted] = seen_distinct.emplace(sum, ms);
      if (!inserted) {
        out.independent = false;
        out.witness = std::pair{it->second, ms};
        return out;
      }
    }
    auto [it, inserted] = seen.emplace(sum, ms);
    if (!inserted && out.independent) {
      out.independent = false;
      out.witness = std::pair{it->second, ms};
    }
    // Next nondecreasing index tuple.
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == el.size()) --pos;
    if (pos < 0) break;
    const std::size_t next = idx[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < n; ++i) idx[static_cast<std::size_t>(i)] = next;
  }
  return out;
}

TransferResult transfer_support(const IntegerSet& r_set, const IntegerSet& c_set,
                                const IntegerSet& lambda) {
  const auto& rs = r_set.elements();
  const auto& cs = c_set.elements();
  if (rs.empty() || cs.empty()) throw InputError("transfer_support needs nonempty row and column sets");
  TransferResult out;
  out.valid = true;
  std::map<long long, std::pair<long long, long long>> rep;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const long long sum = rs[i] + cs[j];
      auto [it, inserted] = rep.emplace(sum, std::pair{rs[i], cs[j]});
      if (!inserted && out.valid) {
        out.valid = false;
        out.collision = std::array<long long, 4>{it->second.first, it->second.second, rs[i], cs[j]};
      }
      if (lambda.contains(sum)) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  out.support = BipartiteSupport(static_cast<int>(rs.size()), static_cast<int>(cs.size()),
                                 std::move(edges));
  return out;
}

bool is_pairwise_balanced(const BipartiteSupport& s) {
  for (int a = 0; a < s.n_cols(); ++a) {
    for (int b = a + 1; b < s.n_cols(); ++b) {
      const auto ra = s.col_neighbors(a);
      const auto rb = s.col_neighbors(b);
      std::vector<int> common;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
      if (common.size() != 1) return false;
    }
  }
  return true;
}

BipartiteSupport fano_incidence() {
  static const int lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                  {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<Edge> edges;
  for (int l = 0; l < 7; ++l) {
    for (int p : lines[l]) edges.push_back({l, p});
  }
  BipartiteSupport s(7, 7, std::move(edges));
  if (!is_pairwise_balanced(s)) throw std::logic_error("Fano fixture is not a Steiner system");
  return s;
}

MooreSlack moore_slack(long long n, long long m, long long e, int k) {
  if (n < 1 || m < 1 || e < 1) throw InputError("moore_slack needs n, m, e >= 1");
  if (k < 0) throw InputError("moore_slack needs k >= 0");
  const double a = static_cast<double>(e) / static_cast<double>(m) - 1.0;
  const double b = static_cast<double>(e) / static_cast<double>(n) - 1.0;
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) sum += std::pow(a, (i + 1) / 2) * std::pow(b, i / 2);
  return {static_cast<double>(n) - sum, 2 <= n && n <= m && e >= m};
}

MooreReport moore_check(const BipartiteSupport& s, int k) {
  if (k < 1) throw InputError("moore_check needs k >= 1");
  MooreReport out;
  const auto g = even_girth(s);
  out.girth_ok = !g || g->length > 2 * k;
  if (s.empty()) return out;
  const MooreSlack m = moore_slack(s.n_cols(), s.n_rows(), static_cast<long long>(s.size()), k);
  out.slack = m.slack;
  out.meaningful = m.meaningful;
  if (out.girth_ok && out.meaningful && out.slack < -1e-9) {
    throw MooreBoundViolation("vertex bound violated with slack " + std::to_string(out.slack) +
                              " at girth beyond " + std::to_string(2 * k));
  }
  return out;
}

}  // namespace uncond
