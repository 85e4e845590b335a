#pragma once

// Closed walks of even length 2k, their relations (α, β) and the expansion
//
//   ‖Σ ε_q a_q e_q‖_{2k}^{2k} = Σ n_αβ ε^{β-α} ā^α a^β
//
// over closed walk relations.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "uncond/signs.hpp"
#include "uncond/support_graph.hpp"

namespace uncond {

inline constexpr std::uint64_t kDefaultWalkBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t reached)
      : std::runtime_error(what), reached_(reached) {}
  /// Number of walks already produced when the budget ran out.
  std::uint64_t reached() const { return reached_; }

 private:
  std::uint64_t reached_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (c_1, r_1, ..., c_k, r_k): columns[i] = c_{i+1}, rows[i] = r_{i+1}.
struct ClosedWalk {
  std::vector<int> columns;
  std::vector<int> rows;

  std::size_t half_length() const { return columns.size(); }
  std::vector<Vertex> vertices() const;
  auto operator<=>(const ClosedWalk&) const = default;
};

/// Sparse edge multiplicities; zero entries are never stored.
using EdgeCounts = std::map<Edge, int>;

struct ClosedWalkRelation {
  EdgeCounts alpha;
  EdgeCounts beta;

  int k() const;
  auto operator<=>(const ClosedWalkRelation&) const = default;
};

using RelationTable = std::map<ClosedWalkRelation, std::uint64_t>;

/// Visits every closed walk of length p = 2k exactly once, in lexicographic
/// order of (c_1, r_1, c_2, ...). Throws BudgetExceeded past `budget` walks.
void for_each_closed_walk(const BipartiteSupport& s, int p,
                          const std::function<void(const ClosedWalk&)>& visit,
                          std::uint64_t budget = kDefaultWalkBudget);

std::vector<ClosedWalk> enumerate_closed_walks(const BipartiteSupport& s, int p,
                                               std::uint64_t budget = kDefaultWalkBudget);

/// α_q = #{i : (r_i, c_i) = q}, β_q = #{i : (r_i, c_{i+1}) = q}.
ClosedWalkRelation relation_of_walk(const ClosedWalk& w);

/// Closed walk relations of half-length k with their walk counts n_αβ.
RelationTable relation_table(const BipartiteSupport& s, int k,
                             std::uint64_t budget = kDefaultWalkBudget);

/// No row and no column is touched by the α-supports of both relations.
bool is_row_column_disjoint(const ClosedWalkRelation& a, const ClosedWalkRelation& b);

/// Σα = Σβ = k and the row and column sums of α and β agree.
bool is_balanced(const ClosedWalkRelation& rel);

/// Balanced, k >= 1, and not a sum of two row and column disjoint balanced
/// couples. Equivalent to connectivity of supp α ∪ supp β.
bool is_closed_walk_relation(const ClosedWalkRelation& rel);

ClosedWalkRelation add(const ClosedWalkRelation& a, const ClosedWalkRelation& b);

struct CycleDecomposition {
  /// Multiplicities of the length-2 pieces; they contribute (γ, γ).
  EdgeCounts gamma;
  std::vector<ClosedWalk> cycles;
  std::vector<ClosedWalkRelation> cycle_relations;
};

/// Repeatedly cuts the walk at its first repeated vertex until every piece is
/// a cycle or a back-and-forth step over a single edge.
CycleDecomposition decompose_into_cycles(const ClosedWalk& w);

/// True iff every relation of half-length k has α = β.
bool all_relations_diagonal(const BipartiteSupport& s, int k,
                            std::uint64_t budget = kDefaultWalkBudget);

/// Evaluates Σ n_αβ ε^{β-α} ā^α a^β from a precomputed table.
double phi_expand(const BipartiteSupport& s, const RelationTable& table, const SignAssignment& eps,
                  const Coefficients& a);

double phi_expand(const BipartiteSupport& s, int k, const SignAssignment& eps,
                  const Coefficients& a, std::uint64_t budget = kDefaultWalkBudget);

}  // namespace uncond
