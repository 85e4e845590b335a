#pragma once

// Cycle and Hankel supports, n-independent integer sets, the transfer
// construction from integer sets, the Fano incidence fixture and the
// Moore-type vertex bound for supports of large girth.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "uncond/support_graph.hpp"

namespace uncond {

/// Finite set of nonnegative integers, kept sorted and duplicate-free.
class IntegerSet {
 public:
  IntegerSet() = default;
  /// Sorts and removes duplicates; throws InputError on negative values.
  explicit IntegerSet(std::vector<long long> elements);

  const std::vector<long long>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(long long x) const;
  bool operator==(const IntegerSet&) const = default;

 private:
  std::vector<long long> elements_;
};

/// JSON array of nonnegative integers.
IntegerSet parse_integer_set(std::string_view text);

/// {(i, i), (i, i+1 mod s)} on s rows and s columns; girth 2s.
BipartiteSupport cycle_support(int s);

/// {(r, c) : r + c ∈ Λ} inside n_rows × n_cols.
BipartiteSupport hankel_support(const IntegerSet& lambda, int n_rows, int n_cols);

inline constexpr std::uint64_t kMultisetBudget = 10'000'000;

struct IndependenceResult {
  bool independent = true;
  /// Two distinct n-multisets (ascending) with equal sums.
  std::optional<std::pair<std::vector<long long>, std::vector<long long>>> witness;
};

/// Brute force over n-multisets of Λ in lexicographic order. The witness is
/// the first collision between repetition-free multisets if there is one,
/// else the first collision met. Throws BudgetExceeded when there are more
/// than kMultisetBudget multisets.
IndependenceResult is_n_independent(const IntegerSet& lambda, int n);

struct TransferResult {
  BipartiteSupport support;
  /// Every value has at most one representation r + c with r ∈ R, c ∈ C.
  bool valid = false;
  /// (r, c, r', c') with r + c = r' + c', when not valid.
  std::optional<std::array<long long, 4>> collision;
};

/// Rows index r_set, columns index c_set; edge (i, j) iff r_i + c_j ∈ Λ.
TransferResult transfer_support(const IntegerSet& r_set, const IntegerSet& c_set,
                                const IntegerSet& lambda);

/// Incidence of the Fano plane: rows are the 7 lines, columns the 7 points.
BipartiteSupport fano_incidence();

/// Every two columns share exactly one row.
bool is_pairwise_balanced(const BipartiteSupport& s);

struct MooreSlack {
  double slack = 0.0;
  /// 2 <= n <= m and e >= m, the range where the bound is stated.
  bool meaningful = false;
};

/// n - Σ_{i=0}^k (e/m - 1)^⌈i/2⌉ (e/n - 1)^⌊i/2⌋ with n columns, m rows and
/// e edges.
MooreSlack moore_slack(long long n, long long m, long long e, int k);

class MooreBoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MooreReport {
  /// even_girth > 2k (forests included).
  bool girth_ok = false;
  double slack = 0.0;
  bool meaningful = false;
};

/// Throws MooreBoundViolation if girth_ok and meaningful but slack < -1e-9.
MooreReport moore_check(const BipartiteSupport& s, int k);

}  // namespace uncond
