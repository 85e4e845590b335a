#pragma once

// Verdicts over all p for a finite support, and bounded evidence for the
// asymptotic path/cycle criteria on increasing families of supports.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uncond/extremal_constructions.hpp"
#include "uncond/support_graph.hpp"

namespace uncond {

struct UnconditionalityProfile {
  bool forest = true;
  std::optional<int> even_girth;
  /// 1-unconditional for every p ∈ (0, ∞]; holds iff forest.
  bool all_p = true;
  /// When !all_p: {2, 4, ..., g - 2}.
  std::vector<int> even_p;
  bool v_interpolation_constant_1 = true;
  /// Shortest cycle, present iff !forest.
  std::optional<Cycle> cycle_witness;
  /// Sign patterns factor as ζ(c) η(r); holds iff forest.
  bool factorization_available = true;

  bool one_unconditional_at(double p) const;
  /// "all p in (0, inf]" or "{2, 4, 6}".
  std::string describe_p() const;
};

UnconditionalityProfile classify(const BipartiteSupport& s);

/// Every path has length at most 2, i.e. the support is a union of stars.
bool star_union_tensor_verdict(const BipartiteSupport& s);

/// Increasing sequence of supports indexed by level n >= 0.
class SupportFamily {
 public:
  using Generator = std::function<BipartiteSupport(int)>;

  SupportFamily(Generator generator, std::string description)
      : generator_(std::move(generator)), description_(std::move(description)) {}

  BipartiteSupport level(int n) const;
  const std::string& description() const { return description_; }

  /// Levels 0..max_level; throws InputError if some level does not contain
  /// the previous one.
  std::vector<BipartiteSupport> levels(int max_level) const;

  /// Union over n of the paths (col 0, row nj+1, col nj+1, ..., row nj+j,
  /// col nj+j, row 0) of length 2j+1; level n keeps paths 0..n.
  static SupportFamily path_union(int j);
  /// path_union(j) with the edge (row 0, col 0) added at every level.
  static SupportFamily path_union_plus(int j);
  /// hankel_support(Λ, n+1, n+1) at level n.
  static SupportFamily hankel(const IntegerSet& lambda);
  static SupportFamily constant(const BipartiteSupport& s);
  /// Levels beyond the last one repeat it.
  static SupportFamily explicit_levels(std::vector<BipartiteSupport> levels);

 private:
  Generator generator_;
  std::string description_;
};

/// {"levels": [support, ...]} or a bare array of supports.
SupportFamily parse_family_levels(std::string_view text);

struct JkPathEvidence {
  Path path;
  /// Smallest deletion level whose rectangle hull blocks every completion;
  /// -1 when no completion exists even without deletion.
  int kill_level = -1;
};

struct JkCounterexample {
  Path path;
  /// (deletion level, completing cycle avoiding that level's hull).
  std::vector<std::pair<int, Cycle>> cycles;
};

/// Bounded evidence: deletion sets are the rectangle hulls of levels
/// 0..max_level-1, completions use edges of level max_level only.
struct JkReport {
  int k = 1;
  int max_level = 1;
  bool holds = true;
  std::size_t paths_checked = 0;
  /// Largest kill level over all paths (-1 if no path has a completion).
  int max_kill_level = -1;
  std::vector<JkPathEvidence> evidence;
  std::optional<JkCounterexample> counterexample;
};

JkReport check_Jk(const SupportFamily& family, int k, int max_level);

struct AsymptoticDistance {
  /// nullopt stands for ∞.
  std::optional<int> distance;
  /// Deletion level attaining the maximum (-1 for no deletion).
  int level = -1;
  int max_level = 1;
};

/// Max over deletion levels ℓ ∈ {-1, 0, ..., max_level-1} of the distance
/// between (row r) and (col c) in level max_level minus hull(ℓ); a lower
/// bound on d_∞(r, c).
AsymptoticDistance asymptotic_distance_lower_bound(const SupportFamily& family, int r, int c,
                                                   int max_level);

struct UmapVerdict {
  int p = 2;
  JkReport jk;
  /// The statement the verdict rests on.
  std::string equivalence;
};

/// Delegates to check_Jk(family, p/2, max_level).
UmapVerdict umap_verdict_even_p(const SupportFamily& family, int p, int max_level);

}  // namespace uncond
