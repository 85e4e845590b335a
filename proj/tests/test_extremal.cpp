#include <gtest/gtest.h>

#include <random>
#include <functional>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "uncond/classifier.hpp"
#include "uncond/closed_walks.hpp"
#include "uncond/extremal_constructions.hpp"

using namespace uncond;

namespace {

IntegerSet set_of(std::vector<long long> v) { return IntegerSet(std::move(v)); }

IntegerSet random_set(std::mt19937_64& rng, long long max_value, int max_size) {
  const int size = std::uniform_int_distribution<int>(1, max_size)(rng);
  std::vector<long long> v;
  for (int i = 0; i < size; ++i) v.push_back(std::uniform_int_distribution<long long>(0, max_value)(rng));
  return IntegerSet(v);
}

/// Multisets of size n from Λ by recursion, grouped by sum.
bool oracle_independent(const IntegerSet& lambda, int n) {
  std::map<long long, int> sums;
  std::vector<long long> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == n) {
      long long total = 0;
      for (long long x : pick) total += x;
      ++sums[total];
      return;
    }
    for (std::size_t i = from; i < lambda.size(); ++i) {
      pick.push_back(lambda.elements()[i]);
      rec(i);
      pick.pop_back();
    }
  };
  rec(0);
  for (const auto& [sum, count] : sums) {
    if (count > 1) return false;
  }
  return true;
}

}  // namespace

TEST(IntegerSet, SortsAndRejectsNegatives) {
  EXPECT_EQ(set_of({3, 1, 3, 2}).elements(), (std::vector<long long>{1, 2, 3}));
  EXPECT_THROW(set_of({1, -1}), InputError);
  EXPECT_EQ(parse_integer_set("[5, 0, 5]"), set_of({0, 5}));
  EXPECT_THROW(parse_integer_set("[1.5]"), InputError);
  EXPECT_THROW(parse_integer_set("{}"), InputError);
  EXPECT_TRUE(set_of({4, 9}).contains(9));
  EXPECT_FALSE(set_of({4, 9}).contains(5));
}

TEST(CycleSupport, ShapeAndGirth) {
  for (int s = 2; s <= 7; ++s) {
    const auto c = cycle_support(s);
    EXPECT_EQ(c.size(), static_cast<std::size_t>(2 * s));
    EXPECT_EQ(c.n_rows(), s);
    EXPECT_EQ(c.n_cols(), s);
    ASSERT_TRUE(even_girth(c).has_value());
    EXPECT_EQ(even_girth(c)->length, 2 * s);
    EXPECT_EQ(oracle::brute_force_girth(c), 2 * s);
  }
  EXPECT_THROW(cycle_support(1), InputError);
}

TEST(HankelSupport, Examples) {
  const auto single = hankel_support(set_of({0}), 3, 3);
  EXPECT_EQ(single.edges(), (std::vector<Edge>{{0, 0}}));
  const auto two = hankel_support(set_of({0, 1}), 2, 2);
  EXPECT_EQ(std::set<Edge>(two.edges().begin(), two.edges().end()), (std::set<Edge>{{0, 0}, {0, 1}, {1, 0}}));
  const auto h = hankel_support(set_of({2, 3, 4}), 5, 5);
  // col 0, row 2, col 2, row 1, col 1, row 3.
  for (Edge e : std::vector<Edge>{{2, 0}, {2, 2}, {1, 2}, {1, 1}, {3, 1}, {3, 0}}) EXPECT_TRUE(h.contains(e));
  // {1, 2, 4} is 2-independent: no 4-cycle, although 6-cycles remain.
  EXPECT_EQ(oracle::brute_force_girth(hankel_support(set_of({1, 2, 4}), 5, 5)), 6);
  EXPECT_THROW(hankel_support(set_of({0}), 0, 3), InputError);
}

TEST(HankelSupport, FourCycleIffNotTwoIndependent) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto lambda = random_set(rng, 30, 6);
    const int n = static_cast<int>(lambda.elements().back()) + 1;
    const auto h = hankel_support(lambda, n, n);
    for (const Edge& e : h.edges()) EXPECT_TRUE(lambda.contains(e.row + e.col));
    const auto g = oracle::brute_force_girth(h);
    EXPECT_EQ(is_n_independent(lambda, 2).independent, !(g && *g == 4)) << t;
  }
}

TEST(Independence, Examples) {
  EXPECT_TRUE(is_n_independent(set_of({1, 2, 5}), 2).independent);
  const auto r = is_n_independent(set_of({1, 2, 3, 4}), 2);
  EXPECT_FALSE(r.independent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->first, (std::vector<long long>{1, 4}));
  EXPECT_EQ(r.witness->second, (std::vector<long long>{2, 3}));
  EXPECT_TRUE(is_n_independent(set_of({1, 2, 3, 4, 100}), 1).independent);
  // The only collision needs a repeated element: 0 + 2 = 1 + 1.
  const auto repeated = is_n_independent(set_of({0, 1, 2}), 2);
  ASSERT_TRUE(repeated.witness.has_value());
  EXPECT_EQ(repeated.witness->first, (std::vector<long long>{0, 2}));
  EXPECT_EQ(repeated.witness->second, (std::vector<long long>{1, 1}));
  EXPECT_THROW(is_n_independent(set_of({1}), 0), InputError);
}

TEST(Independence, AgreesWithOracleAndWitnessesAreValid) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto lambda = random_set(rng, 40, 6);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto r = is_n_independent(lambda, n);
    EXPECT_EQ(r.independent, oracle_independent(lambda, n));
    if (!r.independent) {
      const auto& [a, b] = *r.witness;
      EXPECT_NE(a, b);
      EXPECT_EQ(a.size(), static_cast<std::size_t>(n));
      EXPECT_EQ(std::accumulate(a.begin(), a.end(), 0LL), std::accumulate(b.begin(), b.end(), 0LL));
      for (long long x : a) EXPECT_TRUE(lambda.contains(x));
      for (long long x : b) EXPECT_TRUE(lambda.contains(x));
    }
  }
}

TEST(Independence, Budget) {
  std::vector<long long> big;
  for (long long i = 0; i < 200; ++i) big.push_back(i * i * i);
  EXPECT_THROW(is_n_independent(IntegerSet(big), 6), BudgetExceeded);
  // C(102, 4) = 4249575 multisets fit.
  std::vector<long long> range;
  for (long long i = 0; i < 99; ++i) range.push_back(i);
  EXPECT_NO_THROW(is_n_independent(IntegerSet(range), 4));
}

TEST(Transfer, Examples) {
  const auto ok = transfer_support(set_of({0, 10}), set_of({0, 1, 2}), set_of({1, 11}));
  EXPECT_TRUE(ok.valid);
  EXPECT_FALSE(ok.collision.has_value());
  EXPECT_EQ(ok.support.edges(), (std::vector<Edge>{{0, 1}, {1, 1}}));
  EXPECT_EQ(ok.support.n_rows(), 2);
  EXPECT_EQ(ok.support.n_cols(), 3);

  const auto bad = transfer_support(set_of({0, 1}), set_of({0, 1}), set_of({1}));
  EXPECT_FALSE(bad.valid);
  ASSERT_TRUE(bad.collision.has_value());
  const auto [r, c, r2, c2] = *bad.collision;
  EXPECT_EQ(r + c, r2 + c2);
}

TEST(Transfer, IndependentSpectraGiveLargeGirth) {
  std::mt19937_64 rng(7);
  int checked[4] = {0, 0, 0, 0};
  for (int t = 0; t < 4000 && (checked[2] < 20 || checked[3] < 10); ++t) {
    // Sparse R (multiples of 50) and C (< 50) always have unique representation.
    std::vector<long long> rows, cols;
    for (int i = 0; i < 4; ++i) rows.push_back(50LL * std::uniform_int_distribution<int>(0, 5)(rng));
    for (int i = 0; i < 4; ++i) cols.push_back(std::uniform_int_distribution<int>(0, 49)(rng));
    std::vector<long long> lambda;
    for (int i = 0; i < 6; ++i) lambda.push_back(std::uniform_int_distribution<int>(0, 299)(rng));
    const auto res = transfer_support(IntegerSet(rows), IntegerSet(cols), IntegerSet(lambda));
    ASSERT_TRUE(res.valid);
    for (int n = 2; n <= 3; ++n) {
      if (!is_n_independent(IntegerSet(lambda), n).independent) continue;
      ++checked[n];
      const auto g = even_girth(res.support);
      EXPECT_TRUE(!g || g->length > 2 * n);
      EXPECT_TRUE(all_relations_diagonal(res.support, n));
      EXPECT_TRUE(classify(res.support).one_unconditional_at(2.0 * n));
    }
  }
  EXPECT_GE(checked[2], 20);
  EXPECT_GE(checked[3], 10);
}

TEST(Fano, Incidence) {
  const auto f = fano_incidence();
  EXPECT_EQ(f.size(), 21u);
  EXPECT_EQ(f.n_rows(), 7);
  EXPECT_EQ(f.n_cols(), 7);
  EXPECT_TRUE(is_pairwise_balanced(f));
  EXPECT_EQ(oracle::brute_force_girth(f), 6);
  const long long e = 21, m = 7, n = 7;
  EXPECT_EQ(e * e - m * e - m * n * (n - 1), 0);
  // The hexagon is the degenerate triangle plane; the octagon is not balanced.
  EXPECT_TRUE(is_pairwise_balanced(cycle_support(3)));
  EXPECT_FALSE(is_pairwise_balanced(cycle_support(4)));
}

TEST(Moore, SlackExamples) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(moore_slack(k + 1, k + 1, 2 * k + 2, k).slack, 0.0, 1e-12);
  }
  EXPECT_NEAR(moore_slack(7, 7, 21, 2).slack, 0.0, 1e-12);
  EXPECT_TRUE(moore_slack(7, 7, 21, 2).meaningful);
  EXPECT_NEAR(moore_slack(4, 4, 4, 2).slack, 3.0, 1e-12);
  EXPECT_FALSE(moore_slack(5, 4, 8, 2).meaningful);
  EXPECT_FALSE(moore_slack(1, 4, 4, 2).meaningful);
  EXPECT_THROW(moore_slack(0, 4, 4, 2), InputError);
}

TEST(Moore, CheckExamples) {
  const auto fano = moore_check(fano_incidence(), 2);
  EXPECT_TRUE(fano.girth_ok);
  EXPECT_NEAR(fano.slack, 0.0, 1e-12);
  const BipartiteSupport k22(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_FALSE(moore_check(k22, 2).girth_ok);
  for (int k = 1; k <= 5; ++k) {
    const auto r = moore_check(cycle_support(k + 1), k);
    EXPECT_TRUE(r.girth_ok);
    EXPECT_NEAR(r.slack, 0.0, 1e-12);
  }
}

TEST(Moore, SlackNonnegativeOnLargeGirthSupports) {
  std::mt19937_64 rng(11);
  int meaningful = 0;
  for (int t = 0; t < 3000; ++t) {
    const auto s = oracle::random_support(rng, 7, 7, 14);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const auto r = moore_check(s, k);
    const auto g = oracle::brute_force_girth(s);
    EXPECT_EQ(r.girth_ok, !g || *g > 2 * k);
    if (r.girth_ok && r.meaningful) {
      ++meaningful;
      EXPECT_GE(r.slack, -1e-9);
    }
  }
  EXPECT_GE(meaningful, 100);
}
