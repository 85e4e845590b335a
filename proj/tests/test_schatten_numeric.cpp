#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "uncond/extremal_constructions.hpp"
#include "uncond/schatten_numeric.hpp"

using namespace uncond;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  return ComplexMatrix(rows, cols, oracle::random_complex(rng, static_cast<std::size_t>(rows) * cols));
}

BipartiteSupport full(int n) {
  std::vector<Edge> edges;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) edges.push_back({r, c});
  }
  return BipartiteSupport(n, n, edges);
}

SearchOptions quick(std::size_t trials, std::uint64_t seed = 1) {
  SearchOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(ComplexMatrix, RejectsBadShapesAndValues) {
  EXPECT_THROW(ComplexMatrix(0, 2), InputError);
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), InputError);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), InputError);
  EXPECT_THROW(parse_matrix(R"({"rows":1,"cols":2,"re":[[1]]})"), InputError);
  const auto m = parse_matrix(R"({"rows":1,"cols":2,"re":[[1,2]],"im":[[0,-1]]})");
  EXPECT_EQ(m(0, 1), Complex(2.0, -1.0));
}

TEST(SingularValues, Examples) {
  const auto id = singular_values(ComplexMatrix::identity(3));
  ASSERT_EQ(id.size(), 3u);
  for (double s : id) EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(singular_values(eigencurve_matrix(0.0))[0], 2.0, 1e-13);
  EXPECT_NEAR(singular_values(eigencurve_matrix(-1.0))[0], std::sqrt(3.0), 1e-13);
}

TEST(SingularValues, AgreeWithEigenAndFrobenius) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const int rows = std::uniform_int_distribution<int>(1, 7)(rng);
    const int cols = std::uniform_int_distribution<int>(1, 7)(rng);
    const auto m = random_matrix(rng, rows, cols);
    const auto sigma = singular_values(m);
    const auto expected = oracle::eigen_singular_values(m);
    ASSERT_EQ(sigma.size(), expected.size());
    EXPECT_TRUE(std::is_sorted(sigma.rbegin(), sigma.rend()));
    double frob = 0.0, sum_sq = 0.0;
    for (const auto& z : m.data()) frob += std::norm(z);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      EXPECT_GE(sigma[i], 0.0);
      EXPECT_NEAR(sigma[i], expected[i], 1e-11 * std::max(1.0, expected[0]));
      sum_sq += sigma[i] * sigma[i];
    }
    EXPECT_NEAR(sum_sq, frob, 1e-12 * frob);
  }
}

TEST(HermitianEigenvalues, MatchEigencurveClosedForm) {
  for (double t : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    const auto ev = hermitian_eigenvalues(eigencurve_matrix(t));
    const double root = std::sqrt(9.0 - 2.0 * t + t * t);
    EXPECT_NEAR(ev[0], (1.0 + t - root) / 2.0, 1e-13);
    EXPECT_NEAR(ev[1], (1.0 + t + root) / 2.0, 1e-13);
  }
}

TEST(SchattenNorm, Examples) {
  for (double p : {0.5, 1.0, 3.0, 4.0}) {
    EXPECT_NEAR(std::pow(schatten_norm(eigencurve_matrix(0.0), p), p), std::pow(2.0, p) + 1.0, 1e-11);
  }
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(schatten_norm(ComplexMatrix::identity(n), 2.0), std::sqrt(n), 1e-14);
  const ComplexMatrix ones(2, 2, std::vector<Complex>(4, Complex(1.0, 0.0)));
  for (double p : {0.3, 1.0, 2.0, 7.5, kInfinity}) EXPECT_NEAR(schatten_norm(ones, p), 2.0, 1e-12);
  EXPECT_THROW(schatten_norm(ones, 0.0), InputError);
  EXPECT_THROW(schatten_norm(ones, -1.0), InputError);
}

TEST(SchattenNorm, InvariantUnderDiagonalUnitaries) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const int rows = std::uniform_int_distribution<int>(1, 6)(rng);
    const int cols = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto m = random_matrix(rng, rows, cols);
    const auto moved = diagonal_multiply(oracle::random_unit(rng, rows), m, oracle::random_unit(rng, cols));
    for (double p : {0.5, 1.0, 2.0, 3.0, kInfinity}) {
      const double base = schatten_norm(m, p);
      EXPECT_NEAR(schatten_norm(moved, p), base, 1e-10 * base);
    }
  }
}

TEST(SchurProduct, Modes) {
  std::mt19937_64 rng(7);
  const auto m = random_matrix(rng, 2, 2);
  std::map<Edge, Complex> ones, upper, partial;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      ones[{r, c}] = 1.0;
      if (r <= c) upper[{r, c}] = 1.0;
    }
  }
  EXPECT_EQ(schur_product(ones, m, MultiplierDomain::Relative).max_abs_diff(m), 0.0);
  const auto tri = schur_product(upper, m, MultiplierDomain::Relative);
  EXPECT_EQ(tri(1, 0), Complex(0.0, 0.0));
  EXPECT_EQ(tri(0, 0), m(0, 0));
  EXPECT_EQ(tri(0, 1), m(0, 1));
  EXPECT_EQ(tri(1, 1), m(1, 1));

  partial[{0, 1}] = Complex(0.0, 2.0);
  const auto relative = schur_product(partial, m, MultiplierDomain::Relative);
  const auto total = schur_product(partial, m, MultiplierDomain::Total);
  EXPECT_EQ(relative(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ(total(0, 0), m(0, 0));
  EXPECT_EQ(relative(0, 1), Complex(0.0, 2.0) * m(0, 1));
  EXPECT_EQ(total(0, 1), relative(0, 1));

  std::map<Edge, Complex> outside{{{2, 0}, 1.0}};
  EXPECT_THROW(schur_product(outside, m, MultiplierDomain::Relative), InputError);
}

TEST(SchurProduct, IndicatorProjects) {
  const BipartiteSupport s(2, 3, {{0, 0}, {1, 2}});
  std::mt19937_64 rng(9);
  const auto m = random_matrix(rng, 2, 3);
  std::map<Edge, Complex> chi{{{0, 0}, 1.0}, {{1, 2}, 1.0}};
  const auto projected = schur_product(chi, m, MultiplierDomain::Relative);
  EXPECT_EQ(projected.max_abs_diff(ComplexMatrix::from_support(s, {m(0, 0), m(1, 2)})), 0.0);
  EXPECT_EQ(schur_product(chi, projected, MultiplierDomain::Relative).max_abs_diff(projected), 0.0);
}

TEST(PhiDirect, Examples) {
  const BipartiteSupport one(1, 1, {{0, 0}});
  EXPECT_NEAR(phi_direct(one, 2, SignAssignment::ones(one), {Complex(3.0, 0.0)}), 9.0, 1e-12);
  const BipartiteSupport k22(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_NEAR(phi_direct(k22, 4, SignAssignment::ones(k22), Coefficients(4, 1.0)), 16.0, 1e-12);
  EXPECT_THROW(phi_direct(k22, 3, SignAssignment::ones(k22), Coefficients(4, 1.0)), InputError);
}

TEST(SignRatio, ZeroDenominator) {
  const BipartiteSupport one(1, 1, {{0, 0}});
  EXPECT_EQ(sign_ratio(one, 2.0, {Complex(1.0, 0.0)}, {Complex(0.0, 0.0)}), 0.0);
}

TEST(ConstantSearch, Errors) {
  const BipartiteSupport one(1, 1, {{0, 0}});
  EXPECT_THROW(real_unconditional_constant(one, 2.0, quick(0)), InputError);
  EXPECT_THROW(real_unconditional_constant(one, 0.0, quick(1)), InputError);
  EXPECT_THROW(complex_unconditional_constant(one, -2.0, quick(1)), InputError);
  EXPECT_THROW(complex_unconditional_constant(one, 2.0, quick(0)), InputError);
}

TEST(ConstantSearch, ForestsStayAtOne) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 8; ++t) {
    const auto s = oracle::random_forest(rng, 6);
    for (double p : {1.0, 3.0, kInfinity}) {
      const auto real = real_unconditional_constant(s, p, quick(2, t));
      const auto complex = complex_unconditional_constant(s, p, quick(2, t));
      EXPECT_LE(real.value, 1.0 + 1e-9);
      EXPECT_LE(complex.value, 1.0 + 1e-9);
      EXPECT_GE(real.value, 1.0 - 1e-9);
      EXPECT_TRUE(real.exhaustive_signs);
    }
  }
}

TEST(ConstantSearch, ReportsAttainingPair) {
  const auto s = cycle_support(2);
  const auto est = real_unconditional_constant(s, kInfinity, quick(2));
  EXPECT_EQ(est.mode, SignMode::Real);
  EXPECT_EQ(est.trials, 2u);
  EXPECT_EQ(est.seed, 1u);
  EXPECT_TRUE(ConstantEstimate::lower_bound_only);
  EXPECT_NEAR(sign_ratio(s, kInfinity, est.signs, est.coefficients), est.value, 1e-12);
  for (const auto& e : est.signs) EXPECT_TRUE(e == Complex(1.0, 0.0) || e == Complex(-1.0, 0.0));
}

TEST(ConstantSearch, MonotoneInTrials) {
  const auto s = cycle_support(3);
  SearchOptions o = quick(1, 5);
  o.refine = false;
  double last = 0.0;
  for (std::size_t trials : {1u, 2u, 4u, 8u}) {
    o.trials = trials;
    const double v = real_unconditional_constant(s, 3.0, o).value;
    EXPECT_GE(v, last);
    last = v;
  }
}

TEST(ConstantSearch, Deterministic) {
  const auto s = cycle_support(3);
  const auto a = complex_unconditional_constant(s, 1.0, quick(2, 42));
  const auto b = complex_unconditional_constant(s, 1.0, quick(2, 42));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.signs, b.signs);
}

TEST(ConstantSearch, CycleAndFullSquareTargets) {
  EXPECT_NEAR(real_unconditional_constant(cycle_support(2), kInfinity, quick(4)).value, kSqrt2, 1e-3);
  EXPECT_NEAR(complex_unconditional_constant(cycle_support(3), 1.0, quick(4)).value, 2.0 / std::sqrt(3.0), 1e-3);
  EXPECT_NEAR(complex_unconditional_constant(full(2), kInfinity, quick(4)).value, kSqrt2, 1e-2);
}

TEST(Eigencurve, ValuesAtZero) {
  for (double p : {1.0, 2.0, 4.0, 6.5}) {
    const auto pt = eigencurve_check(0.0, p);
    EXPECT_NEAR(pt.operator_norm, 2.0, 1e-15);
    EXPECT_NEAR(pt.power, std::pow(2.0, p) + 1.0, 1e-12);
  }
  EXPECT_THROW(eigencurve_check(1.5, 2.0), InputError);
}

TEST(Eigencurve, SlopesAtZero) {
  const double h = 1e-5;
  auto slope = [&](auto f) { return (f(h) - f(-h)) / (2.0 * h); };
  EXPECT_NEAR(slope([](double t) { return eigencurve_check(t, kInfinity).operator_norm; }), 1.0 / 3.0, 1e-6);
  for (double p : {2.0, 3.0, 4.0, 6.0}) {
    const double expected = p / 6.0 * (std::pow(2.0, p) - 4.0);
    EXPECT_NEAR(slope([p](double t) { return eigencurve_check(t, p).power; }), expected, 1e-3) << p;
  }
  // Closed form against the generic SVD along the curve.
  for (double t : {-1.0, -0.25, 0.5, 1.0}) {
    EXPECT_NEAR(eigencurve_check(t, 4.0).power, std::pow(schatten_norm(eigencurve_matrix(t), 4.0), 4.0), 1e-10);
  }
}
