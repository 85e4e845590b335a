#pragma once

// Dense complex matrices, singular values, Schatten p-norms and the
// search engine for lower bounds on unconditional constants.

#include <cstdint>
#include <limits>
#include <map>
#include <string_view>
#include <vector>

#include "uncond/signs.hpp"
#include "uncond/support_graph.hpp"

namespace uncond {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix; both dimensions must be >= 1.
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<Complex> row_major);

  static ComplexMatrix identity(int n);
  /// Σ_q values[q] e_q over the edges of `s` (n_rows × n_cols).
  static ComplexMatrix from_support(const BipartiteSupport& s, const std::vector<Complex>& values);
  /// u ⊗ v with entries u_r v_c (no conjugation).
  static ComplexMatrix outer(const std::vector<Complex>& u, const std::vector<Complex>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Complex operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Complex s) const;
  double max_abs_diff(const ComplexMatrix& o) const;
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}; "im" optional.
ComplexMatrix parse_matrix(std::string_view text);

/// Descending singular values (one-sided Jacobi). Throws InputError on
/// non-finite entries.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending (cyclic Jacobi).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Σ σ_i^p for finite p > 0.
double schatten_power(const std::vector<double>& sigma, double p);
/// (Σ σ_i^p)^{1/p}, or max σ_i for p = kInfinity. Quasi-norm for p < 1.
double schatten_norm(const std::vector<double>& sigma, double p);
double schatten_norm(const ComplexMatrix& m, double p);

enum class MultiplierDomain {
  /// Entries outside the multiplier's domain are zeroed.
  Relative,
  /// Entries outside the domain are kept.
  Total,
};

/// (φ * x)_rc = φ_rc x_rc on the domain of φ.
ComplexMatrix schur_product(const std::map<Edge, Complex>& phi, const ComplexMatrix& m,
                            MultiplierDomain domain);

/// D_η m D_ζ: row r scaled by η(r), column c by ζ(c).
ComplexMatrix diagonal_multiply(const std::vector<Complex>& eta, const ComplexMatrix& m,
                                const std::vector<Complex>& zeta);

/// ‖Σ ε_q a_q e_q‖_p^p through singular values; p must be an even integer.
double phi_direct(const BipartiteSupport& s, int p, const SignAssignment& eps,
                  const Coefficients& a);

/// ‖Σ ε_q a_q e_q‖_p / ‖Σ a_q e_q‖_p (0 when the denominator vanishes).
double sign_ratio(const BipartiteSupport& s, double p, const std::vector<Complex>& eps,
                  const Coefficients& a);

struct SearchOptions {
  std::size_t trials = 64;
  std::uint64_t seed = 1;
  /// Coordinate ascent after sampling.
  bool refine = true;
  int max_sweeps = 200;
  double sweep_tolerance = 1e-9;
  /// Real signs are exhausted (modulo ε ↦ -ε) up to this many edges.
  std::size_t exhaustive_limit = 20;
};

/// Lower bound on an unconditional constant with the (ε, a) attaining it.
struct ConstantEstimate {
  double value = 1.0;
  std::vector<Complex> signs;
  Coefficients coefficients;
  SignMode mode = SignMode::Real;
  bool exhaustive_signs = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// The estimate certifies a lower bound only.
  static constexpr bool lower_bound_only = true;
};

/// max over ε ∈ {±1}^I and sampled a of the sign ratio. Each trial draws its
/// own start from (seed, trial index), so estimates never decrease when
/// trials grow.
ConstantEstimate real_unconditional_constant(const BipartiteSupport& s, double p,
                                             const SearchOptions& options = {});

/// Same with ε on the unit circle, refined by per-coordinate phase ascent.
ConstantEstimate complex_unconditional_constant(const BipartiteSupport& s, double p,
                                                const SearchOptions& options = {});

struct EigencurvePoint {
  double operator_norm = 0.0;
  double power = 0.0;  // ‖x(t)‖_p^p
};

/// x(t) = [[1, √2], [√2, t]] through its closed-form eigenvalues
/// (1 + t ± √(9 - 2t + t²)) / 2.
EigencurvePoint eigencurve_check(double t, double p);

ComplexMatrix eigencurve_matrix(double t);

}  // namespace uncond
