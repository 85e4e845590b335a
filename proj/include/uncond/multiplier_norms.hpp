#pragma once

// Closed-form norms of sign multipliers on cycles, of Fourier multipliers on
// Z/sZ and of positive semidefinite multipliers, plus the factorization of
// sign patterns on forests into row and column phases.

#include <map>
#include <stdexcept>
#include <vector>

#include "uncond/schatten_numeric.hpp"
#include "uncond/signs.hpp"
#include "uncond/support_graph.hpp"

namespace uncond {

/// Sign multiplier on a 2s-cycle reduced to one ϑ placed on every edge
/// (i, i+1), with ϑ^s equal to the cycle product.
struct CycleMultiplier {
  int s = 2;
  Complex theta{1.0, 0.0};
};

struct CycleReduction {
  CycleMultiplier multiplier;
  /// ε̄_00 ε_01 ε̄_11 ε_12 ⋯ ε̄_{s-1,s-1} ε_{s-1,0}.
  Complex product{1.0, 0.0};
};

/// `eps` lives on cycle_support(s); theta is the principal s-th root.
CycleReduction cycle_reduce(int s, const SignAssignment& eps);

/// max_{z^s = -1} |θ + z| / |1 + e^{iπ/s}|: the norm on S^1 and S^∞.
double cycle_norm_endpoint(int s, Complex theta);

/// True iff the multiplier is isometric on S^p: product 1 (to 1e-12), or p
/// an even integer with p/2 ∈ {1, ..., s-1}.
bool cycle_isometry(int s, const SignAssignment& eps, double p);
bool cycle_isometry_for_product(int s, Complex product, double p);

/// sec(π/2s): the real constant on S^1 and S^∞ (product -1 is the only
/// nontrivial real orbit).
double cycle_real_constant(int s);

struct CycleComplexConstant {
  double value = 1.0;
  Complex theta{1.0, 0.0};
  /// Obtained by a 1-D maximization over arg θ ∈ [0, π/s].
  static constexpr bool numerically_resolved = true;
};

CycleComplexConstant cycle_complex_constant(int s);

/// φ on the residues of Z/sZ.
struct CyclicSpectrum {
  int modulus = 1;
  std::vector<int> lambda;
  std::map<int, Complex> phi;
};

/// Checks modulus >= 1, lambda ⊆ [0, s) duplicate-free, dom φ = lambda.
void validate(const CyclicSpectrum& spec);

/// f(g) = (1/s) Σ_γ φ(γ) e^{-2πi gγ/s}, so that φ(γ) = Σ_g f(g) e^{2πi gγ/s}.
/// Requires the full spectrum.
std::vector<Complex> inverse_fourier(const CyclicSpectrum& spec);

/// ‖f‖_1: the norm of convolution by f on ℓ^1 and ℓ^∞ of Z/sZ. p must be 1
/// or ∞ and lambda must be all of Z/sZ.
double fourier_multiplier_norm(const CyclicSpectrum& spec, double p);

/// s × s Toeplitz matrix Φ_rc = φ(r - c mod s).
ComplexMatrix circulant_multiplier(const CyclicSpectrum& spec);

struct PositiveDecomposition {
  ComplexMatrix positive;
  ComplexMatrix negative;
};

/// Φ = P - N with P, N positive semidefinite, split by the sign of Re f(g).
/// Requires a real-valued f.
PositiveDecomposition positive_decomposition(const CyclicSpectrum& spec);

class NotPositiveError : public std::runtime_error {
 public:
  NotPositiveError(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Default tolerance 1e-9 · max diagonal.
inline constexpr double kDefaultPsdTolerance = -1.0;

/// max |φ_nn| for a positive semidefinite φ. Throws NotPositiveError with the
/// smallest eigenvalue when it is below -tol or φ is not Hermitian.
double positive_multiplier_norm(const ComplexMatrix& phi, double tol = kDefaultPsdTolerance);

struct ForestFactorization {
  /// One phase per column.
  std::vector<Complex> zeta;
  /// One phase per row.
  std::vector<Complex> eta;
};

/// ε_rc = ζ(c) η(r) on every edge. Each tree is rooted at its smallest row
/// with η = 1; vertices without edges get 1. Throws NotAForestError.
ForestFactorization forest_factorize(const BipartiteSupport& s, const SignAssignment& eps);

}  // namespace uncond
