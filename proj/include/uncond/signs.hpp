#pragma once

#include <complex>
#include <vector>

#include "uncond/support_graph.hpp"

namespace uncond {

using Complex = std::complex<double>;

/// Coefficients a_q, one per edge of a support, in edges() order.
using Coefficients = std::vector<Complex>;

enum class SignMode { Real, Complex };

/// Unit-modulus scalars ε_q on the edges of a support (edges() order).
/// Real mode values are exactly ±1.
class SignAssignment {
 public:
  SignAssignment() = default;
  /// Throws InputError if the size does not match, a value is off the unit
  /// circle by more than 1e-12, or a real-mode value is not ±1.
  SignAssignment(const BipartiteSupport& s, std::vector<Complex> values, SignMode mode);

  static SignAssignment ones(const BipartiteSupport& s, SignMode mode = SignMode::Real);

  SignMode mode() const { return mode_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](std::size_t edge_index) const { return values_[edge_index]; }

 private:
  std::vector<Complex> values_;
  SignMode mode_ = SignMode::Real;
};

}  // namespace uncond
