#include "uncond/signs.hpp"

#include <cmath>
#include <string>

namespace uncond {

SignAssignment::SignAssignment(const BipartiteSupport& s, std::vector<Complex> values,
                               SignMode mode)
    : values_(std::move(values)), mode_(mode) {
  if (values_.size() != s.size()) {
    throw InputError("sign assignment has " + std::to_string(values_.size()) +
                     " values for a support with " + std::to_string(s.size()) + " edges");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const Complex v = values_[i];
    if (mode == SignMode::Real) {
      if (v.imag() != 0.0 || (v.real() != 1.0 && v.real() != -1.0)) {
        throw InputError("real sign at edge " + std::to_string(i) + " is not +1 or -1");
      }
    } else if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
               std::abs(std::abs(v) - 1.0) > 1e-12) {
      throw InputError("sign at edge " + std::to_string(i) + " is not unimodular");
    }
  }
}

SignAssignment SignAssignment::ones(const BipartiteSupport& s, SignMode mode) {
  return SignAssignment(s, std::vector<Complex>(s.size(), Complex(1.0, 0.0)), mode);
}

}  // namespace uncond
