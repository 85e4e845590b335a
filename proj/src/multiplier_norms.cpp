#include "uncond/multiplier_norms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <sstream>

#include "uncond/extremal_constructions.hpp"

namespace uncond {

namespace {

constexpr double kPi = std::numbers::pi;

Complex edge_value(const BipartiteSupport& s, const SignAssignment& eps, Edge e) {
  return eps[*s.edge_index(e)];
}

}  // namespace

CycleReduction cycle_reduce(int s, const SignAssignment& eps) {
  const BipartiteSupport cyc = cycle_support(s);
  if (eps.size() != cyc.size()) {
    throw InputError("cycle_reduce needs one sign per edge of the " + std::to_string(2 * s) +
                     "-cycle");
  }
  Complex product(1.0, 0.0);
  for (int i = 0; i < s; ++i) {
    product *= std::conj(edge_value(cyc, eps, {i, i})) * edge_value(cyc, eps, {i, (i + 1) % s});
  }
  CycleReduction out;
  out.product = product;
  out.multiplier.s = s;
  // Principal argument in (-π, π]; a signed zero must not turn -1 into e^{-iπ}.
  double angle = std::arg(product);
  if (angle <= -std::numbers::pi + 1e-15) angle = std::numbers::pi;
  out.multiplier.theta = std::polar(1.0, angle / s);
  return out;
}

double cycle_norm_endpoint(int s, Complex theta) {
  if (s < 2) throw InputError("cycle multipliers need s >= 2");
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw InputError("theta must be unimodular");
  double best = 0.0;
  for (int j = 0; j < s; ++j) {
    best = std::max(best, std::abs(theta + std::polar(1.0, kPi * (2 * j + 1) / s)));
  }
  return best / std::abs(1.0 + std::polar(1.0, kPi / s));
}

bool cycle_isometry_for_product(int s, Complex product, double p) {
  if (s < 2) throw InputError("cycle multipliers need s >= 2");
  if (!(p > 0.0)) throw InputError("p must be positive");
  if (std::abs(product - 1.0) <= 1e-12) return true;
  if (std::isinf(p) || p != std::floor(p)) return false;
  const auto ip = static_cast<long long>(p);
  return ip % 2 == 0 && ip / 2 >= 1 && ip / 2 <= s - 1;
}

bool cycle_isometry(int s, const SignAssignment& eps, double p) {
  return cycle_isometry_for_product(s, cycle_reduce(s, eps).product, p);
}

double cycle_real_constant(int s) { return cycle_norm_endpoint(s, std::polar(1.0, kPi / s)); }

CycleComplexConstant cycle_complex_constant(int s) {
  if (s < 2) throw InputError("cycle multipliers need s >= 2");
  const double hi = kPi / s;
  auto f = [&](double t) { return cycle_norm_endpoint(s, std::polar(1.0, t)); };
  constexpr int grid = 64;
  double best_t = 0.0, best = f(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double t = hi * i / grid;
    if (const double v = f(t); v > best) {
      best = v;
      best_t = t;
    }
  }
  // Golden section around the best grid point.
  double lo = std::max(0.0, best_t - hi / grid), up = std::min(hi, best_t + hi / grid);
  constexpr double inv_phi = 0.6180339887498949;
  for (int it = 0; it < 80; ++it) {
    const double x1 = up - inv_phi * (up - lo), x2 = lo + inv_phi * (up - lo);
    if (f(x1) < f(x2)) {
      lo = x1;
    } else {
      up = x2;
    }
  }
  for (double t : {lo, up}) {
    if (const double v = f(t); v > best) {
      best = v;
      best_t = t;
    }
  }
  return {best, std::polar(1.0, best_t)};
}

void validate(const CyclicSpectrum& spec) {
  if (spec.modulus < 1) throw InputError("cyclic group modulus must be >= 1");
  std::set<int> seen;
  for (int g : spec.lambda) {
    if (g < 0 || g >= spec.modulus) {
      throw InputError("residue " + std::to_string(g) + " outside Z/" + std::to_string(spec.modulus));
    }
    if (!seen.insert(g).second) throw InputError("duplicate residue " + std::to_string(g));
  }
  for (const auto& [g, v] : spec.phi) {
    if (!seen.count(g)) throw InputError("phi is defined at " + std::to_string(g) + " outside lambda");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("phi must be finite");
  }
  if (spec.phi.size() != seen.size()) throw InputError("phi must be defined on all of lambda");
}

std::vector<Complex> inverse_fourier(const CyclicSpectrum& spec) {
  validate(spec);
  const int s = spec.modulus;
  if (static_cast<int>(spec.lambda.size()) != s) {
    throw InputError("only the full spectrum Z/sZ is supported; relative multipliers have no closed form");
  }
  std::vector<Complex> f(static_cast<std::size_t>(s));
  for (int g = 0; g < s; ++g) {
    Complex sum(0.0, 0.0);
    for (const auto& [gamma, v] : spec.phi) {
      sum += v * std::polar(1.0, -2.0 * kPi * ((static_cast<long long>(g) * gamma) % s) / s);
    }
    f[static_cast<std::size_t>(g)] = sum / static_cast<double>(s);
  }
  return f;
}

double fourier_multiplier_norm(const CyclicSpectrum& spec, double p) {
  if (p != 1.0 && !std::isinf(p)) throw InputError("Fourier multiplier norms are exact only for p = 1 or p = inf");
  double sum = 0.0;
  for (const Complex& x : inverse_fourier(spec)) sum += std::abs(x);
  return sum;
}

ComplexMatrix circulant_multiplier(const CyclicSpectrum& spec) {
  validate(spec);
  const int s = spec.modulus;
  ComplexMatrix m(s, s);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      auto it = spec.phi.find(((r - c) % s + s) % s);
      if (it != spec.phi.end()) m(r, c) = it->second;
    }
  }
  return m;
}

PositiveDecomposition positive_decomposition(const CyclicSpectrum& spec) {
  const std::vector<Complex> f = inverse_fourier(spec);
  const int s = spec.modulus;
  PositiveDecomposition out{ComplexMatrix(s, s), ComplexMatrix(s, s)};
  for (int g = 0; g < s; ++g) {
    const Complex fg = f[static_cast<std::size_t>(g)];
    if (std::abs(fg.imag()) > 1e-12 * std::max(1.0, std::abs(fg))) {
      throw InputError("positive decomposition needs a real inverse transform");
    }
    // v_g v_g^* with v_g(r) = e^{2πi g r/s}.
    ComplexMatrix& into = fg.real() >= 0.0 ? out.positive : out.negative;
    const double w = std::abs(fg.real());
    for (int r = 0; r < s; ++r) {
      for (int c = 0; c < s; ++c) {
        into(r, c) += w * std::polar(1.0, 2.0 * kPi * ((static_cast<long long>(g) * (r - c) % s + s) % s) / s);
      }
    }
  }
  return out;
}

double positive_multiplier_norm(const ComplexMatrix& phi, double tol) {
  if (phi.rows() != phi.cols()) throw InputError("positive multipliers are square");
  double diag = 0.0;
  for (int i = 0; i < phi.rows(); ++i) diag = std::max(diag, std::abs(phi(i, i)));
  if (tol < 0.0) tol = 1e-9 * std::max(diag, 1e-300);
  const double asym = phi.max_abs_diff(phi.adjoint());
  if (asym > tol) {
    std::ostringstream msg;
    msg << "multiplier is not Hermitian (deviation " << asym << ")";
    throw NotPositiveError(msg.str(), std::nan(""));
  }
  const double lowest = hermitian_eigenvalues(phi).front();
  if (lowest < -tol) {
    std::ostringstream msg;
    msg << "multiplier is not positive semidefinite: eigenvalue " << lowest;
    throw NotPositiveError(msg.str(), lowest);
  }
  return diag;
}

ForestFactorization forest_factorize(const BipartiteSupport& s, const SignAssignment& eps) {
  if (eps.size() != s.size()) throw InputError("one sign per edge required");
  const ForestResult forest = is_forest(s);
  if (!forest.forest) throw NotAForestError("support contains a cycle", *forest.witness);
  ForestFactorization out;
  out.zeta.assign(static_cast<std::size_t>(s.n_cols()), Complex(1.0, 0.0));
  out.eta.assign(static_cast<std::size_t>(s.n_rows()), Complex(1.0, 0.0));
  std::vector<bool> row_seen(static_cast<std::size_t>(s.n_rows()), false);
  std::vector<bool> col_seen(static_cast<std::size_t>(s.n_cols()), false);
  for (int root = 0; root < s.n_rows(); ++root) {
    if (row_seen[static_cast<std::size_t>(root)] || s.row_neighbors(root).empty()) continue;
    row_seen[static_cast<std::size_t>(root)] = true;
    std::deque<Vertex> queue{Vertex::row(root)};
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (v.side == Side::Row) {
        const Complex eta = out.eta[static_cast<std::size_t>(v.index)];
        for (int c : s.row_neighbors(v.index)) {
          if (col_seen[static_cast<std::size_t>(c)]) continue;
          col_seen[static_cast<std::size_t>(c)] = true;
          out.zeta[static_cast<std::size_t>(c)] = edge_value(s, eps, {v.index, c}) * std::conj(eta);
          queue.push_back(Vertex::column(c));
        }
      } else {
        const Complex zeta = out.zeta[static_cast<std::size_t>(v.index)];
        for (int r : s.col_neighbors(v.index)) {
          if (row_seen[static_cast<std::size_t>(r)]) continue;
          row_seen[static_cast<std::size_t>(r)] = true;
          out.eta[static_cast<std::size_t>(r)] = edge_value(s, eps, {r, v.index}) * std::conj(zeta);
          queue.push_back(Vertex::row(r));
        }
      }
    }
  }
  return out;
}

}  // namespace uncond
