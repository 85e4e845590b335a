#include "uncond/schatten_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace uncond {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_p(double p) {
  if (!(p > 0.0) || std::isnan(p)) throw InputError("Schatten exponent p must be positive");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One-sided Jacobi on the columns of a (rows >= cols); returns column norms.
std::vector<double> jacobi_column_norms(int rows, int cols, std::vector<Complex> a) {
  auto col = [&](int r, int c) -> Complex& { return a[static_cast<std::size_t>(r) * cols + c]; };
  constexpr double tol = 1e-15;
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < cols - 1; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma(0.0, 0.0);
        for (int r = 0; r < rows; ++r) {
          alpha += std::norm(col(r, i));
          beta += std::norm(col(r, j));
          gamma += std::conj(col(r, i)) * col(r, j);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;  // e^{-iφ}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int r = 0; r < rows; ++r) {
          const Complex ai = col(r, i);
          const Complex aj = phase * col(r, j);
          col(r, i) = c * ai - s * aj;
          col(r, j) = s * ai + c * aj;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) {
    double n = 0.0;
    for (int r = 0; r < rows; ++r) n += std::norm(col(r, c));
    out[static_cast<std::size_t>(c)] = std::sqrt(n);
  }
  return out;
}

// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(int n, std::vector<double> a) {
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) (r == c ? diag : off) += at(r, c) * at(r, c);
    }
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<double>> parse_grid(const nlohmann::json& j, int rows, int cols,
                                            const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw InputError(std::string("matrix field \"") + name + "\" must have one array per row");
  }
  std::vector<std::vector<double>> out;
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw InputError(std::string("matrix field \"") + name + "\" row " + std::to_string(r) +
                       " has the wrong length");
    }
    std::vector<double> vals;
    for (const auto& v : row) {
      if (!v.is_number()) throw InputError(std::string("matrix field \"") + name + "\" must be numeric");
      vals.push_back(v.get<double>());
    }
    out.push_back(std::move(vals));
  }
  return out;
}

// Search state shared by the real and complex engines.
class RatioSearch {
 public:
  RatioSearch(const BipartiteSupport& s, double p, SignMode mode)
      : s_(s), p_(p), mode_(mode), num_(s.n_rows(), s.n_cols()), den_(s.n_rows(), s.n_cols()) {}

  double ratio(const std::vector<Complex>& eps, const Coefficients& a) {
    for (std::size_t q = 0; q < a.size(); ++q) {
      const Edge& e = s_.edges()[q];
      num_(e.row, e.col) = eps[q] * a[q];
      den_(e.row, e.col) = a[q];
    }
    const double d = schatten_norm(den_, p_);
    if (!(d > 0.0)) return 0.0;
    return schatten_norm(num_, p_) / d;
  }

  // Golden-section maximization of g on [lo, hi] starting from a bracketing guess.
  template <class G>
  static std::pair<double, double> golden(G&& g, double lo, double hi, int iters = 40) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < iters && hi - lo > 1e-12; ++i) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = g(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = g(x1);
      }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
  }

  // Optimizes a unit phase `z` in place (z = e^{iθ}) given an evaluator of
  // the ratio at a trial value; returns the best ratio found.
  template <class Eval>
  static double ascend_phase(Complex& z, double current, Eval&& eval) {
    constexpr int grid = 16;
    double best = current;
    Complex best_z = z;
    const double base = std::arg(z);
    double best_theta = base;
    for (int i = 1; i < grid; ++i) {
      const double th = base + 2.0 * kPi * i / grid;
      const double f = eval(std::polar(1.0, th));
      if (f > best) {
        best = f;
        best_theta = th;
        best_z = std::polar(1.0, th);
      }
    }
    const double h = 2.0 * kPi / grid;
    auto [th, f] = golden([&](double t) { return eval(std::polar(1.0, t)); }, best_theta - h,
                          best_theta + h);
    if (f > best) {
      best = f;
      best_z = std::polar(1.0, th);
    }
    z = best_z;
    return best;
  }

  // Coordinate ascent followed by random-direction hill climbing, repeated
  // while either stage improves.
  double refine(std::vector<Complex>& eps, Coefficients& a, double current,
                const SearchOptions& opt, std::mt19937_64& rng) {
    double best = current;
    if (std::isinf(p_)) {
      // The operator norm ratio is flat away from its kinks; climb smooth
      // finite-p ratios first and finish at p = ∞.
      const std::vector<Complex> eps0 = eps;
      const Coefficients a0 = a;
      for (double pc : {8.0, 32.0, 128.0, 512.0}) {
        p_ = pc;
        const double f = ratio(eps, a);
        coordinate_ascent(eps, a, f, opt);
        hill_climb(eps, a, ratio(eps, a), rng);
      }
      p_ = kInfinity;
      const double f = ratio(eps, a);
      if (f >= best) {
        best = f;
      } else {
        eps = eps0;
        a = a0;
      }
    }
    for (int round = 0; round < 4; ++round) {
      const double start = best;
      best = coordinate_ascent(eps, a, best, opt);
      best = hill_climb(eps, a, best, rng);
      if (best - start < opt.sweep_tolerance) break;
    }
    return best;
  }

 private:
  double coordinate_ascent(std::vector<Complex>& eps, Coefficients& a, double best,
                           const SearchOptions& opt) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      const double start = best;
      for (std::size_t q = 0; q < n; ++q) {
        // Phase of a_q.
        if (std::abs(a[q]) > 0.0) {
          const double mod = std::abs(a[q]);
          Complex z = a[q] / mod;
          best = ascend_phase(z, best, [&](Complex w) {
            const Complex keep = a[q];
            a[q] = mod * w;
            const double f = ratio(eps, a);
            a[q] = keep;
            return f;
          });
          a[q] = mod * z;
        }
        // Modulus of a_q on a log scale; zero is also tried.
        {
          const Complex keep = a[q];
          const Complex dir = std::abs(keep) > 0.0 ? keep / std::abs(keep) : Complex(1.0, 0.0);
          const double u0 = std::abs(keep) > 0.0 ? std::log(std::abs(keep)) : 0.0;
          auto eval = [&](double u) {
            a[q] = std::exp(u) * dir;
            const double f = ratio(eps, a);
            a[q] = keep;
            return f;
          };
          double best_u = u0;
          Complex best_val = keep;
          for (int i = -6; i <= 6; ++i) {
            if (i == 0) continue;
            const double u = u0 + 0.5 * i;
            const double f = eval(u);
            if (f > best) {
              best = f;
              best_u = u;
              best_val = std::exp(u) * dir;
            }
          }
          auto [u, f] = golden(eval, best_u - 0.5, best_u + 0.5);
          if (f > best) {
            best = f;
            best_val = std::exp(u) * dir;
          }
          a[q] = 0.0;
          const double fz = ratio(eps, a);
          if (fz > best) {
            best = fz;
            best_val = 0.0;
          }
          a[q] = best_val;
        }
        // Sign of ε_q.
        if (q == 0) continue;  // global sign symmetry
        if (mode_ == SignMode::Real) {
          eps[q] = -eps[q];
          const double f = ratio(eps, a);
          if (f > best) {
            best = f;
          } else {
            eps[q] = -eps[q];
          }
        } else {
          Complex z = eps[q];
          best = ascend_phase(z, best, [&](Complex w) {
            const Complex keep = eps[q];
            eps[q] = w;
            const double f = ratio(eps, a);
            eps[q] = keep;
            return f;
          });
          eps[q] = z;
        }
      }
      if (best - start < opt.sweep_tolerance) break;
    }
    return best;
  }

  double hill_climb(std::vector<Complex>& eps, Coefficients& a, double best, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double scale = 0.0;
    for (const auto& x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return best;
    double step = 0.1;
    int stale = 0;
    Coefficients trial = a;
    std::vector<Complex> trial_eps = eps;
    for (int it = 0; it < 4000 && step > 1e-9; ++it) {
      for (std::size_t q = 0; q < a.size(); ++q) {
        trial[q] = a[q] + step * scale * Complex(normal(rng), normal(rng));
      }
      if (mode_ == SignMode::Complex) {
        for (std::size_t q = 1; q < eps.size(); ++q) {
          trial_eps[q] = eps[q] * std::polar(1.0, step * normal(rng));
        }
      }
      const double f = ratio(trial_eps, trial);
      if (f > best) {
        best = f;
        a = trial;
        eps = trial_eps;
        step *= 1.5;
        stale = 0;
      } else {
        trial_eps = eps;
        if (++stale >= 20) {
          step *= 0.5;
          stale = 0;
        }
      }
    }
    return best;
  }

  const BipartiteSupport& s_;
  double p_;
  SignMode mode_;
  ComplexMatrix num_;
  ComplexMatrix den_;
};

Coefficients gaussian_coefficients(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Coefficients a(n);
  for (auto& x : a) x = Complex(normal(rng), normal(rng));
  return a;
}

void validate_search(const BipartiteSupport& s, double p, const SearchOptions& opt) {
  require_positive_p(p);
  if (opt.trials == 0) throw InputError("search needs at least one trial");
  if (s.n_rows() < 1 || s.n_cols() < 1) throw InputError("support must have at least one row and one column");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw InputError("matrix dimensions must be >= 1");
  data_.assign(static_cast<std::size_t>(rows) * cols, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows < 1 || cols < 1) throw InputError("matrix dimensions must be >= 1");
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw InputError("matrix data size does not match its dimensions");
  }
  if (!all_finite()) throw InputError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_support(const BipartiteSupport& s,
                                          const std::vector<Complex>& values) {
  if (values.size() != s.size()) throw InputError("one value per edge required");
  ComplexMatrix m(s.n_rows(), s.n_cols());
  for (std::size_t q = 0; q < values.size(); ++q) m(s.edges()[q].row, s.edges()[q].col) = values[q];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  ComplexMatrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = u[r] * v[c];
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix dimensions differ");
  ComplexMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix dimensions differ");
  ComplexMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
  ComplexMatrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix dimensions differ");
  double d = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - o.data_[i]));
  return d;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix parse_matrix(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    throw InputError("matrix JSON needs \"rows\", \"cols\" and \"re\"");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw InputError("matrix \"rows\" and \"cols\" must be integers");
  }
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1) throw InputError("matrix dimensions must be >= 1");
  const auto re = parse_grid(j["re"], rows, cols, "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = parse_grid(j["im"], rows, cols, "im");
  std::vector<Complex> data;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      data.emplace_back(re[r][c], im.empty() ? 0.0 : im[r][c]);
    }
  }
  return ComplexMatrix(rows, cols, std::move(data));
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InputError("singular values of a matrix with non-finite entries");
  // Work on the orientation with fewer columns.
  const bool wide = m.cols() > m.rows();
  const ComplexMatrix& work = m;
  ComplexMatrix adj;
  if (wide) adj = m.adjoint();
  const ComplexMatrix& a = wide ? adj : work;
  std::vector<double> sigma = jacobi_column_norms(a.rows(), a.cols(), a.data());
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw InputError("eigenvalues need a square matrix");
  if (!h.all_finite()) throw InputError("eigenvalues of a matrix with non-finite entries");
  const int n = h.rows();
  // [[Re, -Im], [Im, Re]] has every eigenvalue of h twice.
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
      a[static_cast<std::size_t>(r) * m + c] = z.real();
      a[static_cast<std::size_t>(r + n) * m + c + n] = z.real();
      a[static_cast<std::size_t>(r) * m + c + n] = -z.imag();
      a[static_cast<std::size_t>(r + n) * m + c] = z.imag();
    }
  }
  const std::vector<double> doubled = symmetric_eigenvalues(m, std::move(a));
  std::vector<double> out;
  for (std::size_t i = 0; i < doubled.size(); i += 2) out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return out;
}

double schatten_power(const std::vector<double>& sigma, double p) {
  require_positive_p(p);
  if (std::isinf(p)) throw InputError("schatten_power needs finite p");
  double sum = 0.0;
  for (double x : sigma) {
    if (x > 0.0) sum += std::pow(x, p);
  }
  return sum;
}

double schatten_norm(const std::vector<double>& sigma, double p) {
  require_positive_p(p);
  double top = 0.0;
  for (double x : sigma) top = std::max(top, x);
  if (std::isinf(p) || top == 0.0) return top;
  // Scaling by the top singular value avoids overflow for large p.
  double sum = 0.0;
  for (double x : sigma) {
    if (x > 0.0) sum += std::pow(x / top, p);
  }
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& m, double p) {
  require_positive_p(p);
  return schatten_norm(singular_values(m), p);
}

ComplexMatrix schur_product(const std::map<Edge, Complex>& phi, const ComplexMatrix& m,
                            MultiplierDomain domain) {
  ComplexMatrix out = domain == MultiplierDomain::Total ? m : ComplexMatrix(m.rows(), m.cols());
  for (const auto& [e, v] : phi) {
    if (e.row < 0 || e.row >= m.rows() || e.col < 0 || e.col >= m.cols()) {
      std::ostringstream msg;
      msg << "multiplier entry (" << e.row << ", " << e.col << ") is outside the "
          << m.rows() << "x" << m.cols() << " matrix";
      throw InputError(msg.str());
    }
    out(e.row, e.col) = v * m(e.row, e.col);
  }
  return out;
}

ComplexMatrix diagonal_multiply(const std::vector<Complex>& eta, const ComplexMatrix& m,
                                const std::vector<Complex>& zeta) {
  if (static_cast<int>(eta.size()) != m.rows() || static_cast<int>(zeta.size()) != m.cols()) {
    throw InputError("diagonal sizes must match the matrix");
  }
  ComplexMatrix out = m;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out(r, c) = eta[r] * m(r, c) * zeta[c];
  }
  return out;
}

double phi_direct(const BipartiteSupport& s, int p, const SignAssignment& eps,
                  const Coefficients& a) {
  if (p < 2 || p % 2 != 0) throw InputError("phi_direct needs an even exponent p >= 2");
  if (eps.size() != s.size() || a.size() != s.size()) {
    throw InputError("signs and coefficients must have one entry per edge");
  }
  std::vector<Complex> v(s.size());
  for (std::size_t q = 0; q < v.size(); ++q) v[q] = eps[q] * a[q];
  return schatten_power(singular_values(ComplexMatrix::from_support(s, v)), p);
}

double sign_ratio(const BipartiteSupport& s, double p, const std::vector<Complex>& eps,
                  const Coefficients& a) {
  require_positive_p(p);
  if (eps.size() != s.size() || a.size() != s.size()) {
    throw InputError("signs and coefficients must have one entry per edge");
  }
  std::vector<Complex> v(s.size());
  for (std::size_t q = 0; q < v.size(); ++q) v[q] = eps[q] * a[q];
  const double d = schatten_norm(ComplexMatrix::from_support(s, a), p);
  if (!(d > 0.0)) return 0.0;
  return schatten_norm(ComplexMatrix::from_support(s, v), p) / d;
}

ConstantEstimate real_unconditional_constant(const BipartiteSupport& s, double p,
                                             const SearchOptions& opt) {
  validate_search(s, p, opt);
  const std::size_t n = s.size();
  ConstantEstimate best;
  best.mode = SignMode::Real;
  best.trials = opt.trials;
  best.seed = opt.seed;
  best.signs.assign(n, Complex(1.0, 0.0));
  best.coefficients.assign(n, Complex(1.0, 0.0));
  if (n == 0) return best;
  best.exhaustive_signs = n <= opt.exhaustive_limit;

  RatioSearch search(s, p, SignMode::Real);
  best.value = search.ratio(best.signs, best.coefficients);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    std::mt19937_64 rng(splitmix64(opt.seed * 0x100000001b3ULL + t));
    Coefficients a = t == 0 ? Coefficients(n, Complex(1.0, 0.0)) : gaussian_coefficients(n, rng);
    std::vector<Complex> eps(n, Complex(1.0, 0.0));
    double value = search.ratio(eps, a);
    if (best.exhaustive_signs) {
      // ε_0 = +1 fixed; the remaining signs run through all patterns in
      // lexicographic order, strict improvement only.
      std::vector<Complex> trial(n, Complex(1.0, 0.0));
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        for (std::size_t q = 1; q < n; ++q) {
          trial[q] = ((mask >> (n - 1 - q)) & 1U) ? -1.0 : 1.0;
        }
        const double f = search.ratio(trial, a);
        if (f > value) {
          value = f;
          eps = trial;
        }
      }
    } else {
      std::bernoulli_distribution coin(0.5);
      for (std::size_t q = 1; q < n; ++q) eps[q] = coin(rng) ? -1.0 : 1.0;
      value = search.ratio(eps, a);
    }
    if (opt.refine) value = search.refine(eps, a, value, opt, rng);
    if (value > best.value) {
      best.value = value;
      best.signs = eps;
      best.coefficients = a;
    }
  }
  return best;
}

ConstantEstimate complex_unconditional_constant(const BipartiteSupport& s, double p,
                                                const SearchOptions& opt) {
  validate_search(s, p, opt);
  const std::size_t n = s.size();
  ConstantEstimate best;
  best.mode = SignMode::Complex;
  best.trials = opt.trials;
  best.seed = opt.seed;
  best.signs.assign(n, Complex(1.0, 0.0));
  best.coefficients.assign(n, Complex(1.0, 0.0));
  if (n == 0) return best;

  RatioSearch search(s, p, SignMode::Complex);
  best.value = search.ratio(best.signs, best.coefficients);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    std::mt19937_64 rng(splitmix64(opt.seed * 0x100000001b3ULL + t) ^ 0x5bd1e995ULL);
    Coefficients a = t == 0 ? Coefficients(n, Complex(1.0, 0.0)) : gaussian_coefficients(n, rng);
    std::vector<Complex> eps(n, Complex(1.0, 0.0));
    for (std::size_t q = 1; q < n; ++q) eps[q] = std::polar(1.0, angle(rng));
    double value = search.ratio(eps, a);
    if (opt.refine) value = search.refine(eps, a, value, opt, rng);
    if (value > best.value) {
      best.value = value;
      best.signs = eps;
      best.coefficients = a;
    }
  }
  return best;
}

ComplexMatrix eigencurve_matrix(double t) {
  const double r2 = std::sqrt(2.0);
  return ComplexMatrix(2, 2, {1.0, r2, r2, t});
}

EigencurvePoint eigencurve_check(double t, double p) {
  require_positive_p(p);
  if (!(std::abs(t) <= 1.0)) throw InputError("eigencurve_check needs |t| <= 1");
  const double root = std::sqrt(9.0 - 2.0 * t + t * t);
  const double l1 = std::abs((1.0 + t + root) / 2.0);
  const double l2 = std::abs((1.0 + t - root) / 2.0);
  EigencurvePoint out;
  out.operator_norm = std::max(l1, l2);
  out.power = std::isinf(p) ? out.operator_norm : std::pow(l1, p) + std::pow(l2, p);
  return out;
}

}  // namespace uncond
