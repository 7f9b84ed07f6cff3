#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "torcoh/errors.hpp"
#include "torcoh/rng.hpp"
#include "torcoh/torus.hpp"

namespace torcoh::fourier {

using Complex = std::complex<double>;
using Index = std::vector<int>;  // lattice point k ∈ Z^d

/// Finitely supported function Z^d → C, read as f(θ) = Σ ĉ_k e^{2πi k·θ}
/// with ĉ_k = ∫ f(θ) e^{−2πi k·θ} dθ. Absent keys are exactly zero. Keys are
/// kept in lexicographic order, which fixes every summation order below.
class FourierSeries {
 public:
  using Map = std::map<Index, Complex>;

  explicit FourierSeries(std::size_t dim = 1, bool declared_real = true);

  static FourierSeries constant(std::size_t dim, double value);
  // amplitude·cos(2π k·θ + phase)
  static FourierSeries cosine(const Index& k, double amplitude = 1.0, double phase = 0.0);
  // amplitude·sin(2π k·θ)
  static FourierSeries sine(const Index& k, double amplitude = 1.0);
  // c·e^{2πi k·θ}; not real unless k = 0 and c real
  static FourierSeries mode(const Index& k, Complex c);

  std::size_t dim() const noexcept { return dim_; }
  bool declared_real() const noexcept { return real_; }
  void set_declared_real(bool r) noexcept { real_ = r; }

  const Map& coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  Complex coeff(const Index& k) const;
  // Stores c at k; an exact zero erases the key.
  void set(const Index& k, Complex c);
  void add(const Index& k, Complex c);

  // max |k|∞ over the support, 0 for the empty series.
  int support_radius() const;
  double mean() const { return coeff(Index(dim_, 0)).real(); }
  double l1_norm() const;

  // max over stored k of |ĉ_{−k} − conj(ĉ_k)|, and |Im ĉ_0|.
  double real_symmetry_defect() const;
  // Throws DomainError if declared_real and the defect exceeds tol.
  void check_real(double tol = 1e-12) const;

  // Drops coefficients with |ĉ_k| < floor.
  FourierSeries pruned(double floor) const;

  FourierSeries& operator+=(const FourierSeries& o);
  FourierSeries& operator-=(const FourierSeries& o);
  FourierSeries& operator*=(double s);

  friend bool operator==(const FourierSeries&, const FourierSeries&) = default;

 private:
  void check_key(const Index& k) const;

  std::size_t dim_;
  bool real_;
  Map c_;
};

FourierSeries operator+(FourierSeries a, const FourierSeries& b);
FourierSeries operator-(FourierSeries a, const FourierSeries& b);
FourierSeries operator*(double s, FourierSeries a);
FourierSeries operator-(FourierSeries a);

// Pointwise product (exact convolution of supports).
FourierSeries multiply(const FourierSeries& a, const FourierSeries& b);

// θ ↦ f(θ + shift): ĉ_k ↦ ĉ_k e^{2πi k·shift}.
FourierSeries translate(const FourierSeries& f, std::span<const double> shift);

// Lie derivative along the constant field α: ĉ_k ↦ 2πi (k·α) ĉ_k.
FourierSeries directional_derivative(const FourierSeries& f, std::span<const double> alpha);

// ∂f/∂θ^axis.
FourierSeries partial_derivative(const FourierSeries& f, std::size_t axis);

// max_k |a_k − b_k| over the union of supports.
double max_coeff_diff(const FourierSeries& a, const FourierSeries& b);

// Σ ĉ_k e^{2πi k·θ} in key order.
Complex evaluate_complex(const FourierSeries& f, std::span<const double> theta);

/// Real value of a declared-real series at θ. The imaginary residue must be
/// below imag_tol·max(1, Σ|ĉ_k|); otherwise the series is not the expansion
/// of a real function and NumericalError is thrown.
double evaluate(const FourierSeries& f, std::span<const double> theta, double imag_tol = 1e-10);

/// Uniform samples on the grid θ_j = j/size per axis, axis 0 slowest.
struct GridFunction {
  std::vector<std::size_t> sizes;
  std::vector<double> samples;

  std::size_t dim() const noexcept { return sizes.size(); }
  std::size_t total() const;
  Point point(std::size_t linear) const;

  static GridFunction sample(std::vector<std::size_t> sizes, const std::function<double(const Point&)>& f);
  void validate() const;
};

struct AnalyzeOptions {
  double coefficient_floor = 1e-15;
};

/// Discrete Fourier analysis of a real grid function. Frequencies lie in the
/// Nyquist box |k_i| ≤ n_i/2; the Nyquist bin is split evenly between ±n_i/2
/// so the result stays conjugate-symmetric.
FourierSeries analyze(const GridFunction& g, const AnalyzeOptions& opts = {});

/// Real part of Σ ĉ_k e^{2πi k·θ_j} on the grid. Throws AliasingError if some
/// |k_i| > n_i/2.
GridFunction synthesize(const FourierSeries& s, const std::vector<std::size_t>& sizes);

// Per-shell max |ĉ_k| for shells |k|∞ = 0..support_radius.
std::vector<std::pair<int, double>> decay_profile(const FourierSeries& s);

// Smallest power of two ≥ n.
std::size_t next_pow2(std::size_t n);

// Grid sizes (power of two per axis) that hold the support with margin
// `oversample` (samples per axis ≥ oversample·(2R+1)).
std::vector<std::size_t> fitting_grid(const FourierSeries& s, std::size_t oversample = 2, std::size_t min_size = 8);

/// sup_θ |f(θ)| for a real series: dense-grid maximum refined by Newton
/// steps on ∇f (d ≤ 3).
double sup_norm(const FourierSeries& f);

/// Random real series with support in the box |k|∞ ≤ radius. Coefficient
/// magnitudes are uniform in [0, amplitude)·e^{−decay·|k|∞} with uniform
/// phases; ĉ_0 is real. With zero_mean the constant term is omitted.
FourierSeries random_real_series(std::size_t dim, int radius, SplitMix64& rng, double amplitude = 1.0,
                                 double decay = 0.0, bool zero_mean = false);

}  // namespace torcoh::fourier
