#include "torcoh/fourier.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

namespace torcoh::fourier {

namespace {

Index negated(const Index& k) {
  Index m(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m[i] = -k[i];
  return m;
}

int inf_norm(const Index& k) {
  int r = 0;
  for (int x : k) r = std::max(r, std::abs(x));
  return r;
}

// e^{2πi x}, with x reduced to [-1/2, 1/2] first so large k·θ keeps accuracy.
Complex unit_phase(double x) {
  const double r = centered_frac(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

double dot(const Index& k, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * v[i];
  return s;
}

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(std::vector<Complex>& data, const std::vector<std::size_t>& sizes, int sign) {
  std::vector<int> n(sizes.begin(), sizes.end());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

// ---------------------------------------------------------------------------
// FourierSeries

FourierSeries::FourierSeries(std::size_t dim, bool declared_real) : dim_(dim), real_(declared_real) {
  if (dim == 0) throw DomainError("Fourier series dimension must be >= 1");
}

FourierSeries FourierSeries::constant(std::size_t dim, double value) {
  FourierSeries s(dim);
  s.set(Index(dim, 0), value);
  return s;
}

FourierSeries FourierSeries::cosine(const Index& k, double amplitude, double phase) {
  FourierSeries s(k.size());
  if (inf_norm(k) == 0) {
    s.set(k, amplitude * std::cos(phase));
    return s;
  }
  const Complex c = 0.5 * amplitude * std::polar(1.0, phase);
  s.set(k, c);
  s.set(negated(k), std::conj(c));
  return s;
}

FourierSeries FourierSeries::sine(const Index& k, double amplitude) {
  // sin(x) = (e^{ix} − e^{−ix})/(2i)
  FourierSeries s(k.size());
  if (inf_norm(k) == 0) return s;
  s.set(k, Complex(0.0, -0.5 * amplitude));
  s.set(negated(k), Complex(0.0, 0.5 * amplitude));
  return s;
}

FourierSeries FourierSeries::mode(const Index& k, Complex c) {
  FourierSeries s(k.size(), inf_norm(k) == 0 && c.imag() == 0.0);
  s.set(k, c);
  return s;
}

void FourierSeries::check_key(const Index& k) const {
  if (k.size() != dim_)
    throw DomainError("lattice key of length " + std::to_string(k.size()) + " in a series of dimension " +
                      std::to_string(dim_));
}

Complex FourierSeries::coeff(const Index& k) const {
  check_key(k);
  auto it = c_.find(k);
  return it == c_.end() ? Complex{} : it->second;
}

void FourierSeries::set(const Index& k, Complex c) {
  check_key(k);
  if (c == Complex{})
    c_.erase(k);
  else
    c_[k] = c;
}

void FourierSeries::add(const Index& k, Complex c) {
  check_key(k);
  auto [it, inserted] = c_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) c_.erase(it);
  }
}

int FourierSeries::support_radius() const {
  int r = 0;
  for (const auto& [k, c] : c_) r = std::max(r, inf_norm(k));
  return r;
}

double FourierSeries::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : c_) s += std::abs(c);
  return s;
}

double FourierSeries::real_symmetry_defect() const {
  double defect = 0.0;
  for (const auto& [k, c] : c_) {
    const Index mk = negated(k);
    auto it = c_.find(mk);
    const Complex partner = it == c_.end() ? Complex{} : it->second;
    defect = std::max(defect, std::abs(partner - std::conj(c)));
  }
  return defect;
}

void FourierSeries::check_real(double tol) const {
  if (!real_) return;
  const double d = real_symmetry_defect();
  if (d > tol)
    throw DomainError("series declared real violates conjugate symmetry (defect " + std::to_string(d) + ")");
}

FourierSeries FourierSeries::pruned(double floor) const {
  FourierSeries out(dim_, real_);
  for (const auto& [k, c] : c_)
    if (std::abs(c) >= floor) out.c_.emplace_hint(out.c_.end(), k, c);
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& o) {
  if (o.dim_ != dim_) throw DomainError("adding series of different dimensions");
  for (const auto& [k, c] : o.c_) add(k, c);
  real_ = real_ && o.real_;
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& o) {
  if (o.dim_ != dim_) throw DomainError("subtracting series of different dimensions");
  for (const auto& [k, c] : o.c_) add(k, -c);
  real_ = real_ && o.real_;
  return *this;
}

FourierSeries& FourierSeries::operator*=(double s) {
  if (s == 0.0) {
    c_.clear();
    return *this;
  }
  for (auto& [k, c] : c_) c *= s;
  return *this;
}

FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
FourierSeries operator*(double s, FourierSeries a) { return a *= s; }
FourierSeries operator-(FourierSeries a) { return a *= -1.0; }

FourierSeries multiply(const FourierSeries& a, const FourierSeries& b) {
  if (a.dim() != b.dim()) throw DomainError("multiplying series of different dimensions");
  FourierSeries out(a.dim(), a.declared_real() && b.declared_real());
  Index k(a.dim());
  for (const auto& [ka, ca] : a.coeffs())
    for (const auto& [kb, cb] : b.coeffs()) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      out.add(k, ca * cb);
    }
  return out;
}

FourierSeries translate(const FourierSeries& f, std::span<const double> shift) {
  if (shift.size() != f.dim()) throw DomainError("translation vector has wrong dimension");
  FourierSeries out(f.dim(), f.declared_real());
  for (const auto& [k, c] : f.coeffs()) out.set(k, c * unit_phase(dot(k, shift)));
  return out;
}

FourierSeries directional_derivative(const FourierSeries& f, std::span<const double> alpha) {
  if (alpha.size() != f.dim()) throw DomainError("direction vector has wrong dimension");
  FourierSeries out(f.dim(), f.declared_real());
  for (const auto& [k, c] : f.coeffs()) out.set(k, c * Complex(0.0, kTwoPi * dot(k, alpha)));
  return out;
}

FourierSeries partial_derivative(const FourierSeries& f, std::size_t axis) {
  if (axis >= f.dim()) throw DomainError("derivative axis out of range");
  FourierSeries out(f.dim(), f.declared_real());
  for (const auto& [k, c] : f.coeffs()) out.set(k, c * Complex(0.0, kTwoPi * k[axis]));
  return out;
}

double max_coeff_diff(const FourierSeries& a, const FourierSeries& b) {
  if (a.dim() != b.dim()) throw DomainError("comparing series of different dimensions");
  double m = 0.0;
  for (const auto& [k, c] : a.coeffs()) m = std::max(m, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs())
    if (!a.coeffs().contains(k)) m = std::max(m, std::abs(c));
  return m;
}

Complex evaluate_complex(const FourierSeries& f, std::span<const double> theta) {
  if (theta.size() != f.dim()) throw DomainError("evaluation point has wrong dimension");
  Complex s{};
  for (const auto& [k, c] : f.coeffs()) s += c * unit_phase(dot(k, theta));
  return s;
}

double evaluate(const FourierSeries& f, std::span<const double> theta, double imag_tol) {
  if (!f.declared_real()) throw DomainError("evaluate requires a declared-real series");
  const Complex v = evaluate_complex(f, theta);
  if (std::abs(v.imag()) > imag_tol * std::max(1.0, f.l1_norm()))
    throw NumericalError("imaginary residue " + std::to_string(v.imag()) + " in a declared-real series");
  return v.real();
}

// ---------------------------------------------------------------------------
// Grids

std::size_t GridFunction::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{1}, std::multiplies<>());
}

Point GridFunction::point(std::size_t linear) const {
  Point p(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    p[i] = static_cast<double>(linear % sizes[i]) / static_cast<double>(sizes[i]);
    linear /= sizes[i];
  }
  return p;
}

void GridFunction::validate() const {
  if (sizes.empty()) throw DomainError("grid must have dimension >= 1");
  for (std::size_t n : sizes)
    if (!is_pow2(n)) throw DomainError("grid sizes must be powers of two >= 2");
  if (samples.size() != total()) throw DomainError("sample count does not match grid sizes");
}

GridFunction GridFunction::sample(std::vector<std::size_t> sizes, const std::function<double(const Point&)>& f) {
  GridFunction g{std::move(sizes), {}};
  g.samples.resize(g.total());
  for (std::size_t j = 0; j < g.samples.size(); ++j) g.samples[j] = f(g.point(j));
  g.validate();
  return g;
}

FourierSeries analyze(const GridFunction& g, const AnalyzeOptions& opts) {
  g.validate();
  for (double v : g.samples)
    if (!std::isfinite(v)) throw DomainError("analyze: non-finite sample");

  const std::size_t d = g.dim();
  const std::size_t total = g.total();
  std::vector<Complex> data(g.samples.begin(), g.samples.end());
  run_fft(data, g.sizes, FFTW_FORWARD);
  const double norm = 1.0 / static_cast<double>(total);

  FourierSeries out(d, true);
  std::vector<std::size_t> bin(d, 0);
  Index k(d);
  for (std::size_t j = 0; j < total; ++j) {
    // bin index of linear position j (axis 0 slowest)
    std::size_t rem = j;
    for (std::size_t i = d; i-- > 0;) {
      bin[i] = rem % g.sizes[i];
      rem /= g.sizes[i];
    }
    const Complex c = data[j] * norm;
    if (std::abs(c) < opts.coefficient_floor) continue;

    std::vector<std::size_t> nyquist_axes;
    for (std::size_t i = 0; i < d; ++i) {
      const auto n = static_cast<long>(g.sizes[i]);
      const auto b = static_cast<long>(bin[i]);
      if (2 * b == n) {
        nyquist_axes.push_back(i);
        k[i] = static_cast<int>(n / 2);
      } else {
        k[i] = static_cast<int>(2 * b < n ? b : b - n);
      }
    }
    const std::size_t copies = std::size_t{1} << nyquist_axes.size();
    const Complex share = c / static_cast<double>(copies);
    if (copies > 1 && std::abs(share) < opts.coefficient_floor) continue;
    for (std::size_t mask = 0; mask < copies; ++mask) {
      Index kk = k;
      for (std::size_t a = 0; a < nyquist_axes.size(); ++a)
        if (mask & (std::size_t{1} << a)) kk[nyquist_axes[a]] = -kk[nyquist_axes[a]];
      out.add(kk, share);
    }
  }
  // ĉ_0 of a real grid is real up to rounding; store it exactly real.
  const Index zero(d, 0);
  if (auto it = out.coeffs().find(zero); it != out.coeffs().end()) out.set(zero, it->second.real());
  return out;
}

GridFunction synthesize(const FourierSeries& s, const std::vector<std::size_t>& sizes) {
  GridFunction g{sizes, std::vector<double>(0)};
  if (sizes.size() != s.dim()) throw DomainError("synthesize: grid dimension differs from series dimension");
  for (std::size_t n : sizes)
    if (!is_pow2(n)) throw DomainError("grid sizes must be powers of two >= 2");
  const std::size_t total = g.total();
  std::vector<Complex> data(total);
  for (const auto& [k, c] : s.coeffs()) {
    std::size_t lin = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const long n = static_cast<long>(sizes[i]);
      if (2L * std::abs(k[i]) > n)
        throw AliasingError("synthesize: frequency " + std::to_string(k[i]) + " exceeds Nyquist limit of grid size " +
                            std::to_string(n));
      const long b = ((k[i] % n) + n) % n;
      lin = lin * sizes[i] + static_cast<std::size_t>(b);
    }
    data[lin] += c;
  }
  run_fft(data, sizes, FFTW_BACKWARD);
  g.samples.resize(total);
  for (std::size_t j = 0; j < total; ++j) g.samples[j] = data[j].real();
  return g;
}

std::vector<std::pair<int, double>> decay_profile(const FourierSeries& s) {
  const int R = s.support_radius();
  std::vector<std::pair<int, double>> prof(static_cast<std::size_t>(R) + 1);
  for (int r = 0; r <= R; ++r) prof[static_cast<std::size_t>(r)] = {r, 0.0};
  for (const auto& [k, c] : s.coeffs()) {
    auto& slot = prof[static_cast<std::size_t>(inf_norm(k))].second;
    slot = std::max(slot, std::abs(c));
  }
  return prof;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::size_t> fitting_grid(const FourierSeries& s, std::size_t oversample, std::size_t min_size) {
  const auto R = static_cast<std::size_t>(s.support_radius());
  const std::size_t n = std::max(min_size, next_pow2(oversample * (2 * R + 1)));
  return std::vector<std::size_t>(s.dim(), n);
}

double sup_norm(const FourierSeries& f) {
  const std::size_t d = f.dim();
  if (f.empty()) return 0.0;
  if (d > 3) throw DomainError("sup_norm supports d <= 3");
  const std::size_t over = d == 1 ? 16 : (d == 2 ? 8 : 4);
  const auto grid = fitting_grid(f, over, 16);
  const GridFunction g = synthesize(f, grid);

  // A handful of the largest grid values seed the Newton refinement.
  std::vector<std::size_t> order(g.samples.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t seeds = std::min<std::size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(seeds), order.end(),
                    [&](std::size_t a, std::size_t b) { return std::abs(g.samples[a]) > std::abs(g.samples[b]); });

  std::vector<FourierSeries> grad;
  std::vector<std::vector<FourierSeries>> hess(d);
  for (std::size_t i = 0; i < d; ++i) {
    grad.push_back(partial_derivative(f, i));
    for (std::size_t j = 0; j < d; ++j) hess[i].push_back(partial_derivative(grad[i], j));
  }

  double best = std::abs(g.samples[order[0]]);
  const double h = 1.0 / static_cast<double>(grid[0]);
  for (std::size_t s = 0; s < seeds; ++s) {
    Point x = g.point(order[s]);
    const Point x0 = x;
    for (int it = 0; it < 30; ++it) {
      Eigen::VectorXd gr(static_cast<long>(d));
      Eigen::MatrixXd H(static_cast<long>(d), static_cast<long>(d));
      for (std::size_t i = 0; i < d; ++i) {
        gr(static_cast<long>(i)) = evaluate_complex(grad[i], x).real();
        for (std::size_t j = 0; j < d; ++j)
          H(static_cast<long>(i), static_cast<long>(j)) = evaluate_complex(hess[i][j], x).real();
      }
      const Eigen::VectorXd step = H.colPivHouseholderQr().solve(gr);
      if (!step.allFinite()) break;
      bool far = false;
      for (std::size_t i = 0; i < d; ++i) {
        x[i] -= step(static_cast<long>(i));
        far = far || circle_distance(x[i], x0[i]) > 2.0 * h;
      }
      if (far) break;  // left the basin of the seed
      best = std::max(best, std::abs(evaluate_complex(f, x).real()));
      if (step.norm() < 1e-15) break;
    }
  }
  return best;
}

FourierSeries random_real_series(std::size_t dim, int radius, SplitMix64& rng, double amplitude, double decay,
                                 bool zero_mean) {
  FourierSeries s(dim, true);
  Index k(dim, -radius);
  while (true) {
    // canonical half: first nonzero coordinate positive
    int first = 0;
    for (int x : k)
      if (x != 0) {
        first = x;
        break;
      }
    const int r = inf_norm(k);
    const double scale = amplitude * std::exp(-decay * r);
    if (first > 0) {
      const Complex c = std::polar(scale * rng.uniform(), kTwoPi * rng.uniform());
      s.set(k, c);
      s.set(negated(k), std::conj(c));
    } else if (r == 0 && !zero_mean) {
      s.set(k, scale * rng.uniform(-1.0, 1.0));
    }
    std::size_t i = 0;
    while (i < dim && k[i] == radius) k[i++] = -radius;
    if (i == dim) break;
    ++k[i];
  }
  return s;
}

}  // namespace torcoh::fourier
