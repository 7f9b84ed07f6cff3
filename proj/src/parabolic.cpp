#include "torcoh/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace torcoh::parabolic {

namespace {

void require_t2(const FourierSeries& psi) {
  if (psi.dim() != 2) throw DomainError("parabolic maps act on T^2; series has dimension " + std::to_string(psi.dim()));
}

void require_point(const Point& p) {
  if (p.size() != 2) throw DomainError("expected a point on T^2");
}

// a·x mod 1 for integer a, centred.
double int_times(long long a, double x) { return centered_frac(static_cast<double>(a) * x); }

// e^{2πi x}
Complex phase(double x) {
  const double r = centered_frac(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

long long triangular(long long j) { return j * (j - 1) / 2; }

}  // namespace

Point ParabolicAffineMap::apply(const Point& theta) const {
  require_point(theta);
  return {frac(theta[0] + rho), frac(theta[1] + n0 * frac(theta[0]) + beta)};
}

Point ParabolicAffineMap::apply_inverse(const Point& theta) const {
  require_point(theta);
  const double t0 = frac(theta[0] - rho);
  return {t0, frac(theta[1] - n0 * t0 - beta)};
}

Point ParabolicAffineMap::apply_power(const Point& theta, long long j) const {
  require_point(theta);
  const double t0 = frac(theta[0]);
  const double shift1 = int_times(j, beta) + int_times(n0 * triangular(j), rho);
  return {frac(t0 + int_times(j, rho)), frac(theta[1] + frac(static_cast<double>(j * n0) * t0) + shift1)};
}

FourierSeries pullback_power(const ParabolicAffineMap& B, const FourierSeries& psi, long long j,
                             std::optional<int> max_radius) {
  require_t2(psi);
  // ψ∘B^j: the source mode (a, ℓ) lands on (a + j n₀ ℓ, ℓ) with phase
  // a·jρ + ℓ·(jβ + n₀ρ·j(j−1)/2).
  FourierSeries out(2, psi.declared_real());
  const long long shear = j * B.n0;
  double dropped = 0.0;
  for (const auto& [k, c] : psi.coeffs()) {
    const long long a = k[0], l = k[1];
    const long long target = a + shear * l;
    if (target > std::numeric_limits<int>::max() || target < std::numeric_limits<int>::min())
      throw TruncationError("pullback support exceeds the integer lattice range", std::abs(c));
    if (max_radius && std::max(std::abs(target), std::abs(l)) > *max_radius) {
      dropped += std::abs(c);
      continue;
    }
    const double ph = int_times(a * j, B.rho) + int_times(l * j, B.beta) + int_times(l * B.n0 * triangular(j), B.rho);
    out.set({static_cast<int>(target), static_cast<int>(l)}, c * phase(ph));
  }
  if (dropped > 0.0)
    throw TruncationError("pullback support exceeds radius " + std::to_string(*max_radius), dropped);
  return out;
}

FourierSeries pullback_fourier(const ParabolicAffineMap& B, const FourierSeries& psi, std::optional<int> max_radius) {
  return pullback_power(B, psi, 1, max_radius);
}

IncompleteSumError::IncompleteSumError(long long required_K, double tail)
    : TruncationError("T_m pairing truncated: K must be at least " + std::to_string(required_K), tail),
      required_(required_K) {}

namespace {

void check_pairing_args(int m, const ParabolicAffineMap& B, const FourierSeries& psi) {
  require_t2(psi);
  if (m == 0) throw DomainError("T_m is defined for m != 0");
  if (B.n0 == 0) throw DomainError("n0 = 0: torus case, no nontrivial T_m line");
}

// (k, ψ̂(k n₀ m, m)) for every support point on the line, ascending k.
std::vector<std::pair<long long, Complex>> line_coefficients(int m, const ParabolicAffineMap& B,
                                                             const FourierSeries& psi) {
  const long long step = static_cast<long long>(B.n0) * m;
  std::vector<std::pair<long long, Complex>> out;
  for (const auto& [k, c] : psi.coeffs())
    if (k[1] == m && k[0] % step == 0) out.emplace_back(k[0] / step, c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

long long required_truncation(int m, const ParabolicAffineMap& B, const FourierSeries& psi) {
  check_pairing_args(m, B, psi);
  long long r = 0;
  for (const auto& [k, c] : line_coefficients(m, B, psi)) r = std::max(r, std::abs(k));
  return r;
}

Pairing distribution_pair(const InvariantDistributionIndex& idx, const ParabolicAffineMap& B,
                          const FourierSeries& psi) {
  check_pairing_args(idx.m, B, psi);
  if (idx.K < 1) throw DomainError("truncation K must be >= 1");
  const auto line = line_coefficients(idx.m, B, psi);

  Pairing out;
  double tail = 0.0;
  for (const auto& [k, c] : line) {
    out.required_K = std::max(out.required_K, std::abs(k));
    if (std::abs(k) > idx.K) tail += std::abs(c);
  }
  if (out.required_K > idx.K) throw IncompleteSumError(out.required_K, tail);

  // exponent −2πi[(k m)β + (m n₀ k(k−1)/2)ρ]
  for (const auto& [k, c] : line) {
    const double ph = int_times(k * idx.m, B.beta) + int_times(static_cast<long long>(idx.m) * B.n0 * triangular(k), B.rho);
    out.value += c * phase(-ph);
  }
  const long long step = std::abs(static_cast<long long>(B.n0) * idx.m);
  out.exact_tail = (idx.K + 1) * step > psi.support_radius();
  return out;
}

double verify_invariance(const InvariantDistributionIndex& idx, const ParabolicAffineMap& B,
                         const FourierSeries& psi) {
  const FourierSeries pulled = pullback_fourier(B, psi);
  const long long K = std::max({idx.K, required_truncation(idx.m, B, psi), required_truncation(idx.m, B, pulled), 1LL});
  const InvariantDistributionIndex wide{idx.m, K};
  return std::abs(distribution_pair(wide, B, pulled).value - distribution_pair(wide, B, psi).value);
}

IndependenceResult independence_matrix(const std::vector<int>& ms, const ParabolicAffineMap& B,
                                       const std::vector<FourierSeries>& test_functions, double rank_threshold) {
  if (ms.size() > test_functions.size())
    throw DomainError("independence_matrix needs at least as many test functions as distributions");
  IndependenceResult r;
  r.matrix.resize(static_cast<long>(ms.size()), static_cast<long>(test_functions.size()));
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < test_functions.size(); ++j) {
      const long long K = std::max(1LL, required_truncation(ms[i], B, test_functions[j]));
      r.matrix(static_cast<long>(i), static_cast<long>(j)) = distribution_pair({ms[i], K}, B, test_functions[j]).value;
    }
  if (ms.empty()) return r;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r.matrix);
  const auto& sv = svd.singularValues();
  for (long i = 0; i < sv.size(); ++i) {
    r.singular_values.push_back(sv(i));
    if (sv(i) > rank_threshold) ++r.rank;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Suspension

void validate(const SuspensionSpec& spec) {
  if (!(spec.return_time > 0.0)) throw DomainError("suspension return time must be positive");
  if (spec.quadrature_points < 16) throw DomainError("suspension quadrature needs >= 16 points");
}

SuspensionPoint flow(const SuspensionSpec& spec, const SuspensionPoint& x, double t) {
  const double r = spec.return_time;
  const double h = x.s + t;
  const double jd = std::floor(h / r);
  double s = h - jd * r;
  long long j = static_cast<long long>(jd);
  if (s >= r) {  // rounding at the seam
    s -= r;
    ++j;
  }
  return {spec.base.apply_power(x.theta, j), s};
}

double suspension_distance(const SuspensionSpec& spec, const SuspensionPoint& x, const SuspensionPoint& y) {
  double best = std::numeric_limits<double>::infinity();
  for (long long j = -1; j <= 1; ++j) {
    const Point ty = spec.base.apply_power(y.theta, -j);
    const double dt = torus_distance_l2(x.theta, ty);
    const double ds = x.s - (y.s + static_cast<double>(j) * spec.return_time);
    best = std::min(best, std::sqrt(dt * dt + ds * ds));
  }
  return best;
}

SuspensionPairing suspension_pair(const SuspensionSpec& spec, int m, FiberIdentification ident,
                                  const SuspensionFunction& psi, double base_height, double tol, int max_nodes) {
  validate(spec);
  if (ident != FiberIdentification::Identity)
    throw DomainError("suspension pairing needs a fiber identification; only the canonical chart is supported");
  const double r = spec.return_time;

  auto integrand = [&](double t) {
    const double h = base_height + t;
    const long long j = static_cast<long long>(std::floor(h / r));
    double s = h - static_cast<double>(j) * r;
    long long jj = j;
    if (s >= r) {
      s -= r;
      ++jj;
    }
    const FourierSeries slice = pullback_power(spec.base, psi(s), jj);
    const long long K = std::max(1LL, required_truncation(m, spec.base, slice));
    return distribution_pair({m, K}, spec.base, slice).value;
  };
  auto trapezoid = [&](int q) {
    Complex sum{};
    for (int i = 0; i < q; ++i) sum += integrand(r * i / q);
    return sum * (r / q);
  };

  SuspensionPairing out;
  int q = spec.quadrature_points;
  Complex coarse = trapezoid(q);
  while (true) {
    const Complex fine = trapezoid(2 * q);
    out.value = fine;
    out.nodes = 2 * q;
    out.quadrature_error = std::abs(fine - coarse);
    out.converged = out.quadrature_error <= tol;
    if (out.converged || 4 * q > max_nodes) break;
    q *= 2;
    coarse = fine;
  }
  return out;
}

SeparationProfile separation_profile(const SuspensionSpec& spec, const SuspensionPoint& x, const SuspensionPoint& y,
                                     double T, double dt) {
  if (!(dt > 0.0)) throw DomainError("separation_profile: dt must be positive");
  if (T < 0.0) throw DomainError("separation_profile: T must be >= 0");
  SeparationProfile out;
  const auto steps = static_cast<long long>(std::floor(T / dt + 1e-9));
  for (long long i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double d = suspension_distance(spec, flow(spec, x, t), flow(spec, y, t));
    out.profile.emplace_back(t, d);
    out.max_distance = std::max(out.max_distance, d);
  }
  return out;
}

}  // namespace torcoh::parabolic
