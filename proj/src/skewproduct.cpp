#include "torcoh/skewproduct.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace torcoh::skewproduct {

namespace {

double ev(const FourierSeries& s, double x) {
  const double p[1] = {x};
  return fourier::evaluate(s, p);
}

}  // namespace

void SkewProductMap::validate() const {
  if (!std::isfinite(rho)) throw DomainError("skew product: rho must be finite");
  if (chi.dim() != 1) throw DomainError("skew product: chi must be a series on T^1");
  if (!chi.declared_real()) throw DomainError("skew product: chi must be real");
  chi.check_real(1e-12);
}

Point SkewProductMap::apply(const Point& theta) const {
  if (theta.size() != 2) throw DomainError("skew product acts on T^2");
  return {frac(theta[0] + rho), frac(theta[1] + n0 * theta[0] + ev(chi, frac(theta[0])))};
}

double linearization_residual(const SkewProductMap& P, const FourierSeries& zeta, double beta, std::size_t grid) {
  const parabolic::ParabolicAffineMap B{P.n0, P.rho, beta};
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double z = ev(zeta, x);
    const double z_next = ev(zeta, frac(x + P.rho));
    for (std::size_t j = 0; j < grid; ++j) {
      const double y = static_cast<double>(j) / grid;
      Point q = P.apply({x, frac(y + z)});
      q[1] = frac(q[1] - z_next);
      worst = std::max(worst, torus_distance(q, B.apply({x, y})));
    }
  }
  return worst;
}

Linearization linearize(const SkewProductMap& P, double divisor_floor) {
  P.validate();
  Linearization out;
  out.beta = P.chi.mean();
  cohomology::SolveOptions opts;
  opts.divisor_floor = divisor_floor;
  const auto sol =
      cohomology::solve_map(P.chi - FourierSeries::constant(1, out.beta), FrequencyVector{P.rho}, opts);
  out.status = sol.status;
  out.resonant_set = sol.resonant_set;
  out.zeta = sol.u;
  if (!sol.complete()) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.residual = linearization_residual(P, out.zeta, out.beta);
  return out;
}

CircleMap::CircleMap(FourierSeries perturbation) : p_(std::move(perturbation)) {
  if (p_.dim() != 1 || !p_.declared_real()) throw InvalidLiftError("circle map perturbation must be a real series on T^1");
  p_.check_real(1e-12);
  samples_.resize(kMonotoneGrid + 1);
  for (std::size_t j = 0; j <= kMonotoneGrid; ++j) {
    const double x = static_cast<double>(j) / kMonotoneGrid;
    samples_[j] = x + ev(p_, frac(x));
  }
  for (std::size_t j = 0; j < kMonotoneGrid; ++j)
    if (!(samples_[j + 1] > samples_[j]))
      throw InvalidLiftError("lift is not strictly increasing near x = " +
                             std::to_string(static_cast<double>(j) / kMonotoneGrid));
}

double CircleMap::lift(double x) const {
  const double fl = std::floor(x);
  return fl + (x - fl) + ev(p_, x - fl);
}

double CircleMap::inverse_lift(double y) const {
  // lift(x) − x is periodic, so the preimage lies within one period of y − p̄
  double lo = y - samples_.front() - 1.0, hi = lo + 2.0;
  while (lift(lo) > y) lo -= 1.0;
  while (lift(hi) < y) hi += 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lift(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RotationNumber rotation_number(const CircleMap& g, long long n) {
  if (n < 100) throw DomainError("rotation_number: n must be >= 100");
  const double lo = g.lift(0.0), hi = lo + 1.0;
  long long whole = 0;
  double x = 0.0;  // kept in [0, 1)
  for (long long i = 0; i < n; ++i) {
    const double y = g.lift(x);
    // for a monotone degree-one lift, x ∈ [0,1) maps into [lift(0), lift(0)+1)
    if (y < lo - 1e-12 || y > hi + 1e-12) throw InvalidLiftError("lift monotonicity violated during iteration");
    const double fl = std::floor(y);
    whole += static_cast<long long>(fl);
    x = y - fl;
  }
  const double dn = static_cast<double>(n);
  return {static_cast<double>(whole) / dn + x / dn, 1.0 / dn};
}

double verify_constant_conjugacy(const std::vector<GridFunction>& X, const std::vector<FourierSeries>& u,
                                 const FrequencyVector& alpha) {
  const std::size_t d = alpha.dim();
  if (X.size() != d || u.size() != d) throw DomainError("verify_constant_conjugacy: component count must equal dim");
  const auto& sizes = X.front().sizes;
  for (const auto& xi : X) {
    xi.validate();
    if (xi.sizes != sizes) throw DomainError("verify_constant_conjugacy: X components on different grids");
  }
  if (sizes.size() != d) throw DomainError("verify_constant_conjugacy: grid dimension mismatch");
  for (const auto& ui : u)
    if (ui.dim() != d) throw DomainError("verify_constant_conjugacy: displacement dimension mismatch");

  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> dfx = X[i].samples;
    for (std::size_t j = 0; j < d; ++j) {
      // AliasingError (a DomainError) if u_i does not fit the grid
      const auto du = fourier::synthesize(fourier::partial_derivative(u[i], j), sizes);
      for (std::size_t p = 0; p < dfx.size(); ++p) dfx[p] += X[j].samples[p] * du.samples[p];
    }
    for (double v : dfx) worst = std::max(worst, std::abs(v - alpha[i]));
  }
  return worst;
}

}  // namespace torcoh::skewproduct
