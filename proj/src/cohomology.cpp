#include "torcoh/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace torcoh::cohomology {

namespace {

void check_inputs(const FourierSeries& xi, const FrequencyVector& alpha) {
  if (!xi.declared_real()) throw DomainError("cohomological equation needs a declared-real right-hand side");
  xi.check_real(1e-12);
  if (xi.dim() != alpha.dim())
    throw DomainError("series dimension " + std::to_string(xi.dim()) + " differs from frequency dimension " +
                      std::to_string(alpha.dim()));
}

bool is_zero(const Index& k) {
  return std::all_of(k.begin(), k.end(), [](int x) { return x == 0; });
}

// e^{2πi x} − 1 with x reduced; 1 − cos written as 2 sin² to keep digits.
Complex unit_minus_one(double x) {
  const double r = centered_frac(x);
  const double s = std::sin(std::numbers::pi * r);
  return {-2.0 * s * s, std::sin(kTwoPi * r)};
}

template <class DivisorFn>
CohomologySolution solve_generic(const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts,
                                 DivisorFn divisor) {
  check_inputs(xi, alpha);
  CohomologySolution sol;
  sol.u = FourierSeries(xi.dim(), true);
  sol.c = xi.mean();
  for (const auto& [k, xk] : xi.coeffs()) {
    if (is_zero(k)) continue;
    const Complex d = divisor(k);
    const double ad = std::abs(d);
    sol.divisor_report.push_back({k, ad});
    if (ad < opts.divisor_floor) {
      if (std::abs(xk) > opts.coefficient_floor) sol.resonant_set.push_back(k);
      continue;
    }
    sol.u.set(k, xk / d);
  }
  sol.status = sol.resonant_set.empty() ? Status::Complete : Status::Obstructed;
  return sol;
}

}  // namespace

const char* to_string(Status s) { return s == Status::Complete ? "complete" : "obstructed"; }
const char* to_string(Case c) { return c == Case::Map ? "map" : "flow"; }

Complex map_divisor(const Index& k, const FrequencyVector& alpha) { return unit_minus_one(alpha.dot(k)); }

Complex flow_divisor(const Index& k, const FrequencyVector& alpha) { return {0.0, kTwoPi * alpha.dot(k)}; }

CohomologySolution solve_map(const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts) {
  return solve_generic(xi, alpha, opts, [&](const Index& k) { return map_divisor(k, alpha); });
}

CohomologySolution solve_flow(const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts) {
  return solve_generic(xi, alpha, opts, [&](const Index& k) { return flow_divisor(k, alpha); });
}

CohomologySolution solve(Case which, const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts) {
  return which == Case::Map ? solve_map(xi, alpha, opts) : solve_flow(xi, alpha, opts);
}

double verify_solution(const FourierSeries& xi, const FrequencyVector& alpha, const CohomologySolution& sol,
                       const std::vector<std::size_t>& sizes, Case which) {
  if (!sol.complete()) throw DomainError("verify_solution needs a complete solution");
  check_inputs(xi, alpha);
  if (sizes.size() != xi.dim()) throw DomainError("grid dimension differs from series dimension");

  double worst = 0.0;
  if (which == Case::Map) {
    fourier::GridFunction g{sizes, {}};
    const std::size_t total = g.total();
    for (std::size_t j = 0; j < total; ++j) {
      Point th = g.point(j);
      Point shifted = th;
      for (std::size_t i = 0; i < th.size(); ++i) shifted[i] = frac(th[i] + alpha[i]);
      const double r =
          fourier::evaluate(sol.u, shifted) - fourier::evaluate(sol.u, th) - fourier::evaluate(xi, th) + sol.c;
      worst = std::max(worst, std::abs(r));
    }
  } else {
    const auto lu = fourier::synthesize(fourier::directional_derivative(sol.u, alpha.components()), sizes);
    const auto x = fourier::synthesize(xi, sizes);
    for (std::size_t j = 0; j < x.samples.size(); ++j)
      worst = std::max(worst, std::abs(lu.samples[j] - x.samples[j] + sol.c));
  }
  return worst;
}

FourierSeries birkhoff_sum(const FourierSeries& xi, const FrequencyVector& alpha, long long n, double divisor_floor) {
  check_inputs(xi, alpha);
  if (n < 0) throw DomainError("birkhoff_sum: n must be >= 0");
  FourierSeries out(xi.dim(), true);
  const auto nd = static_cast<double>(n);
  for (const auto& [k, xk] : xi.coeffs()) {
    const double x = centered_frac(alpha.dot(k));
    const Complex den = unit_minus_one(x);
    Complex factor;
    if (std::abs(den) < divisor_floor)
      factor = nd;
    else
      factor = unit_minus_one(nd * x) / den;
    out.set(k, xk * factor);
  }
  return out;
}

double birkhoff_sup_norm(const FourierSeries& xi, const FrequencyVector& alpha, long long n,
                         const std::vector<std::size_t>& sizes, double divisor_floor) {
  const auto g = fourier::synthesize(birkhoff_sum(xi, alpha, n, divisor_floor), sizes);
  double m = 0.0;
  for (double v : g.samples) m = std::max(m, std::abs(v));
  return m;
}

BirkhoffReport birkhoff_sup_norms(const FourierSeries& xi, const FrequencyVector& alpha, long long n_max,
                                  const std::vector<std::size_t>& sizes, const SolveOptions& opts) {
  if (n_max < 2) throw DomainError("birkhoff_sup_norms: n_max must be >= 2");
  check_inputs(xi, alpha);
  BirkhoffReport rep;
  for (const auto& [k, xk] : xi.coeffs()) {
    if (is_zero(k)) continue;
    if (std::abs(map_divisor(k, alpha)) < opts.divisor_floor && std::abs(xk) > opts.coefficient_floor)
      rep.resonant.push_back(k);
  }
  rep.linear_growth_warning = !rep.resonant.empty();

  std::vector<long long> ns;
  for (long long n = 1; n <= n_max; n *= 2) ns.push_back(n);
  if (ns.back() != n_max) ns.push_back(n_max);
  for (long long n : ns) rep.samples.emplace_back(n, birkhoff_sup_norm(xi, alpha, n, sizes, opts.divisor_floor));

  double earlier = 0.0;
  for (std::size_t i = 0; i + 1 < rep.samples.size(); ++i) earlier = std::max(earlier, rep.samples[i].second);
  rep.bounded = rep.samples.back().second <= 1.05 * earlier;
  return rep;
}

OrbitSumResult periodic_obstruction(const FourierSeries& xi, long long p, long long q) {
  if (q < 1) throw DomainError("periodic_obstruction: q must be >= 1");
  if (std::gcd(p, q) != 1) throw DomainError("periodic_obstruction: p and q must be coprime");
  if (xi.dim() != 1) throw DomainError("periodic_obstruction: rational rotations act on T^1");
  // Σ_{i<q} e^{2πi k i p/q} is q when q | k and 0 otherwise (gcd(p, q) = 1).
  OrbitSumResult r{FourierSeries(1, xi.declared_real()), false};
  for (const auto& [k, xk] : xi.coeffs())
    if (k[0] % q == 0) r.orbit_sum.set(k, static_cast<double>(q) * xk);
  r.obstruction_vanishes = r.orbit_sum.empty();
  return r;
}

double invariant_measure_average(const FourierSeries& xi) {
  if (!xi.declared_real()) throw DomainError("invariant_measure_average needs a declared-real series");
  return xi.mean();
}

InvariantDensity invariant_density(const FrequencyVector& alpha, const FourierSeries& log_rho0,
                                   const SolveOptions& opts) {
  check_inputs(log_rho0, alpha);
  const FourierSeries rhs = -fourier::directional_derivative(log_rho0, alpha.components());
  const CohomologySolution sol = solve_flow(rhs, alpha, opts);
  InvariantDensity out{log_rho0 + sol.u, sol.c, 0.0, sol.status, sol.resonant_set};
  if (std::abs(sol.c) > 1e-12) throw NumericalError("invariant_density: derivative has nonzero mean");
  const auto drift = fourier::directional_derivative(out.log_density, alpha.components());
  const auto g = fourier::synthesize(drift, fourier::fitting_grid(drift, 2, 16));
  for (double v : g.samples) out.flow_residual = std::max(out.flow_residual, std::abs(v));
  return out;
}

double weighted_coefficient_norm(const FourierSeries& s, double order) {
  double m = 0.0;
  for (const auto& [k, c] : s.coeffs()) {
    int r = 0;
    for (int x : k) r = std::max(r, std::abs(x));
    m = std::max(m, std::abs(c) * std::pow(static_cast<double>(std::max(1, r)), order));
  }
  return m;
}

}  // namespace torcoh::cohomology
