#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "torcoh/cohomology.hpp"
#include "torcoh/diophantine.hpp"

using namespace torcoh;
using namespace torcoh::cohomology;
using fourier::GridFunction;
using fourier::random_real_series;

namespace {

const double phi = kGoldenRatio;

// u(θ + α) − u(θ) + c, built by translation.
FourierSeries map_coboundary(const FourierSeries& u, const FrequencyVector& a, double c) {
  return fourier::translate(u, a.components()) - u + FourierSeries::constant(u.dim(), c);
}

// Σ_{i<n} ξ(θ + iα) by direct summation.
double direct_birkhoff(const FourierSeries& xi, const FrequencyVector& a, long long n, const Point& th) {
  double s = 0.0;
  Point p = th;
  for (long long i = 0; i < n; ++i) {
    s += fourier::evaluate(xi, p);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = frac(p[j] + a[j]);
  }
  return s;
}

}  // namespace

TEST_CASE("map case: constants and round trip") {
  const auto c5 = solve_map(FourierSeries::constant(1, 5.0), {phi - 1});
  CHECK(c5.u.empty());
  CHECK(c5.c == 5.0);
  CHECK(c5.complete());

  const FrequencyVector a{phi - 1};
  const auto u0 = FourierSeries::sine({1});
  const auto xi = map_coboundary(u0, a, 2.0);
  const auto sol = solve_map(xi, a);
  CHECK(sol.complete());
  CHECK(sol.c == 2.0);
  CHECK(fourier::max_coeff_diff(sol.u, u0) < 1e-12);
  CHECK(verify_solution(xi, a, sol, {64}, Case::Map) < 1e-10);
}

TEST_CASE("map case: resonances at alpha = 1/2") {
  const auto ok = solve_map(FourierSeries::cosine({1}), {0.5});
  CHECK(ok.complete());
  const auto bad = solve_map(FourierSeries::cosine({2}), {0.5});
  CHECK(bad.status == Status::Obstructed);
  CHECK(bad.resonant_set == std::vector<Index>{{-2}, {2}});
  // divisor records for the resonant pair sit below the floor
  for (const auto& r : bad.divisor_report) CHECK(r.divisor < 1e-10);
}

TEST_CASE("flow case") {
  const auto c0 = solve_flow(FourierSeries::constant(2, -1.5), {1.0, phi});
  CHECK(c0.u.empty());
  CHECK(c0.c == -1.5);

  const FrequencyVector a{1.0, phi};
  const auto u0 = FourierSeries::cosine({1, 1});
  // L_α cos(2π(θ0+θ1)) = −2π(1+φ) sin(2π(θ0+θ1))
  const auto xi = FourierSeries::sine({1, 1}, -kTwoPi * (1.0 + phi));
  const auto sol = solve_flow(xi, a);
  CHECK(sol.complete());
  CHECK(fourier::max_coeff_diff(sol.u, u0) < 1e-12);
  CHECK(verify_solution(xi, a, sol, {16, 16}, Case::Flow) < 1e-10);

  const auto res = solve_flow(FourierSeries::cosine({1, -1}), {1.0, 1.0});
  CHECK(res.status == Status::Obstructed);
  CHECK(res.resonant_set == std::vector<Index>{{-1, 1}, {1, -1}});
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(solve_map(FourierSeries::cosine({1, 0}), {0.3}), DomainError);
  FourierSeries complex_series(1, false);
  complex_series.set({1}, {1.0, 0.0});
  CHECK_THROWS_AS(solve_map(complex_series, {0.3}), DomainError);
}

TEST_CASE("verify_solution on trivial candidates") {
  const FrequencyVector a{phi - 1};
  const auto xi = FourierSeries::cosine({2}, 0.7) + FourierSeries::constant(1, 0.3);
  CohomologySolution naive;
  naive.u = FourierSeries(1);
  naive.c = xi.mean();
  CHECK(verify_solution(xi, a, naive, {64}, Case::Map) == doctest::Approx(0.7).epsilon(1e-12));
  CohomologySolution zero;
  zero.u = FourierSeries(1);
  CHECK(verify_solution(FourierSeries(1), a, zero, {8}, Case::Map) == 0.0);
}

TEST_CASE("linearity and coboundary idempotence") {
  SplitMix64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 1 + t % 3;
    std::vector<double> av = {phi - 1, std::sqrt(2.0) - 1, std::sqrt(3.0) - 1};
    av.resize(d);
    const FrequencyVector a(av);
    const auto x1 = random_real_series(d, 4, rng);
    const auto x2 = random_real_series(d, 3, rng);
    const double s1 = rng.uniform(-2, 2), s2 = rng.uniform(-2, 2);
    const auto lhs = solve_map(s1 * x1 + s2 * x2, a);
    const auto rhs = s1 * solve_map(x1, a).u + s2 * solve_map(x2, a).u;
    CHECK(fourier::max_coeff_diff(lhs.u, rhs) < 1e-12);

    const auto u0 = random_real_series(d, 5, rng);
    const double c = rng.uniform(-1, 1);
    const auto sol = solve_map(map_coboundary(u0, a, c), a);
    CHECK(fourier::max_coeff_diff(sol.u, u0 - FourierSeries::constant(d, u0.mean())) < 1e-12);
    CHECK(sol.c == doctest::Approx(c).epsilon(1e-15));
  }
}

TEST_CASE("Birkhoff sums") {
  const FrequencyVector a{phi - 1};
  SUBCASE("closed form matches direct summation") {
    SplitMix64 rng(5);
    const auto xi = random_real_series(1, 5, rng);
    for (long long n : {1LL, 7LL, 100LL, 333LL}) {
      const auto s = birkhoff_sum(xi, a, n);
      for (int t = 0; t < 5; ++t) {
        const Point th{rng.uniform()};
        CHECK(fourier::evaluate(s, th) == doctest::Approx(direct_birkhoff(xi, a, n, th)).epsilon(1e-10));
      }
    }
  }
  SUBCASE("constant grows linearly") {
    const auto rep = birkhoff_sup_norms(FourierSeries::constant(1, 1.0), a, 1000, {16});
    for (const auto& [n, v] : rep.samples) CHECK(v == doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
    CHECK_FALSE(rep.bounded);
    CHECK(rep.samples.back().first == 1000);
  }
  SUBCASE("coboundaries stay bounded by twice sup |u|") {
    SplitMix64 rng(23);
    for (int t = 0; t < 5; ++t) {
      const auto u0 = random_real_series(2, 4, rng);
      const FrequencyVector a2{phi - 1, std::sqrt(2.0) - 1};
      const auto xi = map_coboundary(u0, a2, 0.0);
      const auto rep = birkhoff_sup_norms(xi, a2, 4096, {32, 32});
      const double bound = 2.0 * fourier::sup_norm(u0) + 1e-8;
      for (const auto& [n, v] : rep.samples) CHECK(v <= bound);
      CHECK_FALSE(rep.linear_growth_warning);
    }
  }
  SUBCASE("single mode over a Liouville-like rotation") {
    // S_n cos = Re(e^{2πiθ}(1 − e^{2πinρ})/(1 − e^{2πiρ})), so every sum is
    // bounded by 1/sin(πρ) whatever ρ is; growth needs mass on many modes.
    const double rho = 0.110001;
    const auto xi = FourierSeries::cosine({1});
    const double cap = 1.0 / std::sin(std::numbers::pi * rho);
    for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
      const double v = birkhoff_sup_norm(xi, {rho}, n, {64});
      CHECK(v <= cap + 1e-12);
      const Point th{0.25};
      CHECK(fourier::evaluate(birkhoff_sum(xi, {rho}, n), th) ==
            doctest::Approx(direct_birkhoff(xi, {rho}, n, th)).epsilon(1e-9));
    }
    // near-return at n = 100 (100ρ ≈ 11.0001) makes the small-n value tiny
    CHECK(birkhoff_sup_norm(xi, {rho}, 10000, {64}) > 10.0 * birkhoff_sup_norm(xi, {rho}, 100, {64}));
  }
}

TEST_CASE("periodic orbit sums over rational rotations") {
  auto direct = [](const FourierSeries& xi, long long p, long long q, double th) {
    double s = 0.0;
    for (long long i = 0; i < q; ++i) {
      const Point x{frac(th + static_cast<double>(i * p) / q)};
      s += fourier::evaluate(xi, x);
    }
    return s;
  };
  const auto r1 = periodic_obstruction(FourierSeries::cosine({1}), 1, 2);
  CHECK(r1.orbit_sum.empty());
  CHECK(r1.obstruction_vanishes);

  const auto r2 = periodic_obstruction(FourierSeries::constant(1, 1.0), 1, 3);
  CHECK(r2.orbit_sum == FourierSeries::constant(1, 3.0));
  CHECK_FALSE(r2.obstruction_vanishes);

  const auto r3 = periodic_obstruction(FourierSeries::cosine({2}), 1, 2);
  CHECK_FALSE(r3.obstruction_vanishes);
  for (double th : {0.0, 0.1, 0.37}) {
    const Point x{th};
    CHECK(fourier::evaluate(r3.orbit_sum, x) == doctest::Approx(direct(FourierSeries::cosine({2}), 1, 2, th)));
    CHECK(fourier::evaluate(r3.orbit_sum, x) == doctest::Approx(2.0 * std::cos(4.0 * std::numbers::pi * th)));
  }
  CHECK_THROWS_AS(periodic_obstruction(FourierSeries::cosine({1}), 2, 4), DomainError);
  CHECK_THROWS_AS(periodic_obstruction(FourierSeries::cosine({1}), 1, 0), DomainError);
}

TEST_CASE("invariant measure average") {
  CHECK(invariant_measure_average(FourierSeries::constant(1, 4.0) + FourierSeries::cosine({1})) == 4.0);
  CHECK(invariant_measure_average(FourierSeries::cosine({1})) == 0.0);
  SplitMix64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const auto xi = random_real_series(2, 5, rng);
    const auto g = fourier::synthesize(xi, {16, 16});
    const double mean = std::accumulate(g.samples.begin(), g.samples.end(), 0.0) / static_cast<double>(g.total());
    CHECK(invariant_measure_average(xi) == doctest::Approx(mean).epsilon(1e-10));
    // pairing with Haar equals the solver's constant
    CHECK(solve_map(xi, {phi - 1, std::sqrt(2.0)}).c == invariant_measure_average(xi));
  }
}

TEST_CASE("invariant density") {
  const auto flat = invariant_density({phi}, FourierSeries(1));
  CHECK(flat.log_density.empty());
  CHECK(flat.c == 0.0);

  const auto d = invariant_density({phi}, FourierSeries::sine({1}));
  CHECK(d.status == Status::Complete);
  CHECK(d.c == 0.0);
  CHECK(d.flow_residual <= 1e-10);
  CHECK(fourier::sup_norm(d.log_density - FourierSeries::constant(1, d.log_density.mean())) <= 1e-10);

  SplitMix64 rng(2);
  for (int t = 0; t < 5; ++t) {
    const auto lr = random_real_series(2, 3, rng);
    const auto r = invariant_density({1.0, phi}, lr);
    CHECK(r.c == 0.0);
    CHECK(r.flow_residual <= 1e-10);
  }
  // a mode on the resonant line is already invariant: nothing to correct
  const auto res = invariant_density({1.0, 1.0}, FourierSeries::cosine({1, -1}));
  CHECK(res.status == Status::Complete);
  CHECK(res.log_density == FourierSeries::cosine({1, -1}));
}

TEST_CASE("tame estimate from a Diophantine certificate") {
  // |û_k| = |ξ̂_k|/(2π|k·α|) ≤ |ξ̂_k|·|k|^τ/(2πC)
  SplitMix64 rng(41);
  const FrequencyVector a{1.0, phi};
  const double tau = 1.0;
  for (int t = 0; t < 10; ++t) {
    const int R = 2 + static_cast<int>(rng.integer(0, 6));
    const auto xi = random_real_series(2, R, rng);
    const auto cert = diophantine::check_diophantine(a, 1e-6, tau, R);
    REQUIRE(cert.holds());
    const auto sol = solve_flow(xi, a);
    for (double s : {0.0, 1.0, 2.5}) {
      CHECK(weighted_coefficient_norm(sol.u, s) <=
            weighted_coefficient_norm(xi, s + tau + 2.0) / cert.worst_margin * (1.0 + 1e-12));
    }
  }
}
