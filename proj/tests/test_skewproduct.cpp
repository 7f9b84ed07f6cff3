#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torcoh/skewproduct.hpp"

using namespace torcoh;
using namespace torcoh::skewproduct;
using fourier::random_real_series;

namespace {

const double rho_g = kGoldenRatio - 1.0;

// χ = β + ζ(x+ρ) − ζ(x), so ζ linearises P by construction.
FourierSeries forward_chi(const FourierSeries& zeta, double beta, double rho) {
  const double shift[] = {rho};
  return FourierSeries::constant(1, beta) + fourier::translate(zeta, shift) - zeta;
}

}  // namespace

TEST_CASE("skew product map") {
  const SkewProductMap P{0.25, 2, FourierSeries::cosine({1}, 0.1)};
  const auto y = P.apply({0.5, 0.1});
  CHECK(y[0] == doctest::Approx(0.75));
  // 0.1 + 2·0.5 + 0.1·cos(π) = 1.0 ≡ 0
  CHECK(circle_distance(y[1], 0.0) < 1e-15);

  const parabolic::ParabolicAffineMap B{3, rho_g, 0.4};
  const SkewProductMap C{rho_g, 3, FourierSeries::constant(1, 0.4)};
  SplitMix64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Point x{rng.uniform(), rng.uniform()};
    CHECK(torus_distance(C.apply(x), B.apply(x)) < 1e-14);
  }
  CHECK_THROWS_AS((SkewProductMap{0.1, 1, FourierSeries::constant(2, 0.0)}.validate()), DomainError);
  CHECK_THROWS_AS(P.apply({0.1}), DomainError);
}

TEST_CASE("linearisation") {
  SUBCASE("constant fibre shift") {
    const auto L = linearize({rho_g, 1, FourierSeries::constant(1, 0.37)});
    CHECK(L.complete());
    CHECK(L.beta == 0.37);
    CHECK(L.zeta.coeffs().empty());
    CHECK(L.residual < 1e-15);
  }
  SUBCASE("recovers a planted conjugacy") {
    SplitMix64 rng(22);
    for (const int n0 : {0, 1, -2}) {
      const auto zeta0 = random_real_series(1, 6, rng, 0.2, 0.3, true);
      const SkewProductMap P{rho_g, n0, forward_chi(zeta0, 0.3, rho_g)};
      const auto L = linearize(P);
      REQUIRE(L.complete());
      CHECK(L.beta == doctest::Approx(0.3).epsilon(1e-14));
      CHECK(fourier::max_coeff_diff(L.zeta, zeta0) < 1e-12);
      CHECK(L.residual <= 1e-10);

      // pointwise check of f⁻¹∘P∘f against the affine map
      const auto A = L.affine(n0, rho_g);
      double worst = 0.0;
      for (int t = 0; t < 200; ++t) {
        const Point x{rng.uniform(), rng.uniform()};
        const Point fx{x[0], x[1] + fourier::evaluate(zeta0, Point{x[0]})};
        Point y = P.apply(fx);
        y[1] -= fourier::evaluate(zeta0, Point{y[0]});
        worst = std::max(worst, torus_distance(y, A.apply(x)));
      }
      CHECK(worst < 1e-12);
      // a wrong mean shows up as a fibre offset of the same size
      CHECK(linearization_residual(P, zeta0, 0.31) == doctest::Approx(0.01).epsilon(1e-6));
    }
  }
  SUBCASE("resonant rotation") {
    const auto L = linearize({0.5, 1, FourierSeries::constant(1, 0.1) + FourierSeries::cosine({2})});
    CHECK_FALSE(L.complete());
    CHECK(L.status == cohomology::Status::Obstructed);
    CHECK_FALSE(L.resonant_set.empty());
  }
}

TEST_CASE("circle maps and rotation numbers") {
  const auto rigid = rotation_number(CircleMap::rotation(0.3), 1000);
  CHECK(rigid.rho_hat == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rigid.error_bound == doctest::Approx(1e-3));
  CHECK(rotation_number(CircleMap::rotation(3.0 / 7.0), 700).rho_hat == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK(rotation_number(CircleMap::rotation(2.25), 400).rho_hat == doctest::Approx(2.25).epsilon(1e-12));

  // Arnold family at ω = 1/2: 0 ↦ 1/2 ↦ 1 is a lifted period-two orbit
  const CircleMap arnold(FourierSeries::constant(1, 0.5) + FourierSeries::sine({1}, 0.5 / kTwoPi));
  CHECK(rotation_number(arnold, 1000).rho_hat == doctest::Approx(0.5).epsilon(1e-12));

  SUBCASE("smooth conjugate of an irrational rotation") {
    // g = h⁻¹∘R_ρ∘h with h(x) = x + (0.1/2π) sin 2πx, analytic so a 256-point
    // analysis of g(x) − x is accurate to rounding
    const CircleMap h(FourierSeries::sine({1}, 0.1 / kTwoPi));
    const auto g = fourier::GridFunction::sample(
        {256}, [&](const Point& x) { return h.inverse_lift(h.lift(x[0]) + rho_g) - x[0]; });
    const CircleMap conj(fourier::analyze(g));
    for (const long long n : {1000LL, 10000LL}) {
      const auto r = rotation_number(conj, n);
      CHECK(std::abs(r.rho_hat - rho_g) <= r.error_bound);
    }
  }
  SUBCASE("inverse lift") {
    const CircleMap g(FourierSeries::constant(1, 0.2) + FourierSeries::cosine({1}, 0.05));
    SplitMix64 rng(23);
    for (int t = 0; t < 50; ++t) {
      const double y = rng.uniform(-3.0, 3.0);
      CHECK(g.lift(g.inverse_lift(y)) == doctest::Approx(y).epsilon(1e-14));
    }
    CHECK(g.lift(1.3) == doctest::Approx(g.lift(0.3) + 1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(CircleMap(FourierSeries::sine({1}, 0.3)), InvalidLiftError);
  CHECK_THROWS_AS(CircleMap(FourierSeries::constant(2, 0.0)), InvalidLiftError);
  CHECK_THROWS_AS(rotation_number(CircleMap::rotation(0.1), 10), DomainError);
}

TEST_CASE("constant conjugacy check") {
  const FrequencyVector alpha{1.0, kGoldenRatio};
  const std::vector<std::size_t> sizes{32, 32};
  const auto constant_field = [&](double c) { return fourier::GridFunction::sample(sizes, [c](const Point&) { return c; }); };
  const std::vector<fourier::GridFunction> X0{constant_field(alpha[0]), constant_field(alpha[1])};
  const std::vector<FourierSeries> zero{FourierSeries(2), FourierSeries(2)};
  CHECK(verify_constant_conjugacy(X0, zero, alpha) == 0.0);

  SplitMix64 rng(24);
  const std::vector<FourierSeries> u{random_real_series(2, 3, rng, 0.01, 0.0, true),
                                     random_real_series(2, 3, rng, 0.01, 0.0, true)};

  SUBCASE("field pulled back through θ + u(θ)") {
    // X = (I + Du)⁻¹ α pointwise
    std::array<std::array<FourierSeries, 2>, 2> du;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) du[i][j] = fourier::partial_derivative(u[i], j);
    std::vector<fourier::GridFunction> X(2);
    for (std::size_t c = 0; c < 2; ++c) {
      X[c] = fourier::GridFunction::sample(sizes, [&](const Point& p) {
        const double a = 1 + fourier::evaluate(du[0][0], p), b = fourier::evaluate(du[0][1], p);
        const double e = fourier::evaluate(du[1][0], p), d = 1 + fourier::evaluate(du[1][1], p);
        const double det = a * d - b * e;
        return c == 0 ? (d * alpha[0] - b * alpha[1]) / det : (-e * alpha[0] + a * alpha[1]) / det;
      });
    }
    CHECK(verify_constant_conjugacy(X, u, alpha) <= 1e-9);
  }
  SUBCASE("a non-solution reports max |L_α u|") {
    double expect = 0.0;
    for (const auto& ui : u) {
      const auto g = fourier::synthesize(fourier::directional_derivative(ui, alpha.components()), sizes);
      for (double v : g.samples) expect = std::max(expect, std::abs(v));
    }
    const double r = verify_constant_conjugacy(X0, u, alpha);
    CHECK(r == doctest::Approx(expect).epsilon(1e-12));
    const std::vector<FourierSeries> shifted{u[0] + FourierSeries::constant(2, 0.4), u[1] - FourierSeries::constant(2, 0.1)};
    CHECK(verify_constant_conjugacy(X0, shifted, alpha) == doctest::Approx(r).epsilon(1e-14));
  }
  CHECK_THROWS_AS(verify_constant_conjugacy({X0[0]}, u, alpha), DomainError);
  CHECK_THROWS_AS(verify_constant_conjugacy({X0[0], constant_field(1.0)}, {u[0], FourierSeries(1)}, alpha), DomainError);
}
