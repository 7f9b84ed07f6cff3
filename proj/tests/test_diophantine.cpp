#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "torcoh/diophantine.hpp"
#include "torcoh/rng.hpp"

using namespace torcoh;
using namespace torcoh::diophantine;

namespace {
const double phi = kGoldenRatio;
const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
}  // namespace

TEST_CASE("scan matches exhaustive enumeration on small boxes") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 3;
    std::vector<double> a(d);
    for (auto& x : a) x = rng.uniform(-2.0, 2.0);
    const FrequencyVector alpha(a);
    const double tau = 0.5 + rng.uniform() * 2.0;
    const long long N = d == 3 ? 12 : 60;
    const auto cert = check_diophantine(alpha, 1e-3, tau, N);
    const auto ref = oracle::brute_force_margin(alpha, tau, N);
    CHECK(cert.worst_margin == doctest::Approx(ref.margin).epsilon(1e-12));
    CHECK(cert.worst_point == ref.point);
    const auto tail = oracle::brute_force_margin(alpha, tau, N, cert.tail_from);
    CHECK(cert.tail_margin == doctest::Approx(tail.margin).epsilon(1e-12));
  }
}

TEST_CASE("golden vector holds at C = 0.44") {
  const auto cert = check_diophantine({1.0, phi}, 0.44, 1.0, 10000);
  CHECK(cert.holds());
  CHECK(cert.verdict == Verdict::Holds);
  // global minimum sits at the first convergent, margin |1 − φ| = 1/φ
  CHECK(cert.worst_point == IntVec{1, -1});
  CHECK(cert.worst_margin == doctest::Approx(1.0 / phi).epsilon(1e-12));
  CHECK(cert.worst_margin > cert.C);
  // with the sup norm on p = (p1, p2) and |p1| ≈ φ|p2|, the liminf is φ/√5
  CHECK(cert.tail_margin == doctest::Approx(phi * inv_sqrt5).epsilon(0.01));
}

TEST_CASE("rational resonance is a hard failure with witness") {
  const auto cert = check_diophantine({1.0, 0.5}, 0.1, 1.0, 5);
  CHECK(cert.verdict == Verdict::Resonant);
  CHECK_FALSE(cert.holds());
  REQUIRE(cert.resonance_witness.has_value());
  CHECK(*cert.resonance_witness == IntVec{1, -2});
}

TEST_CASE("one-dimensional integer frequency") {
  const auto cert = check_diophantine({1.0}, 0.5, 1.0, 100);
  CHECK(cert.holds());
  CHECK(cert.worst_margin == doctest::Approx(1.0));
  CHECK(cert.worst_point == IntVec{1});
}

TEST_CASE("monotone in N") {
  const FrequencyVector a{1.0, std::sqrt(2.0), std::sqrt(3.0)};
  double prev = std::numeric_limits<double>::infinity();
  bool failed = false;
  for (long long N : {2, 4, 8, 16, 24}) {
    const auto cert = check_diophantine(a, 0.05, 1.0, N);
    CHECK(cert.worst_margin <= prev);
    prev = cert.worst_margin;
    if (failed) CHECK_FALSE(cert.holds());
    failed = failed || !cert.holds();
  }
}

TEST_CASE("scaling α and C together keeps verdict and worst point") {
  SplitMix64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const FrequencyVector a{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0)};
    const double lambda = rng.uniform(0.2, 5.0);
    const double C = rng.uniform(0.001, 0.05);
    const auto c1 = check_diophantine(a, C, 1.0, 80);
    const auto c2 = check_diophantine(a.scaled(lambda), lambda * C, 1.0, 80);
    CHECK(c1.verdict == c2.verdict);
    CHECK(c1.worst_point == c2.worst_point);
  }
}

TEST_CASE("ratio condition for the golden ratio") {
  const auto cert = ratio_condition(1.0, phi, 0.1, 1.0, 10000);
  // brute force over n: |m + nφ|·n with m nearest to −nφ
  double best = std::numeric_limits<double>::infinity();
  long long best_n = 0;
  for (long long n = 1; n <= 10000; ++n) {
    const double m = std::nearbyint(-n * phi);
    const double v = std::abs(m + n * phi) * n;
    if (v < best) best = v, best_n = n;
  }
  CHECK(cert.worst_margin == doctest::Approx(best).epsilon(1e-9));
  CHECK(cert.worst_point.at(1) == best_n);
  CHECK(cert.worst_margin == doctest::Approx(2.0 - phi).epsilon(1e-9));
  CHECK(cert.tail_margin == doctest::Approx(inv_sqrt5).epsilon(0.01));
  CHECK(cert.holds());
}

TEST_CASE("ratio condition: resonance and domain errors") {
  const auto cert = ratio_condition(2.0, 1.0, 0.1, 1.0, 100);
  CHECK(cert.verdict == Verdict::Resonant);
  REQUIRE(cert.resonance_witness.has_value());
  CHECK(*cert.resonance_witness == IntVec{-1, 2});
  CHECK_THROWS_AS(ratio_condition(0.0, 1.0, 0.1, 1.0, 100), DomainError);
}

TEST_CASE("integer rescaling of the components keeps a Diophantine bound") {
  // |rα0/k0 + sα1/k1| = |r k1 α0 + s k0 α1|/(k0 k1) and |(r k1, s k0)|∞ ≤
  // max(k0,k1)|(r,s)|∞, so C̃ = C/(k0 k1 max(k0,k1)^τ) works for the
  // rescaled vector when C holds on the enlarged box.
  const double tau = 1.0;
  const long long N = 200;
  for (const auto [k0, k1] : {std::pair{2, 2}, {2, 3}, {3, 1}, {5, 2}}) {
    const long long km = std::max(k0, k1);
    const double C = check_diophantine({1.0, phi}, 1e-6, tau, N * km).worst_margin;
    const double bound = C / (k0 * k1 * std::pow(static_cast<double>(km), tau));
    const auto scaled = check_diophantine({1.0 / k0, phi / k1}, bound, tau, N);
    CHECK(scaled.worst_margin >= bound * (1.0 - 1e-12));
    CHECK(scaled.verdict != Verdict::Resonant);
  }
  // ratio_condition with α = (2, 2φ) sees the same ratio as (1, φ)
  const auto r1 = ratio_condition(1.0, phi, 0.1, 1.0, 1000);
  const auto r2 = ratio_condition(2.0, 2.0 * phi, 0.1, 1.0, 1000);
  CHECK(r2.worst_margin == doctest::Approx(r1.worst_margin).epsilon(1e-12));
  CHECK(r2.holds());
}

TEST_CASE("ratio margin and box margin bracket each other") {
  SplitMix64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const double rho = rng.uniform(0.01, 0.99);
    const long long N = 300;
    const auto box = check_diophantine({1.0, rho}, 1e-9, 1.0, N);
    const auto ratio = ratio_condition(1.0, rho, 1e-9, 1.0, N);
    // for ρ ∈ (0,1) the ratio's worst point lies in the box with |m| ≤ n
    CHECK(box.worst_margin <= ratio.worst_margin * (1.0 + 1e-12));
    CHECK(box.worst_margin >= std::min(1.0, ratio.worst_margin) * (1.0 - 1e-12));
  }
}

TEST_CASE("continued fractions") {
  SUBCASE("golden ratio") {
    const auto cf = continued_fraction(phi, 6);
    CHECK(cf.partial_quotients == std::vector<long long>{1, 1, 1, 1, 1, 1});
    CHECK_FALSE(cf.effectively_rational);
  }
  SUBCASE("sqrt 2") {
    CHECK(continued_fraction(std::sqrt(2.0), 4).partial_quotients == std::vector<long long>{1, 2, 2, 2});
  }
  SUBCASE("3/7 terminates") {
    const auto cf = continued_fraction(3.0 / 7.0, 3);
    CHECK(cf.partial_quotients == std::vector<long long>{0, 2, 3});
    CHECK(cf.convergents.back() == std::pair<long long, long long>{3, 7});
  }
  SUBCASE("rational beyond requested terms is flagged") {
    const auto cf = continued_fraction(0.5, 6);
    CHECK(cf.partial_quotients == std::vector<long long>{0, 2});
    CHECK(cf.effectively_rational);
  }
  SUBCASE("convergent invariants") {
    SplitMix64 rng(5);
    for (int t = 0; t < 30; ++t) {
      const double x = rng.uniform(-3.0, 3.0);
      const auto cf = continued_fraction(x, 12);
      const auto& a = cf.partial_quotients;
      const auto& c = cf.convergents;
      REQUIRE(a.size() == c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        CHECK(std::gcd(c[k].first, c[k].second) == 1);
        if (k >= 2) {
          CHECK(c[k].second == a[k] * c[k - 1].second + c[k - 2].second);
          CHECK(c[k].first == a[k] * c[k - 1].first + c[k - 2].first);
        }
        if (k >= 2) CHECK(c[k].second > c[k - 1].second);
        // alternation around x (until the expansion becomes exact)
        const double e = static_cast<double>(c[k].first) / c[k].second - x;
        if (k >= 1 && std::abs(e) > 1e-13) {
          const double prev = static_cast<double>(c[k - 1].first) / c[k - 1].second - x;
          if (std::abs(prev) > 1e-13) CHECK(e * prev < 0.0);
        }
      }
    }
  }
  CHECK_THROWS_AS(continued_fraction(std::nan(""), 3), DomainError);
  CHECK_THROWS_AS(continued_fraction(1.5, 0), DomainError);
}

TEST_CASE("exponent estimates") {
  SUBCASE("golden and sqrt 2 fit tau near 1") {
    for (const double x : {phi, std::sqrt(2.0)}) {
      const FrequencyVector a{1.0, x};
      const auto est = estimate_exponent(a, 4096);
      CHECK(est.tau_hat == doctest::Approx(1.0).epsilon(0.15));
      CHECK_FALSE(est.flagged_non_diophantine);
      // samples agree with an unpruned scan at small radii
      for (const auto& [R, v] : est.samples) {
        if (R > 64) break;
        CHECK(v == doctest::Approx(oracle::brute_force_margin(a, 0.0, R).margin).epsilon(1e-12));
      }
    }
  }
  SUBCASE("truncated Liouville number is flagged") {
    const double liouville = 0.1 + 0.01 + 1e-6;  // Σ 10^{−k!}, terms below 1e−24 drop out
    const auto est = estimate_exponent({1.0, liouville}, 4096);
    CHECK(est.flagged_non_diophantine);
    CHECK(est.max_local_slope > 4.0);
  }
  SUBCASE("resonance propagates") {
    CHECK_THROWS_AS(estimate_exponent({1.0, 0.25}, 64), ResonanceError);
  }
  CHECK_THROWS_AS(estimate_exponent({1.0, phi}, 5), DomainError);
}
