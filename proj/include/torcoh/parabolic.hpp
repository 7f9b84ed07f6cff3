#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "torcoh/fourier.hpp"

namespace torcoh::parabolic {

using fourier::Complex;
using fourier::FourierSeries;
using fourier::Index;

/// B(θ⁰, θ¹) = (θ⁰ + ρ, θ¹ + n₀θ⁰ + β) on T², i.e. the unipotent
/// automorphism [[1,0],[n₀,1]] followed by the translation (ρ, β).
struct ParabolicAffineMap {
  int n0 = 0;
  double rho = 0.0;
  double beta = 0.0;

  Point apply(const Point& theta) const;
  Point apply_inverse(const Point& theta) const;
  // B^j for any integer j:
  // (θ⁰ + jρ, θ¹ + j n₀ θ⁰ + jβ + n₀ρ·j(j−1)/2).
  Point apply_power(const Point& theta, long long j) const;
};

/// ψ∘B^j. With a max_radius, a result support beyond it raises
/// TruncationError carrying the l1 mass that would be dropped.
FourierSeries pullback_power(const ParabolicAffineMap& B, const FourierSeries& psi, long long j,
                             std::optional<int> max_radius = std::nullopt);

/// ψ∘B: coefficient at (k,ℓ) is ψ̂(k − n₀ℓ, ℓ)·e^{2πi((k − n₀ℓ)ρ + ℓβ)}.
FourierSeries pullback_fourier(const ParabolicAffineMap& B, const FourierSeries& psi,
                               std::optional<int> max_radius = std::nullopt);

struct InvariantDistributionIndex {
  int m = 1;
  long long K = 1;
};

class IncompleteSumError : public TruncationError {
 public:
  IncompleteSumError(long long required_K, double tail);
  long long required_K() const noexcept { return required_; }

 private:
  long long required_;
};

struct Pairing {
  Complex value;
  // (K+1)·|n₀m| exceeds the support radius of ψ: nothing past K can be
  // on the line, for any ψ with this support box.
  bool exact_tail = false;
  long long required_K = 0;  // largest |k| with ψ̂(k n₀ m, m) ≠ 0
};

// Largest |k| with ψ̂(k n₀ m, m) ≠ 0 (0 if the line misses the support).
long long required_truncation(int m, const ParabolicAffineMap& B, const FourierSeries& psi);

/// ⟨T_m, ψ⟩ = Σ_{|k|≤K} ψ̂(k n₀ m, m)·e^{−2πikm(β + (k−1)n₀ρ/2)}, summed in
/// ascending k. Throws IncompleteSumError if K misses part of the line.
Pairing distribution_pair(const InvariantDistributionIndex& idx, const ParabolicAffineMap& B,
                          const FourierSeries& psi);

/// |⟨T_m, ψ∘B⟩ − ⟨T_m, ψ⟩|; K is enlarged as needed for both pairings.
double verify_invariance(const InvariantDistributionIndex& idx, const ParabolicAffineMap& B,
                         const FourierSeries& psi);

struct IndependenceResult {
  Eigen::MatrixXcd matrix;  // rows: T_m, columns: test functions
  std::vector<double> singular_values;
  int rank = 0;
};

IndependenceResult independence_matrix(const std::vector<int>& ms, const ParabolicAffineMap& B,
                                       const std::vector<FourierSeries>& test_functions,
                                       double rank_threshold = 1e-8);

// ---------------------------------------------------------------------------
// Suspension M = T² × [0, r) with (θ, r) ~ (Bθ, 0) and the vertical unit flow.

struct SuspensionSpec {
  ParabolicAffineMap base;
  double return_time = 1.0;
  int quadrature_points = 32;
};

struct SuspensionPoint {
  Point theta{0.0, 0.0};
  double s = 0.0;
};

void validate(const SuspensionSpec& spec);

// Φ^t: move up by t; every crossing of height r applies B to θ.
SuspensionPoint flow(const SuspensionSpec& spec, const SuspensionPoint& x, double t);

// Product metric on T² × [0, r), minimised over the gluing representatives
// (B^{−j}θ, s + j r) for j ∈ {−1, 0, 1}.
double suspension_distance(const SuspensionSpec& spec, const SuspensionPoint& x, const SuspensionPoint& y);

enum class FiberIdentification { Identity, None };

// Slice of a function on M at chart height s ∈ [0, r), as a series on T².
using SuspensionFunction = std::function<FourierSeries(double s)>;

struct SuspensionPairing {
  Complex value;
  double quadrature_error = 0.0;  // |I_{2Q} − I_Q|
  int nodes = 0;                  // nodes of the reported value
  bool converged = false;
};

/// ⟨T̃_m, ψ⟩ = ∫₀^r ⟨T_m, ψ∘Φ^t restricted to the fiber at base_height⟩ dt.
/// ψ∘Φ^t on the fiber at height b is ψ_{s'}∘B^j with b + t = j r + s'.
/// The integrand is r-periodic, so the periodic trapezoid rule is used;
/// nodes double from spec.quadrature_points until the difference is below
/// tol or max_nodes is reached.
SuspensionPairing suspension_pair(const SuspensionSpec& spec, int m, FiberIdentification ident,
                                  const SuspensionFunction& psi, double base_height = 0.0, double tol = 1e-10,
                                  int max_nodes = 4096);

struct SeparationProfile {
  std::vector<std::pair<double, double>> profile;  // (t, distance)
  double max_distance = 0.0;
};

/// distance(Φ^t x, Φ^t y) for t = 0, dt, 2dt, … ≤ T. No time
/// reparametrisation is applied.
SeparationProfile separation_profile(const SuspensionSpec& spec, const SuspensionPoint& x, const SuspensionPoint& y,
                                     double T, double dt);

}  // namespace torcoh::parabolic
