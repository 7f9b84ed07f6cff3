#pragma once

#include <vector>

#include "torcoh/cohomology.hpp"
#include "torcoh/parabolic.hpp"

namespace torcoh::skewproduct {

using fourier::FourierSeries;
using fourier::GridFunction;

/// P(θ⁰, θ¹) = (θ⁰ + ρ, θ¹ + n₀θ⁰ + χ(θ⁰)).
struct SkewProductMap {
  double rho = 0.0;
  int n0 = 0;
  FourierSeries chi{1};

  Point apply(const Point& theta) const;
  void validate() const;
};

struct Linearization {
  FourierSeries zeta{1};  // ζ(x+ρ) − ζ(x) = χ(x) − β, zero mean
  double beta = 0.0;
  // max over a 256² grid of the torus distance between f⁻¹∘P∘f and the
  // affine map (n₀, ρ, β), with f(θ⁰, θ¹) = (θ⁰, θ¹ + ζ(θ⁰))
  double residual = 0.0;
  cohomology::Status status = cohomology::Status::Complete;
  std::vector<fourier::Index> resonant_set;

  bool complete() const noexcept { return status == cohomology::Status::Complete; }
  parabolic::ParabolicAffineMap affine(int n0, double rho) const { return {n0, rho, beta}; }
};

Linearization linearize(const SkewProductMap& P, double divisor_floor = 1e-10);

// Residual of a given fiber conjugacy ζ against the affine map (n₀, ρ, β).
double linearization_residual(const SkewProductMap& P, const FourierSeries& zeta, double beta,
                              std::size_t grid = 256);

class InvalidLiftError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Degree-one circle map with lift x ↦ x + p(x), p a real series on T¹.
class CircleMap {
 public:
  static constexpr std::size_t kMonotoneGrid = 4096;

  // Throws InvalidLiftError unless the lift is strictly increasing on the
  // 4096-point grid (wrap included).
  explicit CircleMap(FourierSeries perturbation);

  static CircleMap rotation(double rho) { return CircleMap(FourierSeries::constant(1, rho)); }

  const FourierSeries& perturbation() const noexcept { return p_; }
  double lift(double x) const;
  // Inverse lift by bisection, to 1e−15.
  double inverse_lift(double y) const;

 private:
  FourierSeries p_;
  std::vector<double> samples_;  // lift on the grid j/4096
};

struct RotationNumber {
  double rho_hat = 0.0;
  double error_bound = 0.0;  // 1/n
};

/// (liftⁿ(0) − 0)/n, with integer and fractional parts tracked separately.
RotationNumber rotation_number(const CircleMap& g, long long n);

/// max over the grid of |X_i + Σ_j X_j ∂_j u_i − α_i| where X is given by its
/// d component samples and the conjugacy is θ ↦ θ + u(θ).
double verify_constant_conjugacy(const std::vector<GridFunction>& X, const std::vector<FourierSeries>& u,
                                 const FrequencyVector& alpha);

}  // namespace torcoh::skewproduct
