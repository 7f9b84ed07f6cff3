#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "torcoh/cohomology.hpp"

namespace torcoh::lincocycle {

using fourier::FourierSeries;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// 2×2 real matrix cocycle over the circle rotation x ↦ x + ρ, generated by
/// x ↦ G(x) with entries given as Fourier series on T¹ (row major).
class LinearCocycle {
 public:
  LinearCocycle(double base_rho, std::array<FourierSeries, 4> entries, bool det_constraint);

  static LinearCocycle constant(double base_rho, const Mat2& g, bool det_constraint = true);

  double base_rho() const noexcept { return rho_; }
  const std::array<FourierSeries, 4>& entries() const noexcept { return entries_; }
  bool det_constraint() const noexcept { return det_; }

  Mat2 generator(double x) const;
  // max over a 1024-point grid of |det G(x) − 1|
  double det_defect() const;

 private:
  double rho_;
  std::array<FourierSeries, 4> entries_;
  bool det_;
};

/// Upper-triangular unipotent generator [[1, a(x)], [0, 1]].
struct TriangularCocycle {
  FourierSeries a{1};
  double base_rho = 0.0;

  LinearCocycle as_linear() const;
};

/// A(x, n) = G(x + (n−1)ρ)···G(x) for n ≥ 0 and
/// G(x − |n|ρ)^{-1}···G(x − ρ)^{-1} for n < 0.
Mat2 iterate(const LinearCocycle& c, double x, long long n);

double top_singular_value(const Mat2& m);

/// (1/n) log σ_max(A(x0, n)); the running product is renormalised every 32
/// steps and the scale kept in log form.
double lyapunov_exponent(const LinearCocycle& c, double x0, long long n);

struct ProbeResult {
  std::vector<double> angles;          // all probed angles in [0, π)
  std::vector<double> max_norms;       // max_{|t|≤n} |A(x0,t) v|
  std::vector<double> survivor_angles;  // those with max_norm ≤ bound
};

/// Unit vectors at `directions` equally spaced angles in [0, π); a direction
/// survives when its two-sided orbit stays within `bound` for |t| ≤ n.
ProbeResult quasi_anosov_probe(const LinearCocycle& c, double x0, int directions, long long n, double bound);

struct NormalForm {
  FourierSeries b{1};  // b(x+ρ) − b(x) = −(a(x) − ā)
  double a_bar = 0.0;
  // max over a 1024 grid of the entrywise gap between
  // P(x+ρ)^{-1} G(x) P(x) and [[1, ā], [0, 1]], with P = [[1, −b], [0, 1]]
  double residual = 0.0;
  cohomology::Status status = cohomology::Status::Complete;
  std::vector<fourier::Index> resonant_set;

  // Ẑ(x) = Ẑ₀ − b(x)Ŷ in the (Ŷ, Ẑ₀) frame.
  Vec2 z_hat(double x) const;
  // Conjugated generator P(x+ρ)^{-1} G(x) P(x) for the given cocycle.
  LinearCocycle conjugated(const TriangularCocycle& t) const;
};

NormalForm reduce_to_normal_form(const TriangularCocycle& t, const cohomology::SolveOptions& opts = {});

struct GrowthFit {
  double slope = 0.0;
  double a_bar = 0.0;
  std::vector<double> norms;  // |A(x0, n) Ẑ(x0)| for n = 1..n_max
};

/// Least-squares slope of |A(x0, n) Ẑ(x0)| against n over the second half
/// of 1..n_max. Throws DomainError if the normal-form reduction is obstructed.
GrowthFit parabolic_growth(const TriangularCocycle& t, double x0, long long n_max,
                           const cohomology::SolveOptions& opts = {});

// Angle between A(x0, n) Ẑ(x0) and the invariant direction Ŷ.
double angle_to_invariant_direction(const TriangularCocycle& t, const NormalForm& nf, double x0, long long n);

}  // namespace torcoh::lincocycle
