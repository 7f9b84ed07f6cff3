#pragma once

#include <vector>

#include "torcoh/fourier.hpp"
#include "torcoh/frequency_vector.hpp"

namespace torcoh::cohomology {

using fourier::Complex;
using fourier::FourierSeries;
using fourier::Index;

enum class Case { Map, Flow };
enum class Status { Complete, Obstructed };

const char* to_string(Status s);
const char* to_string(Case c);

struct DivisorRecord {
  Index k;
  double divisor;  // |e^{2πik·α} − 1| (map) or |2π k·α| (flow)
};

/// Solution (u, c) of u∘R_α − u = ξ − c (map) or L_α u = ξ − c (flow).
/// u has zero mean. resonant_set lists the frequencies whose divisor fell
/// below the floor while ξ̂_k was non-negligible; those coefficients are left
/// out of u and the status is Obstructed.
struct CohomologySolution {
  FourierSeries u;
  double c = 0.0;
  std::vector<DivisorRecord> divisor_report;
  std::vector<Index> resonant_set;
  Status status = Status::Complete;

  bool complete() const noexcept { return status == Status::Complete; }
};

struct SolveOptions {
  double divisor_floor = 1e-10;
  // |ξ̂_k| at or below this counts as zero on a resonant frequency.
  double coefficient_floor = 1e-15;
};

// e^{2πi k·α} − 1, accurate for k·α close to an integer.
Complex map_divisor(const Index& k, const FrequencyVector& alpha);
// 2πi k·α
Complex flow_divisor(const Index& k, const FrequencyVector& alpha);

CohomologySolution solve_map(const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts = {});
CohomologySolution solve_flow(const FourierSeries& xi, const FrequencyVector& alpha, const SolveOptions& opts = {});
CohomologySolution solve(Case which, const FourierSeries& xi, const FrequencyVector& alpha,
                         const SolveOptions& opts = {});

/// Max over the grid of |u(θ+α) − u(θ) − ξ(θ) + c| (map) or
/// |L_α u(θ) − ξ(θ) + c| (flow, derivative taken on coefficients).
double verify_solution(const FourierSeries& xi, const FrequencyVector& alpha, const CohomologySolution& sol,
                       const std::vector<std::size_t>& sizes, Case which);

/// Fourier series of S_nξ = Σ_{i<n} ξ∘R_α^i, via the geometric factor
/// (1 − e^{2πink·α})/(1 − e^{2πik·α}); resonant k get the factor n.
FourierSeries birkhoff_sum(const FourierSeries& xi, const FrequencyVector& alpha, long long n,
                           double divisor_floor = 1e-10);

double birkhoff_sup_norm(const FourierSeries& xi, const FrequencyVector& alpha, long long n,
                         const std::vector<std::size_t>& sizes, double divisor_floor = 1e-10);

struct BirkhoffReport {
  std::vector<std::pair<long long, double>> samples;  // (n, sup |S_nξ| on grid)
  // Last sample grew by less than 5% over the largest earlier sample.
  bool bounded = false;
  // Some resonant frequency carries mass: S_nξ grows linearly there.
  bool linear_growth_warning = false;
  std::vector<Index> resonant;
};

// Samples at n = 1, 2, 4, ... ≤ n_max, plus n_max itself.
BirkhoffReport birkhoff_sup_norms(const FourierSeries& xi, const FrequencyVector& alpha, long long n_max,
                                  const std::vector<std::size_t>& sizes, const SolveOptions& opts = {});

struct OrbitSumResult {
  FourierSeries orbit_sum;  // θ ↦ Σ_{i<q} ξ(θ + ip/q)
  bool obstruction_vanishes = false;
};

// Rational rotation p/q on T¹; requires q ≥ 1 and gcd(p, q) = 1.
OrbitSumResult periodic_obstruction(const FourierSeries& xi, long long p, long long q);

// ∫ ξ d(Haar) = ξ̂_0.
double invariant_measure_average(const FourierSeries& xi);

struct InvariantDensity {
  FourierSeries log_density;  // log ρ₀ + u, with L_α of it ≡ 0
  double c = 0.0;
  double flow_residual = 0.0;  // max on grid of |L_α log_density|
  Status status = Status::Complete;
  std::vector<Index> resonant_set;
};

InvariantDensity invariant_density(const FrequencyVector& alpha, const FourierSeries& log_rho0,
                                   const SolveOptions& opts = {});

// max_k |ĉ_k|·max(1, |k|∞)^order
double weighted_coefficient_norm(const FourierSeries& s, double order);

}  // namespace torcoh::cohomology
