#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "torcoh/frequency_vector.hpp"

namespace torcoh::diophantine {

using IntVec = std::vector<long long>;

enum class Verdict { Holds, Fails, Resonant };

const char* to_string(Verdict v);

/// Outcome of a finite-radius Diophantine scan.
///
/// The margin of a lattice point p is |p·α|·(max_i |p_i|)^τ. The scan visits
/// one representative of each ±p pair (first nonzero coordinate positive).
/// worst_margin/worst_point are the global minimum over the box; the tail
/// fields restrict to |p|∞ > tail_from = floor(√N), which is the finite-radius
/// estimate of the liminf.
struct DiophantineCertificate {
  double C = 0.0;
  double tau = 0.0;
  long long radius = 0;
  IntVec worst_point;
  double worst_margin = 0.0;
  long long tail_from = 0;
  IntVec tail_point;
  double tail_margin = 0.0;
  Verdict verdict = Verdict::Fails;
  std::optional<IntVec> resonance_witness;

  bool holds() const noexcept { return verdict == Verdict::Holds; }
};

struct ScanOptions {
  // |p·α| below this is an exact resonance rather than a small divisor.
  double zero_threshold = 1e-14;
};

// Thrown where a resonance makes the requested quantity meaningless.
class ResonanceError : public std::runtime_error {
 public:
  explicit ResonanceError(IntVec witness);
  const IntVec& witness() const noexcept { return witness_; }

 private:
  IntVec witness_;
};

DiophantineCertificate check_diophantine(const FrequencyVector& alpha, double C, double tau, long long N,
                                         const ScanOptions& opts = {});

/// Checks |m + n·(α1/α0)|·|n|^τ over 0 < n ≤ N with m the nearest integer to
/// −n·α1/α0. worst_margin is the largest admissible C′; worst_point is (m, n).
DiophantineCertificate ratio_condition(double alpha0, double alpha1, double C, double tau, long long N,
                                       const ScanOptions& opts = {});

struct ContinuedFraction {
  std::vector<long long> partial_quotients;
  std::vector<std::pair<long long, long long>> convergents;  // (p_k, q_k)
  // Expansion stopped because the remainder vanished or the next partial
  // quotient exceeded the overflow bound.
  bool effectively_rational = false;
};

ContinuedFraction continued_fraction(double x, int n_terms, double overflow_bound = 1e12);

struct ExponentEstimate {
  double tau_hat = 0.0;
  double C_hat = 0.0;
  std::vector<std::pair<long long, double>> samples;  // (radius, min |p·α|)
  double max_local_slope = 0.0;
  bool flagged_non_diophantine = false;
};

struct ExponentOptions {
  ScanOptions scan;
  // Largest per-octave decay exponent still considered Diophantine-like.
  double local_slope_limit = 4.0;
};

/// Fits log min_{0<|p|∞≤R} |p·α| = log C − τ log R over dyadic radii R ≤ N.
/// Throws ResonanceError if any scanned p is resonant.
ExponentEstimate estimate_exponent(const FrequencyVector& alpha, long long N, const ExponentOptions& opts = {});

}  // namespace torcoh::diophantine
