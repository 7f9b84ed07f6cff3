#include "torcoh/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace torcoh::diophantine {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Resonant: return "resonant";
  }
  return "unknown";
}

namespace {

std::string format_witness(const IntVec& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

bool canonical(const IntVec& p) {
  for (long long x : p)
    if (x != 0) return x > 0;
  return false;
}

// Keeps the (margin, point) minimum with lexicographic tie-break.
struct Best {
  double margin = std::numeric_limits<double>::infinity();
  IntVec point;

  void offer(double m, const IntVec& p) {
    if (m < margin || (m == margin && (point.empty() || p < point))) {
      margin = m;
      point = p;
    }
  }
};

struct ScanResult {
  Best worst;
  Best tail;
  std::optional<IntVec> resonance;
};

// Exhaustive minimum of |p·α|·|p|∞^τ over canonical p with |p|∞ ≤ N.
//
// The coordinate with the largest |α_j| is the pivot. For each assignment of
// the remaining coordinates (the "rest"), the margin is bounded below by
// |α_j|·|p_j − r|·max(|rest|∞, 1)^τ with r = −(rest·α)/α_j, so only p_j in a
// window around r can beat or tie the current minima or be resonant. All
// other p_j are provably irrelevant, so the result equals the full scan.
ScanResult scan_box(std::span<const double> alpha, double tau, long long N, long long tail_from, double zero_thr) {
  const std::size_t d = alpha.size();
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (std::abs(alpha[i]) > std::abs(alpha[pivot])) pivot = i;
  const double ap = alpha[pivot];
  const double abs_ap = std::abs(ap);

  ScanResult out;
  IntVec rest(d - 1, -N);
  IntVec p(d, 0);
  const double inf = std::numeric_limits<double>::infinity();

  while (true) {
    double s = 0.0;
    long long rest_max = 0;
    for (std::size_t i = 0, r = 0; i < d; ++i) {
      if (i == pivot) continue;
      p[i] = rest[r++];
      s += static_cast<double>(p[i]) * alpha[i];
      rest_max = std::max(rest_max, p[i] < 0 ? -p[i] : p[i]);
    }

    long long lo = -N, hi = N;
    if (abs_ap > 0.0) {
      const double scale = abs_ap * std::pow(static_cast<double>(std::max<long long>(rest_max, 1)), tau);
      const double bound = tail_from < N ? out.tail.margin : out.worst.margin;
      double h = std::max(bound / scale, zero_thr / abs_ap);
      if (h != inf) {
        h = h * (1.0 + 1e-12) + 1e-9;
        const double r = -s / ap;
        lo = std::max<long long>(-N, static_cast<long long>(std::ceil(std::max(r - h, -2.0 * N))));
        hi = std::min<long long>(N, static_cast<long long>(std::floor(std::min(r + h, 2.0 * N))));
      }
    }

    for (long long pj = lo; pj <= hi; ++pj) {
      p[pivot] = pj;
      if (!canonical(p)) continue;
      const double dot = s + static_cast<double>(pj) * ap;
      const double absdot = std::abs(dot);
      const long long norm = std::max(rest_max, pj < 0 ? -pj : pj);
      const double margin = absdot * std::pow(static_cast<double>(norm), tau);
      if (absdot < zero_thr && (!out.resonance || p < *out.resonance)) out.resonance = p;
      out.worst.offer(margin, p);
      if (norm > tail_from) out.tail.offer(margin, p);
    }

    // advance odometer over the rest coordinates
    std::size_t k = 0;
    while (k < rest.size() && rest[k] == N) rest[k++] = -N;
    if (k == rest.size()) break;
    ++rest[k];
  }
  return out;
}

long long tail_start(long long N) { return static_cast<long long>(std::floor(std::sqrt(static_cast<double>(N)))); }

void check_common(double C, double tau, long long N) {
  if (!(C > 0.0) || !(tau > 0.0)) throw DomainError("C and tau must be positive");
  if (N < 1) throw DomainError("scan radius N must be >= 1");
}

Verdict verdict_for(const ScanResult& r, double C) {
  if (r.resonance) return Verdict::Resonant;
  return r.worst.margin > C ? Verdict::Holds : Verdict::Fails;
}

}  // namespace

ResonanceError::ResonanceError(IntVec witness)
    : std::runtime_error("rational resonance with witness " + format_witness(witness)), witness_(std::move(witness)) {}

DiophantineCertificate check_diophantine(const FrequencyVector& alpha, double C, double tau, long long N,
                                         const ScanOptions& opts) {
  check_common(C, tau, N);
  DiophantineCertificate cert;
  cert.C = C;
  cert.tau = tau;
  cert.radius = N;
  cert.tail_from = tail_start(N);
  const ScanResult r = scan_box(alpha.components(), tau, N, cert.tail_from, opts.zero_threshold);
  cert.worst_point = r.worst.point;
  cert.worst_margin = r.worst.margin;
  cert.tail_point = r.tail.point;
  cert.tail_margin = r.tail.margin;
  cert.resonance_witness = r.resonance;
  cert.verdict = verdict_for(r, C);
  return cert;
}

DiophantineCertificate ratio_condition(double alpha0, double alpha1, double C, double tau, long long N,
                                       const ScanOptions& opts) {
  if (alpha0 == 0.0) throw DomainError("ratio_condition: alpha0 must be nonzero");
  check_common(C, tau, N);
  const double rho = alpha1 / alpha0;
  DiophantineCertificate cert;
  cert.C = C;
  cert.tau = tau;
  cert.radius = N;
  cert.tail_from = tail_start(N);
  Best worst, tail;
  std::optional<IntVec> resonance;
  for (long long n = 1; n <= N; ++n) {
    const double nr = static_cast<double>(n) * rho;
    const double m = std::nearbyint(-nr);
    const double dist = std::abs(m + nr);
    const double margin = dist * std::pow(static_cast<double>(n), tau);
    const IntVec p{static_cast<long long>(m), n};
    if (dist < opts.zero_threshold && !resonance) resonance = p;
    worst.offer(margin, p);
    if (n > cert.tail_from) tail.offer(margin, p);
  }
  cert.worst_point = worst.point;
  cert.worst_margin = worst.margin;
  cert.tail_point = tail.point;
  cert.tail_margin = tail.margin;
  cert.resonance_witness = resonance;
  if (resonance)
    cert.verdict = Verdict::Resonant;
  else
    cert.verdict = worst.margin > C ? Verdict::Holds : Verdict::Fails;
  return cert;
}

ContinuedFraction continued_fraction(double x, int n_terms, double overflow_bound) {
  if (!std::isfinite(x)) throw DomainError("continued_fraction: x must be finite");
  if (n_terms < 1) throw DomainError("continued_fraction: n_terms must be >= 1");
  if (!(overflow_bound > 1.0)) throw DomainError("continued_fraction: overflow bound must exceed 1");
  if (std::abs(x) > 0x1.0p62) throw DomainError("continued_fraction: |x| too large for 64-bit quotients");

  // A remainder within 1/overflow_bound of the next integer would give a
  // partial quotient beyond the bound after that integer; round it up so
  // that 3/7 reads [0; 2, 3] and not [0; 2, 2, huge].
  const double eps = 1.0 / overflow_bound;
  auto split = [eps](double y, double& rem) {
    double a = std::floor(y);
    rem = y - a;
    if (1.0 - rem < eps) {
      a += 1.0;
      rem = 0.0;
    }
    return a;
  };

  ContinuedFraction cf;
  double rem = 0.0;
  cf.partial_quotients.push_back(static_cast<long long>(split(x, rem)));
  while (static_cast<int>(cf.partial_quotients.size()) < n_terms) {
    if (rem < eps) {
      cf.effectively_rational = true;
      break;
    }
    const double a = split(1.0 / rem, rem);
    cf.partial_quotients.push_back(static_cast<long long>(a));
  }

  // p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}
  long long p_prev2 = 0, p_prev1 = 1, q_prev2 = 1, q_prev1 = 0;
  std::size_t kept = 0;
  for (long long a : cf.partial_quotients) {
    long long pa, qa, p, q;
    if (__builtin_mul_overflow(a, p_prev1, &pa) || __builtin_add_overflow(pa, p_prev2, &p) ||
        __builtin_mul_overflow(a, q_prev1, &qa) || __builtin_add_overflow(qa, q_prev2, &q)) {
      cf.effectively_rational = true;
      break;
    }
    cf.convergents.emplace_back(p, q);
    p_prev2 = p_prev1;
    p_prev1 = p;
    q_prev2 = q_prev1;
    q_prev1 = q;
    ++kept;
  }
  cf.partial_quotients.resize(kept);
  return cf;
}

ExponentEstimate estimate_exponent(const FrequencyVector& alpha, long long N, const ExponentOptions& opts) {
  if (N < 10) throw DomainError("estimate_exponent: N must be >= 10");
  ExponentEstimate est;
  for (long long R = 2; R <= N; R *= 2) {
    const ScanResult r = scan_box(alpha.components(), 0.0, R, R, opts.scan.zero_threshold);
    if (r.resonance) throw ResonanceError(*r.resonance);
    est.samples.emplace_back(R, r.worst.margin);
  }

  const auto n = static_cast<double>(est.samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [R, m] : est.samples) {
    const double x = std::log(static_cast<double>(R)), y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  est.tau_hat = -slope;
  est.C_hat = std::exp(intercept);

  for (std::size_t i = 1; i < est.samples.size(); ++i) {
    const double local = std::log(est.samples[i - 1].second / est.samples[i].second) /
                         std::log(static_cast<double>(est.samples[i].first) / est.samples[i - 1].first);
    est.max_local_slope = std::max(est.max_local_slope, local);
  }
  est.flagged_non_diophantine = est.max_local_slope > opts.local_slope_limit;
  return est;
}

}  // namespace torcoh::diophantine
