#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "torcoh/cohomology.hpp"
#include "torcoh/diophantine.hpp"
#include "torcoh/fourier_json.hpp"
#include "torcoh/parabolic.hpp"
#include "torcoh/skewproduct.hpp"

namespace torcoh::cli {

using nlohmann::json;
using fourier::FourierSeries;

namespace {

// χ = β + ζ₀(x + ρ) − ζ₀(x), so that ζ₀ linearizes the skew product.
skewproduct::SkewProductMap skew_from_zeta(const FourierSeries& zeta0, double rho, int n0, double beta) {
  const double shift[1] = {rho};
  FourierSeries chi = fourier::translate(zeta0, shift) - zeta0 + FourierSeries::constant(1, beta);
  return {rho, n0, chi.pruned(1e-300)};
}

class Report {
 public:
  explicit Report(double tol) : tol_(tol) {}

  void heading(const std::string& s) { md_ << "\n## " << s << "\n\n"; }
  void line(const std::string& s) { md_ << s << "\n"; }
  void residual(const std::string& name, double v) {
    const bool ok = v <= tol_;
    all_ok_ = all_ok_ && ok;
    md_ << "- " << name << ": " << format_double(v) << (ok ? "" : "  (exceeds tolerance)") << "\n";
    residuals_[name] = v;
  }

  bool ok() const { return all_ok_; }
  std::string text() const { return md_.str(); }
  const json& residuals() const { return residuals_; }

 private:
  double tol_;
  bool all_ok_ = true;
  std::ostringstream md_;
  json residuals_ = json::object();
};

Outcome abort_at(Report& rep, const std::string& stage, const std::string& why, json result) {
  rep.line("");
  rep.line("**Stopped at stage '" + stage + "': " + why + "**");
  Outcome o;
  o.exit_code = kExitObstructed;
  result["status"] = "obstructed";
  result["stage"] = stage;
  result["reason"] = why;
  result["residuals"] = rep.residuals();
  o.result = std::move(result);
  o.report = rep.text();
  return o;
}

}  // namespace

Outcome pipeline_demo(const PipelineOptions& opts, const RunConfig& cfg) {
  const double tol = cfg.tolerance("pipeline", 1e-8);
  SplitMix64 rng(cfg.seed);
  Report rep(tol);
  json result{{"seed", cfg.seed}, {"n0", opts.n0}, {"rho", opts.rho}, {"tolerance", tol}};

  rep.line("# Reduction chain report");
  rep.line("");
  rep.line("seed " + std::to_string(cfg.seed) + ", n0 = " + std::to_string(opts.n0) + ", rho = " +
           format_double(opts.rho) + ", tolerance " + format_double(tol));

  // Stage 1: the base rotation must be Diophantine for the ζ-equation.
  rep.heading("1. Base rotation");
  const auto cert = diophantine::ratio_condition(1.0, opts.rho, 0.1, 1.0, 10000);
  const auto cos1 = FourierSeries::cosine({1});
  const std::vector<std::size_t> grid{64};
  const double s_small = cohomology::birkhoff_sup_norm(cos1, FrequencyVector{opts.rho}, 100, grid);
  const double s_large = cohomology::birkhoff_sup_norm(cos1, FrequencyVector{opts.rho}, 10000, grid);
  rep.line("- condition |n||n rho - m| >= 0.1 for n <= 10^4: " + std::string(diophantine::to_string(cert.verdict)) +
           " (worst " + format_double(cert.worst_margin) + " at n = " + std::to_string(cert.worst_point.at(1)) + ")");
  rep.line("- sup |S_n cos| at n = 100: " + format_double(s_small) + ", at n = 10^4: " + format_double(s_large));
  result["certificate"] = {{"verdict", diophantine::to_string(cert.verdict)},
                           {"worst_margin", cert.worst_margin},
                           {"worst_point", cert.worst_point}};
  result["birkhoff"] = {{"n100", s_small}, {"n10000", s_large}};
  if (!cert.holds())
    return abort_at(rep, "base rotation",
                    "rho fails the Diophantine check (Birkhoff growth ratio " + format_double(s_large / s_small) + ")",
                    std::move(result));

  // Stage 2: ζ-linearization of a skew product built from a seeded ζ₀.
  rep.heading("2. Fiber linearization");
  const FourierSeries zeta0 = fourier::random_real_series(1, opts.zeta_radius, rng, 0.2, 0.5, true);
  const double beta = rng.uniform();
  const auto P = skew_from_zeta(zeta0, opts.rho, opts.n0, beta);
  const auto lin = skewproduct::linearize(P);
  if (!lin.complete()) return abort_at(rep, "fiber linearization", "resonant chi", std::move(result));
  rep.line("- beta = " + format_double(lin.beta));
  rep.residual("conjugacy residual on 256^2 grid", lin.residual);
  rep.residual("zeta recovery error", fourier::max_coeff_diff(lin.zeta, zeta0));
  rep.residual("beta recovery error", std::abs(lin.beta - beta));
  result["zeta"] = fourier::to_json(lin.zeta);
  result["beta"] = lin.beta;

  // Stage 3: the affine form B, checked in the forward direction f∘B = P∘f.
  rep.heading("3. Affine form");
  const parabolic::ParabolicAffineMap B = lin.affine(opts.n0, opts.rho);
  rep.line("- B(x, y) = (x + " + format_double(B.rho) + ", y + " + std::to_string(B.n0) + "*x + " +
           format_double(B.beta) + ")");
  double fwd = 0.0;
  for (int i = 0; i < 256; ++i) {
    const Point th{rng.uniform(), rng.uniform()};
    auto f = [&](const Point& p) {
      const double x[1] = {p[0]};
      return Point{p[0], frac(p[1] + fourier::evaluate(lin.zeta, x))};
    };
    fwd = std::max(fwd, torus_distance(f(B.apply(th)), P.apply(f(th))));
  }
  rep.residual("max |f(B p) - P(f p)| at 256 random points", fwd);

  if (opts.n0 == 0) {
    rep.heading("4. Invariant distributions");
    rep.line("- torus case, no nontrivial T_m line");
    result["note"] = "torus case, no nontrivial T_m line";
  } else {
    // Stage 4: T_m invariance under B.
    rep.heading("4. Invariant distributions");
    double worst = 0.0;
    for (const int m : {1, -1, 2, -2, 3, -3}) {
      const auto psi = fourier::random_real_series(2, opts.psi_radius, rng);
      const long long K = std::max(1LL, parabolic::required_truncation(m, B, psi));
      worst = std::max(worst, parabolic::verify_invariance({m, K}, B, psi));
    }
    rep.residual("max |<T_m, psi o B> - <T_m, psi>| over m = +-1, +-2, +-3", worst);

    // Stage 5: pairing on the suspension. With ψ_s = ψ₀ + cos(2πs/r)ψ₁ the
    // pairing is r⟨T_m, ψ₀⟩, and it must not move under the flow.
    rep.heading("5. Suspension pairing");
    parabolic::SuspensionSpec spec;
    spec.base = B;
    const double r = spec.return_time;
    const auto psi0 = fourier::random_real_series(2, 4, rng);
    const auto psi1 = fourier::random_real_series(2, 4, rng);
    const parabolic::SuspensionFunction psi = [&](double s) { return psi0 + std::cos(kTwoPi * s / r) * psi1; };
    const double tau = 0.37 * r;
    const parabolic::SuspensionFunction psi_flowed = [&](double s) {
      const double h = s + tau;
      return h < r ? psi(h) : parabolic::pullback_power(B, psi(h - r), 1);
    };
    double worst_exact = 0.0, worst_flow = 0.0;
    bool converged = true;
    for (const int m : {1, 2, 3}) {
      const auto K = std::max(1LL, parabolic::required_truncation(m, B, psi0));
      const auto expect = r * parabolic::distribution_pair({m, K}, B, psi0).value;
      const auto a = parabolic::suspension_pair(spec, m, parabolic::FiberIdentification::Identity, psi);
      const auto b = parabolic::suspension_pair(spec, m, parabolic::FiberIdentification::Identity, psi_flowed);
      converged = converged && a.converged && b.converged;
      worst_exact = std::max(worst_exact, std::abs(a.value - expect));
      worst_flow = std::max(worst_flow, std::abs(b.value - a.value));
    }
    rep.residual("max |<T~_m, psi> - r<T_m, psi_0>|, m = 1, 2, 3", worst_exact);
    rep.residual("max |<T~_m, psi o Phi^0.37> - <T~_m, psi>|", worst_flow);
    rep.line(std::string("- quadrature converged: ") + (converged ? "yes" : "no"));
    if (!converged) return abort_at(rep, "suspension pairing", "quadrature did not converge", std::move(result));
  }

  rep.line("");
  rep.line(rep.ok() ? "All residuals within tolerance." : "Some residuals exceed the tolerance.");
  Outcome o;
  result["status"] = rep.ok() ? "ok" : "residual_exceeded";
  result["residuals"] = rep.residuals();
  o.result = std::move(result);
  o.report = rep.text();
  o.exit_code = rep.ok() ? kExitOk : kExitError;
  return o;
}

Outcome pipeline_demo_linearize(const RunConfig& cfg) {
  const double tol = cfg.tolerance("linearize", 1e-9);
  SplitMix64 rng(cfg.seed);
  const int n0 = static_cast<int>(rng.integer(1, 3));
  const double rho = kGoldenRatio - 1.0;
  const FourierSeries zeta0 = fourier::random_real_series(1, 6, rng, 0.2, 0.5, true);
  const double beta = rng.uniform();
  const auto P = skew_from_zeta(zeta0, rho, n0, beta);
  const auto lin = skewproduct::linearize(P);

  Outcome o;
  o.result = {{"seed", cfg.seed},
              {"n0", n0},
              {"rho", rho},
              {"chi", fourier::to_json(P.chi)},
              {"zeta", fourier::to_json(lin.zeta)},
              {"beta", lin.beta},
              {"status", cohomology::to_string(lin.status)},
              {"tolerance", tol}};
  if (!lin.complete()) {
    o.exit_code = kExitObstructed;
    o.result["residual"] = nullptr;
    return o;
  }
  const double zeta_err = fourier::max_coeff_diff(lin.zeta, zeta0);
  o.result["residual"] = lin.residual;
  o.result["zeta_error"] = zeta_err;
  o.result["pass"] = lin.residual <= tol && zeta_err <= tol;
  if (!(lin.residual <= tol && zeta_err <= tol)) o.exit_code = kExitError;
  return o;
}

}  // namespace torcoh::cli
