#include <memory>
#include <sstream>

#include "commands.hpp"
#include "torcoh/cocycle.hpp"
#include "torcoh/cohomology.hpp"
#include "torcoh/diophantine.hpp"
#include "torcoh/fourier_json.hpp"
#include "torcoh/lincocycle.hpp"
#include "torcoh/parabolic.hpp"
#include "torcoh/skewproduct.hpp"

namespace torcoh::cli {

using nlohmann::json;
using fourier::FourierSeries;

namespace {

template <class T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

FourierSeries series_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return fourier::series_from_json(j.at(key));
  } catch (const DomainError& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

FrequencyVector frequency(const std::string& csv) {
  try {
    return FrequencyVector(parse_csv(csv));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

json certificate_json(const diophantine::DiophantineCertificate& c) {
  json j{{"C", c.C},
         {"tau", c.tau},
         {"radius", c.radius},
         {"worst_point", c.worst_point},
         {"worst_margin", c.worst_margin},
         {"tail_from", c.tail_from},
         {"tail_point", c.tail_point},
         {"tail_margin", c.tail_margin},
         {"verdict", diophantine::to_string(c.verdict)}};
  j["resonance_witness"] = c.resonance_witness ? json(*c.resonance_witness) : json(nullptr);
  return j;
}

json solution_json(const cohomology::CohomologySolution& s) {
  json report = json::array();
  for (const auto& r : s.divisor_report) report.push_back({{"k", r.k}, {"divisor", r.divisor}});
  return {{"u", fourier::to_json(s.u)},
          {"c", s.c},
          {"status", cohomology::to_string(s.status)},
          {"resonant_set", s.resonant_set},
          {"divisor_report", report}};
}

parabolic::ParabolicAffineMap parabolic_from_json(const json& j) {
  return {field<int>(j, "n0"), field<double>(j, "rho"), field_or<double>(j, "beta", 0.0)};
}

cocycle::GeneratedCocycle cocycle_from_json(const json& j) {
  if (!j.contains("action")) throw InputError("cocycle spec: missing field 'action'");
  const json& a = j.at("action");
  const auto kind = field<std::string>(a, "kind");
  cocycle::ActionSpec action;
  try {
    if (kind == "rotation")
      action = cocycle::ZRotation{FrequencyVector(field<std::vector<double>>(a, "alpha"))};
    else if (kind == "flow")
      action = cocycle::LinearFlow{FrequencyVector(field<std::vector<double>>(a, "alpha"))};
    else if (kind == "parabolic")
      action = parabolic_from_json(a);
    else
      throw InputError("cocycle spec: unknown action kind '" + kind + "' (rotation, flow, parabolic)");
  } catch (const DomainError& e) {
    throw InputError(std::string("cocycle spec: ") + e.what());
  }
  return cocycle::make_cocycle(action, series_field(j, "generator"));
}

struct LcSpec {
  lincocycle::LinearCocycle linear;
  std::optional<lincocycle::TriangularCocycle> triangular;
};

// {"rho": f, "triangular": series} or {"rho": f, "entries": [4 series], "det_constraint": bool}
LcSpec lc_from_json(const json& j) {
  const double rho = field<double>(j, "rho");
  if (j.contains("triangular")) {
    lincocycle::TriangularCocycle t{series_field(j, "triangular"), rho};
    return {t.as_linear(), t};
  }
  if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").size() != 4)
    throw InputError("linear cocycle spec needs 'triangular' or four 'entries'");
  std::array<FourierSeries, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      e[i] = fourier::series_from_json(j.at("entries")[i]);
    } catch (const DomainError& ex) {
      throw InputError(std::string("entries: ") + ex.what());
    }
  }
  return {lincocycle::LinearCocycle(rho, e, field_or<bool>(j, "det_constraint", true)), std::nullopt};
}

parabolic::SuspensionPoint point_from_json(const json& j) {
  parabolic::SuspensionPoint p;
  p.theta = field<std::vector<double>>(j, "theta");
  p.s = field_or<double>(j, "s", 0.0);
  if (p.theta.size() != 2) throw InputError("suspension point needs theta of length 2");
  return p;
}

std::vector<std::string> key_join(const std::vector<fourier::Index>& ks) {
  std::vector<std::string> out;
  for (const auto& k : ks) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " " : "") + std::to_string(k[i]);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

void add_dio(CLI::App& app, Command& sel) {
  auto* dio = app.add_subcommand("dio", "Diophantine conditions and continued fractions");
  dio->require_subcommand(1);

  {
    struct O {
      std::string alpha;
      double C = 0.1, tau = 1.0;
      long long N = 1000;
    };
    auto o = std::make_shared<O>();
    auto* c = dio->add_subcommand("check", "Scan |p·α|·|p|^τ ≥ C over 0 < |p|∞ ≤ N");
    c->add_option("--alpha", o->alpha, "comma-separated frequency vector")->required();
    c->add_option("--C", o->C)->required();
    c->add_option("--tau", o->tau)->required();
    c->add_option("--N", o->N)->required()->check(CLI::PositiveNumber);
    c->callback([&sel, o] {
      sel = {"dio_check", [o](const RunConfig& cfg) {
               diophantine::ScanOptions so;
               so.zero_threshold = cfg.tolerance("zero_threshold", so.zero_threshold);
               const auto cert = diophantine::check_diophantine(frequency(o->alpha), o->C, o->tau, o->N, so);
               Outcome out;
               out.result = certificate_json(cert);
               out.exit_code = cert.holds() ? kExitOk : kExitObstructed;
               return out;
             }};
    });
  }
  {
    struct O {
      double x = 0.0;
      int terms = 10;
    };
    auto o = std::make_shared<O>();
    auto* c = dio->add_subcommand("cf", "Continued fraction expansion");
    c->add_option("--x", o->x)->required();
    c->add_option("--terms", o->terms)->required()->check(CLI::PositiveNumber);
    c->callback([&sel, o] {
      sel = {"dio_cf", [o](const RunConfig&) {
               const auto cf = diophantine::continued_fraction(o->x, o->terms);
               json conv = json::array();
               for (const auto& [p, q] : cf.convergents) conv.push_back({p, q});
               Outcome out;
               out.result = {{"x", o->x},
                             {"partial_quotients", cf.partial_quotients},
                             {"convergents", conv},
                             {"effectively_rational", cf.effectively_rational}};
               return out;
             }};
    });
  }
  {
    struct O {
      std::string alpha;
      long long N = 1024;
    };
    auto o = std::make_shared<O>();
    auto* c = dio->add_subcommand("fit", "Fit the Diophantine exponent over dyadic radii");
    c->add_option("--alpha", o->alpha)->required();
    c->add_option("--N", o->N)->required();
    c->callback([&sel, o] {
      sel = {"dio_fit", [o](const RunConfig& cfg) {
               diophantine::ExponentOptions eo;
               eo.scan.zero_threshold = cfg.tolerance("zero_threshold", eo.scan.zero_threshold);
               const auto est = diophantine::estimate_exponent(frequency(o->alpha), o->N, eo);
               Outcome out;
               json samples = json::array();
               std::ostringstream csv;
               csv << "R,min_abs\n";
               for (const auto& [r, v] : est.samples) {
                 samples.push_back({r, v});
                 csv << r << ',' << format_double(v) << '\n';
               }
               out.result = {{"tau_hat", est.tau_hat},
                             {"C_hat", est.C_hat},
                             {"samples", samples},
                             {"max_local_slope", est.max_local_slope},
                             {"flagged_non_diophantine", est.flagged_non_diophantine}};
               if (cfg.emit_plot_data) out.csv = csv.str();
               return out;
             }};
    });
  }
}

void add_cohomo(CLI::App& app, Command& sel) {
  auto* co = app.add_subcommand("cohomo", "Cohomological equations over rotations and linear flows");
  co->require_subcommand(1);
  {
    struct O {
      std::string which = "map", xi, alpha;
      std::optional<double> floor;
    };
    auto o = std::make_shared<O>();
    auto* c = co->add_subcommand("solve", "Solve u∘R_α − u = ξ − c or L_α u = ξ − c");
    c->add_option("--case", o->which)->check(CLI::IsMember({"map", "flow"}));
    c->add_option("--xi", o->xi, "series JSON (inline or path)")->required();
    c->add_option("--alpha", o->alpha)->required();
    c->add_option("--divisor-floor", o->floor);
    c->callback([&sel, o] {
      sel = {"cohomo_solve", [o](const RunConfig& cfg) {
               const auto xi = read_series(o->xi);
               const auto alpha = frequency(o->alpha);
               cohomology::SolveOptions so;
               so.divisor_floor = o->floor.value_or(cfg.tolerance("divisor_floor", so.divisor_floor));
               so.coefficient_floor = cfg.tolerance("coefficient_floor", so.coefficient_floor);
               const auto which = o->which == "map" ? cohomology::Case::Map : cohomology::Case::Flow;
               const auto sol = cohomology::solve(which, xi, alpha, so);
               Outcome out;
               out.result = solution_json(sol);
               out.result["case"] = o->which;
               if (sol.complete()) {
                 out.result["verify_residual"] =
                     cohomology::verify_solution(xi, alpha, sol, fourier::fitting_grid(xi), which);
               } else {
                 out.exit_code = kExitObstructed;
               }
               if (cfg.emit_plot_data) {
                 std::ostringstream csv;
                 csv << "k,divisor\n";
                 for (const auto& r : sol.divisor_report) csv << key_join({r.k}).front() << ',' << format_double(r.divisor) << '\n';
                 out.csv = csv.str();
               }
               return out;
             }};
    });
  }
  {
    struct O {
      std::string xi, alpha;
      long long nmax = 1024;
    };
    auto o = std::make_shared<O>();
    auto* c = co->add_subcommand("birkhoff", "Sup norms of Birkhoff sums at dyadic n");
    c->add_option("--xi", o->xi)->required();
    c->add_option("--alpha", o->alpha)->required();
    c->add_option("--nmax", o->nmax)->required()->check(CLI::PositiveNumber);
    c->callback([&sel, o] {
      sel = {"cohomo_birkhoff", [o](const RunConfig& cfg) {
               const auto xi = read_series(o->xi);
               cohomology::SolveOptions so;
               so.divisor_floor = cfg.tolerance("divisor_floor", so.divisor_floor);
               const auto rep =
                   cohomology::birkhoff_sup_norms(xi, frequency(o->alpha), o->nmax, fourier::fitting_grid(xi, 4), so);
               Outcome out;
               std::ostringstream csv;
               csv << "n,supnorm\n";
               json samples = json::array();
               for (const auto& [n, v] : rep.samples) {
                 csv << n << ',' << format_double(v) << '\n';
                 samples.push_back({n, v});
               }
               out.csv = csv.str();
               out.csv_primary = true;
               out.result = {{"samples", samples},
                             {"bounded", rep.bounded},
                             {"linear_growth_warning", rep.linear_growth_warning},
                             {"resonant", rep.resonant}};
               return out;
             }};
    });
  }
  {
    struct O {
      std::string xi;
      long long p = 0, q = 1;
    };
    auto o = std::make_shared<O>();
    auto* c = co->add_subcommand("livsic", "Orbit sums over the rational rotation p/q");
    c->add_option("--xi", o->xi)->required();
    c->add_option("--p", o->p)->required();
    c->add_option("--q", o->q)->required();
    c->callback([&sel, o] {
      sel = {"cohomo_livsic", [o](const RunConfig&) {
               const auto r = cohomology::periodic_obstruction(read_series(o->xi), o->p, o->q);
               Outcome out;
               out.result = {{"orbit_sum", fourier::to_json(r.orbit_sum)},
                             {"obstruction_vanishes", r.obstruction_vanishes}};
               out.exit_code = r.obstruction_vanishes ? kExitOk : kExitObstructed;
               return out;
             }};
    });
  }
}

void add_cocycle(CLI::App& app, Command& sel) {
  auto* co = app.add_subcommand("cocycle", "Real cocycles over rotations, linear flows, parabolic maps");
  co->require_subcommand(1);
  {
    struct O {
      std::string spec;
      std::size_t trials = 1000;
      std::optional<std::uint64_t> seed;
    };
    auto o = std::make_shared<O>();
    auto* c = co->add_subcommand("verify", "Check the cocycle identity on random trials");
    c->add_option("--spec", o->spec)->required();
    c->add_option("--trials", o->trials);
    c->add_option("--seed", o->seed);
    c->callback([&sel, o] {
      sel = {"cocycle_verify", [o](const RunConfig& cfg) {
               const auto cc = cocycle_from_json(read_json_arg(o->spec));
               const std::uint64_t seed = o->seed.value_or(cfg.seed);
               SplitMix64 rng(seed);
               const auto trials = cocycle::random_trials(cc.action, o->trials, rng);
               const double v = cocycle::verify_cocycle_identity(cc, trials);
               Outcome out;
               out.result = {{"kind", cocycle::to_string(cocycle::kind(cc.action))},
                             {"trials", o->trials},
                             {"seed", seed},
                             {"max_violation", v}};
               return out;
             }};
    });
  }
  {
    struct O {
      std::string spec, p;
      double g = 0.0;
    };
    auto o = std::make_shared<O>();
    auto* c = co->add_subcommand("value", "Evaluate Ξ(p, g)");
    c->add_option("--spec", o->spec)->required();
    c->add_option("--p", o->p)->required();
    c->add_option("--g", o->g)->required();
    c->callback([&sel, o] {
      sel = {"cocycle_value", [o](const RunConfig&) {
               const auto cc = cocycle_from_json(read_json_arg(o->spec));
               const auto p = parse_csv(o->p);
               Outcome out;
               out.result = {{"p", p}, {"g", o->g}, {"value", cocycle::cocycle_value(cc, p, o->g)}};
               return out;
             }};
    });
  }
}

void add_para(CLI::App& app, Command& sel) {
  auto* pa = app.add_subcommand("para", "Parabolic affine maps, invariant distributions, suspensions");
  pa->require_subcommand(1);
  {
    struct O {
      int m = 1, n0 = 1;
      double rho = 0.0, beta = 0.0;
      std::string psi;
    };
    auto o = std::make_shared<O>();
    auto* c = pa->add_subcommand("pair", "Pair T_m with a test function");
    c->add_option("--m", o->m)->required();
    c->add_option("--n0", o->n0)->required();
    c->add_option("--rho", o->rho)->required();
    c->add_option("--beta", o->beta)->required();
    c->add_option("--psi", o->psi)->required();
    c->callback([&sel, o] {
      sel = {"para_pair", [o](const RunConfig&) {
               const parabolic::ParabolicAffineMap B{o->n0, o->rho, o->beta};
               const auto psi = read_series(o->psi);
               const long long K = std::max(1LL, parabolic::required_truncation(o->m, B, psi));
               const auto p = parabolic::distribution_pair({o->m, K}, B, psi);
               Outcome out;
               out.result = {{"m", o->m},
                             {"K", K},
                             {"re", p.value.real()},
                             {"im", p.value.imag()},
                             {"exact_tail", p.exact_tail},
                             {"invariance_gap", parabolic::verify_invariance({o->m, K}, B, psi)}};
               return out;
             }};
    });
  }
  {
    struct O {
      int cases = 200;
      std::optional<std::uint64_t> seed;
    };
    auto o = std::make_shared<O>();
    auto* c = pa->add_subcommand("invariance-sweep", "Random sweep of |<T_m, ψ∘B> − <T_m, ψ>|");
    c->add_option("--cases", o->cases)->check(CLI::PositiveNumber);
    c->add_option("--seed", o->seed);
    c->callback([&sel, o] {
      sel = {"para_invariance_sweep", [o](const RunConfig& cfg) {
               const std::uint64_t seed = o->seed.value_or(cfg.seed);
               const double tol = cfg.tolerance("invariance_gap", 1e-9);
               SplitMix64 rng(seed);
               static constexpr int kMs[] = {1, -1, 2, -2, 3, -3};
               std::ostringstream csv;
               csv << "case,m,n0,rho,beta,gap\n";
               double worst = 0.0;
               for (int i = 0; i < o->cases; ++i) {
                 const int m = kMs[rng.integer(0, 5)];
                 const parabolic::ParabolicAffineMap B{static_cast<int>(rng.integer(1, 3)), rng.uniform(), rng.uniform()};
                 const auto psi = fourier::random_real_series(2, static_cast<int>(rng.integer(1, 12)), rng);
                 const long long K = std::max(1LL, parabolic::required_truncation(m, B, psi));
                 const double gap = parabolic::verify_invariance({m, K}, B, psi);
                 worst = std::max(worst, gap);
                 csv << i << ',' << m << ',' << B.n0 << ',' << format_double(B.rho) << ',' << format_double(B.beta)
                     << ',' << format_double(gap) << '\n';
               }
               Outcome out;
               out.csv = csv.str();
               out.csv_primary = true;
               out.result = {{"cases", o->cases}, {"seed", seed}, {"max_gap", worst}, {"tolerance", tol},
                             {"pass", worst <= tol}};
               if (worst > tol) out.exit_code = kExitError;
               return out;
             }};
    });
  }
  {
    struct O {
      std::string spec;
      double T = 10.0, dt = 0.1;
    };
    auto o = std::make_shared<O>();
    auto* c = pa->add_subcommand("separation", "Distance between two suspension-flow orbits");
    c->add_option("--spec", o->spec)->required();
    c->add_option("--T", o->T)->required();
    c->add_option("--dt", o->dt)->required();
    c->callback([&sel, o] {
      sel = {"para_separation", [o](const RunConfig&) {
               const json j = read_json_arg(o->spec);
               parabolic::SuspensionSpec spec;
               spec.base = parabolic_from_json(j);
               spec.return_time = field_or<double>(j, "return_time", 1.0);
               if (!j.contains("x") || !j.contains("y")) throw InputError("separation spec needs points 'x' and 'y'");
               const auto prof =
                   parabolic::separation_profile(spec, point_from_json(j.at("x")), point_from_json(j.at("y")), o->T, o->dt);
               std::ostringstream csv;
               csv << "t,distance\n";
               for (const auto& [t, d] : prof.profile) csv << format_double(t) << ',' << format_double(d) << '\n';
               Outcome out;
               out.csv = csv.str();
               out.csv_primary = true;
               out.result = {{"steps", prof.profile.size()}, {"max_distance", prof.max_distance}};
               return out;
             }};
    });
  }
}

void add_lc(CLI::App& app, Command& sel) {
  auto* lc = app.add_subcommand("lc", "SL(2,R) cocycles over circle rotations");
  lc->require_subcommand(1);
  {
    struct O {
      std::string spec;
      long long n = 10000;
      double x0 = 0.0;
    };
    auto o = std::make_shared<O>();
    auto* c = lc->add_subcommand("lyapunov", "Finite-time Lyapunov exponent");
    c->add_option("--spec", o->spec)->required();
    c->add_option("--n", o->n)->required();
    c->add_option("--x0", o->x0);
    c->callback([&sel, o] {
      sel = {"lc_lyapunov", [o](const RunConfig&) {
               const auto spec = lc_from_json(read_json_arg(o->spec));
               Outcome out;
               out.result = {{"n", o->n}, {"x0", o->x0},
                             {"lyapunov", lincocycle::lyapunov_exponent(spec.linear, o->x0, o->n)}};
               return out;
             }};
    });
  }
  {
    auto spec = std::make_shared<std::string>();
    auto* c = lc->add_subcommand("reduce", "Conjugate [[1,a],[0,1]] to [[1,ā],[0,1]]");
    c->add_option("--spec", *spec)->required();
    c->callback([&sel, spec] {
      sel = {"lc_reduce", [spec](const RunConfig& cfg) {
               const auto s = lc_from_json(read_json_arg(*spec));
               if (!s.triangular) throw InputError("lc reduce needs a 'triangular' spec");
               cohomology::SolveOptions so;
               so.divisor_floor = cfg.tolerance("divisor_floor", so.divisor_floor);
               const auto nf = lincocycle::reduce_to_normal_form(*s.triangular, so);
               Outcome out;
               out.result = {{"b", fourier::to_json(nf.b)},
                             {"a_bar", nf.a_bar},
                             {"status", cohomology::to_string(nf.status)},
                             {"resonant_set", nf.resonant_set}};
               out.result["residual"] = std::isfinite(nf.residual) ? json(nf.residual) : json(nullptr);
               if (nf.status != cohomology::Status::Complete) out.exit_code = kExitObstructed;
               return out;
             }};
    });
  }
  {
    struct O {
      std::string spec;
      double bound = 10.0, x0 = 0.0;
      long long n = 2000;
      int directions = 64;
    };
    auto o = std::make_shared<O>();
    auto* c = lc->add_subcommand("probe", "Directions with bounded two-sided orbits");
    c->add_option("--spec", o->spec)->required();
    c->add_option("--bound", o->bound)->required();
    c->add_option("--n", o->n)->required();
    c->add_option("--directions", o->directions);
    c->add_option("--x0", o->x0);
    c->callback([&sel, o] {
      sel = {"lc_probe", [o](const RunConfig& cfg) {
               const auto s = lc_from_json(read_json_arg(o->spec));
               const auto pr = lincocycle::quasi_anosov_probe(s.linear, o->x0, o->directions, o->n, o->bound);
               Outcome out;
               out.result = {{"survivor_angles", pr.survivor_angles},
                             {"directions", o->directions},
                             {"n", o->n},
                             {"bound", o->bound}};
               if (cfg.emit_plot_data) {
                 std::ostringstream csv;
                 csv << "angle,max_norm\n";
                 for (std::size_t i = 0; i < pr.angles.size(); ++i)
                   csv << format_double(pr.angles[i]) << ',' << format_double(pr.max_norms[i]) << '\n';
                 out.csv = csv.str();
               }
               return out;
             }};
    });
  }
}

void add_skew(CLI::App& app, Command& sel) {
  auto* sk = app.add_subcommand("skew", "Skew products over circle rotations");
  sk->require_subcommand(1);
  {
    struct O {
      double rho = 0.0;
      int n0 = 1;
      std::string chi;
      std::optional<double> floor;
    };
    auto o = std::make_shared<O>();
    auto* c = sk->add_subcommand("linearize", "Solve for the fiber conjugacy ζ");
    c->add_option("--rho", o->rho)->required();
    c->add_option("--n0", o->n0)->required();
    c->add_option("--chi", o->chi)->required();
    c->add_option("--divisor-floor", o->floor);
    c->callback([&sel, o] {
      sel = {"skew_linearize", [o](const RunConfig& cfg) {
               const skewproduct::SkewProductMap P{o->rho, o->n0, read_series(o->chi)};
               const auto lin = skewproduct::linearize(P, o->floor.value_or(cfg.tolerance("divisor_floor", 1e-10)));
               Outcome out;
               out.result = {{"zeta", fourier::to_json(lin.zeta)},
                             {"beta", lin.beta},
                             {"status", cohomology::to_string(lin.status)},
                             {"resonant_set", lin.resonant_set}};
               out.result["residual"] = std::isfinite(lin.residual) ? json(lin.residual) : json(nullptr);
               if (!lin.complete()) out.exit_code = kExitObstructed;
               return out;
             }};
    });
  }
  {
    struct O {
      std::string lift;
      long long n = 1000;
    };
    auto o = std::make_shared<O>();
    auto* c = sk->add_subcommand("rotnum", "Rotation number of x ↦ x + p(x)");
    c->add_option("--lift", o->lift, "perturbation series p")->required();
    c->add_option("--n", o->n)->required();
    c->callback([&sel, o] {
      sel = {"skew_rotnum", [o](const RunConfig&) {
               const skewproduct::CircleMap g(read_series(o->lift));
               const auto r = skewproduct::rotation_number(g, o->n);
               Outcome out;
               out.result = {{"rho_hat", r.rho_hat}, {"error_bound", r.error_bound}, {"n", o->n}};
               return out;
             }};
    });
  }
  {
    struct O {
      std::string X, f, alpha;
    };
    auto o = std::make_shared<O>();
    auto* c = sk->add_subcommand("verify-conj", "max |Df(X) − α| on the grid of X");
    c->add_option("--X", o->X, "array of grid functions, one per component")->required();
    c->add_option("--f", o->f, "array of displacement series")->required();
    c->add_option("--alpha", o->alpha)->required();
    c->callback([&sel, o] {
      sel = {"skew_verify_conj", [o](const RunConfig&) {
               json xj = read_json_arg(o->X), fj = read_json_arg(o->f);
               if (xj.is_object() && xj.contains("components")) xj = xj.at("components");
               if (fj.is_object() && fj.contains("displacements")) fj = fj.at("displacements");
               if (!xj.is_array() || !fj.is_array()) throw InputError("--X and --f must be JSON arrays");
               std::vector<fourier::GridFunction> X;
               std::vector<FourierSeries> u;
               try {
                 for (const auto& g : xj) X.push_back(fourier::grid_from_json(g));
                 for (const auto& s : fj) u.push_back(fourier::series_from_json(s));
               } catch (const DomainError& e) {
                 throw InputError(e.what());
               }
               Outcome out;
               out.result = {{"residual", skewproduct::verify_constant_conjugacy(X, u, frequency(o->alpha))}};
               return out;
             }};
    });
  }
}

void add_pipeline(CLI::App& app, Command& sel) {
  auto* pl = app.add_subcommand("pipeline", "End-to-end reduction chain demos");
  pl->require_subcommand(1);
  {
    auto o = std::make_shared<PipelineOptions>();
    auto* c = pl->add_subcommand("demo", "Skew product → affine form → invariant distributions → suspension");
    c->add_option("--n0", o->n0);
    c->add_option("--rho", o->rho);
    c->callback([&sel, o] {
      sel = {"pipeline_demo", [o](const RunConfig& cfg) { return pipeline_demo(*o, cfg); }};
    });
  }
  {
    auto* c = pl->add_subcommand("demo-linearize", "Linearize a skew product built from a seeded ζ₀");
    c->callback([&sel] { sel = {"pipeline_demo_linearize", [](const RunConfig& cfg) { return pipeline_demo_linearize(cfg); }}; });
  }
}

}  // namespace

void register_commands(CLI::App& app, Command& selected) {
  add_dio(app, selected);
  add_cohomo(app, selected);
  add_cocycle(app, selected);
  add_para(app, selected);
  add_lc(app, selected);
  add_skew(app, selected);
  add_pipeline(app, selected);
}

}  // namespace torcoh::cli
