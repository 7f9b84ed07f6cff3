#include "torcoh/cocycle.hpp"

#include <cmath>
#include <string>

namespace torcoh::cocycle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

long long as_integer(double g) {
  if (g != std::floor(g)) throw DomainError("discrete action needs an integer group element, got " + std::to_string(g));
  return static_cast<long long>(g);
}

Point rotate(const Point& p, const FrequencyVector& alpha, double g) {
  Point q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = frac(p[i] + g * alpha[i]);
  return q;
}

// (e^{iy} − 1)/(iy), with a Taylor branch near 0.
fourier::Complex phi1(double y) {
  if (std::abs(y) < 1e-3) {
    const double y2 = y * y;
    return {1.0 - y2 / 6.0 + y2 * y2 / 120.0, y / 2.0 - y * y2 / 24.0};
  }
  const double s = std::sin(0.5 * y);
  const fourier::Complex em1(-2.0 * s * s, std::sin(y));
  return em1 / fourier::Complex(0.0, y);
}

}  // namespace

ActionKind kind(const ActionSpec& a) {
  return std::visit(overloaded{[](const ZRotation&) { return ActionKind::ZRotation; },
                               [](const LinearFlow&) { return ActionKind::LinearFlow; },
                               [](const parabolic::ParabolicAffineMap&) { return ActionKind::ParabolicAffine; }},
                    a);
}

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::ZRotation: return "rotation";
    case ActionKind::LinearFlow: return "flow";
    case ActionKind::ParabolicAffine: return "parabolic";
  }
  return "unknown";
}

std::size_t dimension(const ActionSpec& a) {
  return std::visit(overloaded{[](const ZRotation& r) { return r.alpha.dim(); },
                               [](const LinearFlow& f) { return f.alpha.dim(); },
                               [](const parabolic::ParabolicAffineMap&) { return std::size_t{2}; }},
                    a);
}

bool is_discrete(const ActionSpec& a) { return kind(a) != ActionKind::LinearFlow; }

bool same_action(const ActionSpec& a, const ActionSpec& b) {
  if (a.index() != b.index()) return false;
  return std::visit(overloaded{[&](const ZRotation& r) { return r.alpha == std::get<ZRotation>(b).alpha; },
                               [&](const LinearFlow& f) { return f.alpha == std::get<LinearFlow>(b).alpha; },
                               [&](const parabolic::ParabolicAffineMap& B) {
                                 const auto& C = std::get<parabolic::ParabolicAffineMap>(b);
                                 return B.n0 == C.n0 && B.rho == C.rho && B.beta == C.beta;
                               }},
                    a);
}

Point act(const ActionSpec& a, const Point& p, double g) {
  if (p.size() != dimension(a)) throw DomainError("point dimension does not match the action");
  return std::visit(overloaded{[&](const ZRotation& r) { return rotate(p, r.alpha, static_cast<double>(as_integer(g))); },
                               [&](const LinearFlow& f) { return rotate(p, f.alpha, g); },
                               [&](const parabolic::ParabolicAffineMap& B) { return B.apply_power(p, as_integer(g)); }},
                    a);
}

GeneratedCocycle make_cocycle(ActionSpec action, FourierSeries generator) {
  if (!generator.declared_real()) throw DomainError("cocycle generator must be declared real");
  generator.check_real(1e-12);
  if (generator.dim() != dimension(action)) throw DomainError("generator dimension does not match the action");
  return {std::move(action), std::move(generator)};
}

namespace {

Point step_forward(const ActionSpec& a, const Point& p) {
  if (const auto* r = std::get_if<ZRotation>(&a)) return rotate(p, r->alpha, 1.0);
  return std::get<parabolic::ParabolicAffineMap>(a).apply(p);
}

Point step_backward(const ActionSpec& a, const Point& p) {
  if (const auto* r = std::get_if<ZRotation>(&a)) return rotate(p, r->alpha, -1.0);
  return std::get<parabolic::ParabolicAffineMap>(a).apply_inverse(p);
}

}  // namespace

double cocycle_value_Z(const GeneratedCocycle& c, const Point& p, long long n) {
  if (!is_discrete(c.action)) throw DomainError("cocycle_value_Z needs a discrete action");
  if (p.size() != dimension(c.action)) throw DomainError("point dimension does not match the action");
  double sum = 0.0;
  if (n > 0) {
    Point x = p;
    for (long long i = 0; i < n; ++i) {
      sum += fourier::evaluate(c.generator, x);
      x = step_forward(c.action, x);
    }
  } else if (n < 0) {
    Point x = p;
    for (long long i = 0; i < -n; ++i) {
      x = step_backward(c.action, x);
      sum -= fourier::evaluate(c.generator, x);
    }
  }
  return sum;
}

double cocycle_value_R(const GeneratedCocycle& c, const Point& p, double t) {
  const auto* f = std::get_if<LinearFlow>(&c.action);
  if (!f) throw DomainError("cocycle_value_R needs a linear-flow action");
  if (p.size() != f->alpha.dim()) throw DomainError("point dimension does not match the action");
  fourier::Complex sum{};
  for (const auto& [k, ck] : c.generator.coeffs()) {
    double kp = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) kp += k[i] * p[i];
    const double y = kTwoPi * t * f->alpha.dot(k);
    const double r = centered_frac(kp);
    sum += ck * fourier::Complex(std::cos(kTwoPi * r), std::sin(kTwoPi * r)) * phi1(y) * t;
  }
  return sum.real();
}

double cocycle_value(const GeneratedCocycle& c, const Point& p, double g) {
  if (is_discrete(c.action)) return cocycle_value_Z(c, p, as_integer(g));
  return cocycle_value_R(c, p, g);
}

double verify_cocycle_identity(const GeneratedCocycle& c, std::span<const Trial> trials, const Evaluator& eval) {
  double worst = 0.0;
  for (const Trial& tr : trials) {
    const double lhs = eval(c, tr.p, tr.g0 + tr.g1);
    const double rhs = eval(c, act(c.action, tr.p, tr.g0), tr.g1) + eval(c, tr.p, tr.g0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<Trial> random_trials(const ActionSpec& a, std::size_t count, SplitMix64& rng, double g_range) {
  const std::size_t d = dimension(a);
  const bool discrete = is_discrete(a);
  const auto R = static_cast<long long>(g_range);
  std::vector<Trial> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Trial t;
    t.p.resize(d);
    for (double& x : t.p) x = rng.uniform();
    if (discrete) {
      t.g0 = static_cast<double>(rng.integer(-R, R));
      t.g1 = static_cast<double>(rng.integer(-R, R));
    } else {
      t.g0 = rng.uniform(-g_range, g_range);
      t.g1 = rng.uniform(-g_range, g_range);
    }
    out.push_back(std::move(t));
  }
  return out;
}

GeneratedCocycle coboundary_from(const FourierSeries& u, const ActionSpec& action, std::optional<int> max_radius) {
  if (!u.declared_real()) throw DomainError("coboundary_from needs a declared-real transfer function");
  if (u.dim() != dimension(action)) throw DomainError("transfer function dimension does not match the action");
  FourierSeries gen = std::visit(
      overloaded{[&](const ZRotation& r) { return fourier::translate(u, r.alpha.components()) - u; },
                 [&](const LinearFlow& f) { return fourier::directional_derivative(u, f.alpha.components()); },
                 [&](const parabolic::ParabolicAffineMap& B) { return parabolic::pullback_fourier(B, u, max_radius) - u; }},
      action);
  return make_cocycle(action, std::move(gen));
}

cohomology::CohomologySolution are_cohomologous(const GeneratedCocycle& xi, const GeneratedCocycle& theta,
                                                const cohomology::SolveOptions& opts) {
  if (!same_action(xi.action, theta.action)) throw DomainError("are_cohomologous: cocycles over different actions");
  const FourierSeries diff = xi.generator - theta.generator;
  switch (kind(xi.action)) {
    case ActionKind::ZRotation: return cohomology::solve_map(diff, std::get<ZRotation>(xi.action).alpha, opts);
    case ActionKind::LinearFlow: return cohomology::solve_flow(diff, std::get<LinearFlow>(xi.action).alpha, opts);
    case ActionKind::ParabolicAffine: break;
  }
  throw DomainError("are_cohomologous: parabolic base needs the dedicated invariant-distribution machinery");
}

}  // namespace torcoh::cocycle
