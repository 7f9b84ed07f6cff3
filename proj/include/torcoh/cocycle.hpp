#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "torcoh/cohomology.hpp"
#include "torcoh/parabolic.hpp"
#include "torcoh/rng.hpp"

namespace torcoh::cocycle {

using fourier::FourierSeries;

struct ZRotation {
  FrequencyVector alpha;
};
struct LinearFlow {
  FrequencyVector alpha;
};
using ActionSpec = std::variant<ZRotation, LinearFlow, parabolic::ParabolicAffineMap>;

enum class ActionKind { ZRotation, LinearFlow, ParabolicAffine };

ActionKind kind(const ActionSpec& a);
const char* to_string(ActionKind k);
std::size_t dimension(const ActionSpec& a);
bool is_discrete(const ActionSpec& a);
bool same_action(const ActionSpec& a, const ActionSpec& b);

// Γ(p, g). Discrete actions require integral g.
Point act(const ActionSpec& a, const Point& p, double g);

/// Real cocycle Ξ generated by ξ: Ξ(p, 1) = ξ(p) for Z-actions, ∂_tΞ(p, 0) = ξ(p)
/// for the linear flow.
struct GeneratedCocycle {
  ActionSpec action;
  FourierSeries generator;
};

GeneratedCocycle make_cocycle(ActionSpec action, FourierSeries generator);

/// Ξ(p, n): 0 for n = 0, Σ_{i<n} ξ(f^i p) for n > 0, −Σ_{i=n}^{−1} ξ(f^i p)
/// for n < 0. Orbit points are reduced mod 1 after every step.
double cocycle_value_Z(const GeneratedCocycle& c, const Point& p, long long n);

/// Ξ(p, t) = ∫₀ᵗ ξ(p + sα) ds in closed form: mode k contributes
/// ξ̂_k e^{2πik·p}(e^{2πitk·α} − 1)/(2πik·α), and t·ξ̂_k when k·α = 0.
double cocycle_value_R(const GeneratedCocycle& c, const Point& p, double t);

// Dispatches on the action kind; g must be integral for discrete actions.
double cocycle_value(const GeneratedCocycle& c, const Point& p, double g);

struct Trial {
  Point p;
  double g0 = 0.0;
  double g1 = 0.0;
};

using Evaluator = std::function<double(const GeneratedCocycle&, const Point&, double)>;

/// max over trials of |Ξ(p, g0+g1) − Ξ(Γ(p,g0), g1) − Ξ(p, g0)|.
double verify_cocycle_identity(const GeneratedCocycle& c, std::span<const Trial> trials,
                               const Evaluator& eval = cocycle_value);

// Uniform points; g drawn from [−g_range, g_range] (integers for discrete kinds).
std::vector<Trial> random_trials(const ActionSpec& a, std::size_t count, SplitMix64& rng, double g_range = 20.0);

/// Generator of the coboundary of u: u∘f − u (discrete kinds), L_α u (flow).
GeneratedCocycle coboundary_from(const FourierSeries& u, const ActionSpec& action,
                                 std::optional<int> max_radius = std::nullopt);

/// Transfer function between two cocycles over the same rotation or flow:
/// the solution of the cohomological equation for ξ − θ. The solution's c
/// is the constant gap; an obstructed status lists the resonant frequencies.
cohomology::CohomologySolution are_cohomologous(const GeneratedCocycle& xi, const GeneratedCocycle& theta,
                                                const cohomology::SolveOptions& opts = {});

}  // namespace torcoh::cocycle
