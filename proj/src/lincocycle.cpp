#include "torcoh/lincocycle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace torcoh::lincocycle {

namespace {

constexpr int kRenormEvery = 32;
constexpr std::size_t kCheckGrid = 1024;

double ev(const FourierSeries& s, double x) {
  const double p[1] = {x};
  return fourier::evaluate(s, p);
}

Mat2 checked_inverse(const Mat2& g) {
  const double det = g.determinant();
  if (!(std::abs(det) > 1e-14)) throw NumericalError("singular generator matrix");
  Mat2 inv;
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return inv / det;
}

}  // namespace

LinearCocycle::LinearCocycle(double base_rho, std::array<FourierSeries, 4> entries, bool det_constraint)
    : rho_(base_rho), entries_(std::move(entries)), det_(det_constraint) {
  if (!std::isfinite(rho_)) throw DomainError("base rotation must be finite");
  for (const auto& e : entries_) {
    if (e.dim() != 1) throw DomainError("linear cocycle entries must be series on T^1");
    if (!e.declared_real()) throw DomainError("linear cocycle entries must be real");
    e.check_real(1e-12);
  }
  if (det_ && det_defect() > 1e-10) throw DomainError("generator violates the determinant-one constraint");
}

LinearCocycle LinearCocycle::constant(double base_rho, const Mat2& g, bool det_constraint) {
  return LinearCocycle(base_rho,
                       {FourierSeries::constant(1, g(0, 0)), FourierSeries::constant(1, g(0, 1)),
                        FourierSeries::constant(1, g(1, 0)), FourierSeries::constant(1, g(1, 1))},
                       det_constraint);
}

Mat2 LinearCocycle::generator(double x) const {
  Mat2 g;
  g << ev(entries_[0], x), ev(entries_[1], x), ev(entries_[2], x), ev(entries_[3], x);
  return g;
}

double LinearCocycle::det_defect() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < kCheckGrid; ++j)
    worst = std::max(worst, std::abs(generator(static_cast<double>(j) / kCheckGrid).determinant() - 1.0));
  return worst;
}

LinearCocycle TriangularCocycle::as_linear() const {
  return LinearCocycle(base_rho, {FourierSeries::constant(1, 1.0), a, FourierSeries(1), FourierSeries::constant(1, 1.0)},
                       true);
}

Mat2 iterate(const LinearCocycle& c, double x, long long n) {
  Mat2 m = Mat2::Identity();
  double pos = frac(x);
  if (n >= 0) {
    for (long long i = 0; i < n; ++i) {
      m = c.generator(pos) * m;
      pos = frac(pos + c.base_rho());
    }
  } else {
    for (long long i = 0; i < -n; ++i) {
      pos = frac(pos - c.base_rho());
      m = checked_inverse(c.generator(pos)) * m;
    }
  }
  return m;
}

double top_singular_value(const Mat2& m) {
  // σ² are the roots of λ² − |M|_F² λ + det² = 0
  const double f = m.squaredNorm();
  const double det = m.determinant();
  const double disc = std::max(0.0, f * f - 4.0 * det * det);
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

double lyapunov_exponent(const LinearCocycle& c, double x0, long long n) {
  if (n < 100) throw DomainError("lyapunov_exponent: n must be >= 100");
  Mat2 m = Mat2::Identity();
  double log_scale = 0.0;
  double pos = frac(x0);
  for (long long i = 0; i < n; ++i) {
    m = c.generator(pos) * m;
    pos = frac(pos + c.base_rho());
    if ((i + 1) % kRenormEvery == 0) {
      const double nrm = m.norm();
      if (!std::isfinite(nrm) || nrm == 0.0) throw NumericalError("cocycle product overflowed despite renormalisation");
      m /= nrm;
      log_scale += std::log(nrm);
    }
  }
  const double s = top_singular_value(m);
  if (!std::isfinite(s) || s == 0.0) throw NumericalError("cocycle product overflowed despite renormalisation");
  return (log_scale + std::log(s)) / static_cast<double>(n);
}

ProbeResult quasi_anosov_probe(const LinearCocycle& c, double x0, int directions, long long n, double bound) {
  if (directions < 8) throw DomainError("quasi_anosov_probe needs at least 8 directions");
  if (n < 1) throw DomainError("quasi_anosov_probe: n must be >= 1");

  std::vector<Mat2> fwd, bwd;
  fwd.reserve(static_cast<std::size_t>(n));
  bwd.reserve(static_cast<std::size_t>(n));
  double pos = frac(x0);
  for (long long i = 0; i < n; ++i) {
    fwd.push_back(c.generator(pos));
    pos = frac(pos + c.base_rho());
  }
  pos = frac(x0);
  for (long long i = 0; i < n; ++i) {
    pos = frac(pos - c.base_rho());
    bwd.push_back(checked_inverse(c.generator(pos)));
  }

  ProbeResult out;
  for (int j = 0; j < directions; ++j) {
    const double ang = std::numbers::pi * j / directions;
    const Vec2 v(std::cos(ang), std::sin(ang));
    double worst = 1.0;
    Vec2 w = v;
    for (const Mat2& g : fwd) worst = std::max(worst, (w = g * w).norm());
    w = v;
    for (const Mat2& g : bwd) worst = std::max(worst, (w = g * w).norm());
    out.angles.push_back(ang);
    out.max_norms.push_back(worst);
    if (worst <= bound) out.survivor_angles.push_back(ang);
  }
  return out;
}

Vec2 NormalForm::z_hat(double x) const { return {-ev(b, x), 1.0}; }

LinearCocycle NormalForm::conjugated(const TriangularCocycle& t) const {
  // P(x+ρ)^{-1} G(x) P(x) = [[1, a(x) − b(x) + b(x+ρ)], [0, 1]]
  const double shift[1] = {t.base_rho};
  const FourierSeries top = t.a - b + fourier::translate(b, shift);
  return TriangularCocycle{top, t.base_rho}.as_linear();
}

NormalForm reduce_to_normal_form(const TriangularCocycle& t, const cohomology::SolveOptions& opts) {
  if (t.a.dim() != 1) throw DomainError("triangular cocycle entry must be a series on T^1");
  NormalForm nf;
  nf.a_bar = t.a.mean();
  const FourierSeries rhs = -(t.a - FourierSeries::constant(1, nf.a_bar));
  const auto sol = cohomology::solve_map(rhs, FrequencyVector{t.base_rho}, opts);
  nf.status = sol.status;
  nf.resonant_set = sol.resonant_set;
  nf.b = sol.u;
  if (!sol.complete()) {
    nf.residual = std::numeric_limits<double>::infinity();
    return nf;
  }

  Mat2 target;
  target << 1.0, nf.a_bar, 0.0, 1.0;
  for (std::size_t j = 0; j < kCheckGrid; ++j) {
    const double x = static_cast<double>(j) / kCheckGrid;
    Mat2 g, p, q_inv;
    g << 1.0, ev(t.a, x), 0.0, 1.0;
    p << 1.0, -ev(nf.b, x), 0.0, 1.0;
    q_inv << 1.0, ev(nf.b, frac(x + t.base_rho)), 0.0, 1.0;
    nf.residual = std::max(nf.residual, (q_inv * g * p - target).cwiseAbs().maxCoeff());
  }
  return nf;
}

GrowthFit parabolic_growth(const TriangularCocycle& t, double x0, long long n_max, const cohomology::SolveOptions& opts) {
  if (n_max < 4) throw DomainError("parabolic_growth: n_max must be >= 4");
  const NormalForm nf = reduce_to_normal_form(t, opts);
  if (nf.status != cohomology::Status::Complete) throw DomainError("parabolic_growth: normal-form reduction obstructed");

  GrowthFit fit;
  fit.a_bar = nf.a_bar;
  const LinearCocycle c = t.as_linear();
  Vec2 v = nf.z_hat(frac(x0));
  double pos = frac(x0);
  for (long long n = 1; n <= n_max; ++n) {
    v = c.generator(pos) * v;
    pos = frac(pos + t.base_rho);
    fit.norms.push_back(v.norm());
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (long long n = n_max / 2; n <= n_max; ++n) {
    const auto x = static_cast<double>(n);
    const double y = fit.norms[static_cast<std::size_t>(n - 1)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  fit.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return fit;
}

double angle_to_invariant_direction(const TriangularCocycle& t, const NormalForm& nf, double x0, long long n) {
  const Vec2 v = iterate(t.as_linear(), x0, n) * nf.z_hat(frac(x0));
  // angle between the line through v and the line through Ŷ = (1, 0)
  return std::atan2(std::abs(v(1)), std::abs(v(0)));
}

}  // namespace torcoh::lincocycle
