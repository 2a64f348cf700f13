#pragma once

#include "sympack/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sympack::local {

using CVec = Eigen::VectorXcd;

enum class MapKind { NormGraph, BlowUp, BlowDown };  // H, F, G
enum class BumpKind { SmoothExp, Smoothstep };

/// C^1 (C^infty for SmoothExp) cutoff equal to 1 below `lo` and 0 above
/// `hi`, monotone in between.
struct BumpProfile {
  BumpKind kind = BumpKind::SmoothExp;
  double lo = 0.0;
  double hi = 1.0;

  double value(double t) const {
    if (t <= lo) return 1.0;
    if (t >= hi) return 0.0;
    const double u = (t - lo) / (hi - lo);
    if (kind == BumpKind::Smoothstep) return 1.0 - u * u * (3.0 - 2.0 * u);
    const double fa = ramp(1.0 - u), fb = ramp(u);
    return fa / (fa + fb);
  }

  double deriv(double t) const {
    if (t <= lo || t >= hi) return 0.0;
    const double u = (t - lo) / (hi - lo);
    double du;
    if (kind == BumpKind::Smoothstep) {
      du = -6.0 * u * (1.0 - u);
    } else {
      const double fa = ramp(1.0 - u), fb = ramp(u);
      const double da = ramp_deriv(1.0 - u), db = ramp_deriv(u);
      const double denom = (fa + fb) * (fa + fb);
      du = (-da * fb - fa * db) / denom;
    }
    return du / (hi - lo);
  }

 private:
  static double ramp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
  static double ramp_deriv(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0;
  }
};

/// Parameters for one of the three radial model maps on C^n:
///
///   NormGraph (H): z -> (1 + lambda^2/|z|^2)^{1/2} z          on C^n \ 0
///   BlowUp    (F): H below delta, lambda*z beyond 1+epsilon,
///                  bump interpolation in between               on C^n \ 0
///   BlowDown  (G): nu*z inside the unit ball (nu = lambda/delta),
///                  (1 + nu^2/|z|^2)^{1/2} z beyond 1+epsilon   on C^n
///
/// The BlowUp profile is monotone only under delta^2 < lambda^2 epsilon / 2,
/// enforced at construction.
struct RadialMapSpec {
  MapKind kind = MapKind::NormGraph;
  double lambda = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;
  BumpKind bump = BumpKind::SmoothExp;

  static RadialMapSpec norm_graph(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    RadialMapSpec s;
    s.kind = MapKind::NormGraph;
    s.lambda = lambda;
    return s;
  }

  /// delta <= 0 selects the default lambda*sqrt(epsilon)/2, strictly inside
  /// the monotonicity constraint.
  static RadialMapSpec blow_up(double lambda, double epsilon,
                               double delta = 0.0,
                               BumpKind bump = BumpKind::SmoothExp) {
    if (lambda <= 0.0 || epsilon <= 0.0)
      throw std::invalid_argument("lambda and epsilon must be positive");
    if (delta <= 0.0) delta = 0.5 * lambda * std::sqrt(epsilon);
    if (!(delta * delta < lambda * lambda * epsilon / 2.0))
      throw std::invalid_argument("delta^2 < lambda^2 epsilon / 2 violated");
    if (delta >= 1.0 + epsilon)
      throw std::invalid_argument("delta must lie below the outer radius");
    RadialMapSpec s;
    s.kind = MapKind::BlowUp;
    s.lambda = lambda;
    s.epsilon = epsilon;
    s.delta = delta;
    s.bump = bump;
    return s;
  }

  static RadialMapSpec blow_down(double lambda, double delta, double epsilon,
                                 BumpKind bump = BumpKind::SmoothExp) {
    if (lambda <= 0.0 || delta <= 0.0 || epsilon <= 0.0)
      throw std::invalid_argument("lambda, delta, epsilon must be positive");
    RadialMapSpec s;
    s.kind = MapKind::BlowDown;
    s.lambda = lambda;
    s.epsilon = epsilon;
    s.delta = delta;
    s.bump = bump;
    return s;
  }

  double nu() const { return lambda / delta; }

  /// Radii where the defining formula switches branch.
  std::vector<double> branch_radii() const {
    switch (kind) {
      case MapKind::NormGraph: return {};
      case MapKind::BlowUp: return {delta, 1.0 + epsilon};
      case MapKind::BlowDown: return {1.0, 1.0 + epsilon};
    }
    return {};
  }

  bool zero_in_domain() const { return kind == MapKind::BlowDown; }

  BumpProfile bump_profile() const {
    switch (kind) {
      case MapKind::BlowUp: return BumpProfile{bump, delta, 1.0 + epsilon};
      case MapKind::BlowDown: return BumpProfile{bump, 1.0, 1.0 + epsilon};
      default: return BumpProfile{bump, 0.0, 1.0};
    }
  }

  /// |f(z)| as a function of t = |z|.
  double speed(double t) const {
    const double l = lambda;
    switch (kind) {
      case MapKind::NormGraph:
        return std::sqrt(t * t + l * l);
      case MapKind::BlowUp: {
        if (t < delta) return std::sqrt(t * t + l * l);
        if (t > 1.0 + epsilon) return l * t;
        const double b = bump_profile().value(t);
        const double inner = std::sqrt(delta * delta + l * l);
        const double outer = l * (1.0 + epsilon);
        return b * inner + (1.0 - b) * outer;
      }
      case MapKind::BlowDown: {
        const double v = nu();
        if (t <= 1.0) return v * t;
        if (t >= 1.0 + epsilon) return std::sqrt(t * t + v * v);
        const double b = bump_profile().value(t);
        const double r1 = 1.0 + epsilon;
        const double outer = std::sqrt(r1 * r1 + v * v);
        return b * v + (1.0 - b) * outer;
      }
    }
    return 0.0;
  }

  /// The scalar profile alpha with f(z) = alpha(|z|) z.
  double alpha(double t) const {
    if (kind == MapKind::BlowDown && t <= 1.0) return nu();
    if (t == 0.0) throw std::domain_error("radial profile undefined at 0");
    return speed(t) / t;
  }

  /// d(alpha)/dt; away from branch radii the formula is smooth.
  double alpha_deriv(double t) const {
    const double l = lambda;
    switch (kind) {
      case MapKind::NormGraph:
        return -l * l / (t * t * std::sqrt(t * t + l * l));
      case MapKind::BlowUp: {
        if (t < delta) return -l * l / (t * t * std::sqrt(t * t + l * l));
        if (t > 1.0 + epsilon) return 0.0;
        const BumpProfile p = bump_profile();
        const double inner = std::sqrt(delta * delta + l * l);
        const double outer = l * (1.0 + epsilon);
        const double r = p.value(t) * inner + (1.0 - p.value(t)) * outer;
        const double dr = p.deriv(t) * (inner - outer);
        return (dr * t - r) / (t * t);
      }
      case MapKind::BlowDown: {
        const double v = nu();
        if (t <= 1.0) return 0.0;
        if (t >= 1.0 + epsilon) return -v * v / (t * t * std::sqrt(t * t + v * v));
        const BumpProfile p = bump_profile();
        const double r1 = 1.0 + epsilon;
        const double outer = std::sqrt(r1 * r1 + v * v);
        const double r = p.value(t) * v + (1.0 - p.value(t)) * outer;
        const double dr = p.deriv(t) * (v - outer);
        return (dr * t - r) / (t * t);
      }
    }
    return 0.0;
  }
};

inline CVec eval_radial_map(const RadialMapSpec& spec, const CVec& z) {
  const double t = z.norm();
  if (t == 0.0) {
    if (!spec.zero_in_domain())
      throw std::domain_error("map is undefined at the origin");
    return CVec::Zero(z.size());
  }
  return spec.alpha(t) * z;
}

struct MonotoneReport {
  bool monotone = true;
  double min_slack = 0.0;  // min of |f(z2)| - |f(z1)| over checked pairs
  double t1 = 0.0, t2 = 0.0;
};

/// Samples radius pairs t1 <= t2 across all regimes and checks
/// |f|(t1) <= |f|(t2) + tol. A uniform sweep of adjacent radii is included,
/// which is what actually pins down the worst spot.
inline MonotoneReport check_monotone_radial(const RadialMapSpec& spec,
                                            int samples, std::uint64_t seed,
                                            double tol = 1e-12) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const double hi = 8.0 * (1.0 + std::max(spec.epsilon, 0.5));
  double lo = 1e-3;
  if (spec.kind == MapKind::BlowUp) lo = std::min(lo, spec.delta / 8.0);

  MonotoneReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  auto consider = [&](double a, double b) {
    const double slack = spec.speed(b) - spec.speed(a);
    if (slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.t1 = a;
      rep.t2 = b;
    }
  };

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    double a = rng.log_uniform(lo, hi);
    double b = rng.log_uniform(lo, hi);
    if (a > b) std::swap(a, b);
    consider(a, b);
  }
  const int sweep = 1024;
  double prev = lo;
  for (int i = 1; i <= sweep; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / sweep);
    consider(prev, t);
    prev = t;
  }
  rep.monotone = rep.min_slack >= -tol;
  return rep;
}

}  // namespace sympack::local
