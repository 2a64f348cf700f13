#pragma once

#include "sympack/pullback.hpp"
#include "sympack/rng.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sympack::local {

struct Witness {
  CVec z, v, w;
  double value = 0.0;
};

struct CheckReport {
  std::string check;
  std::string region;
  int samples = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<Witness> worst;
};

namespace detail {

inline CVec random_unit_vector(Rng& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i)
    v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
  const double nrm = v.norm();
  return nrm > 0.0 ? CVec(v / nrm) : random_unit_vector(rng, n);
}

/// Point with |z| log-uniform in [r0, r1], direction uniform-ish, kept away
/// from the map's branch radii so exact differentials apply.
inline CVec sample_point(Rng& rng, int n, double r0, double r1,
                         const std::vector<double>& avoid_radii) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double r = rng.log_uniform(r0, r1);
    bool ok = true;
    for (double a : avoid_radii)
      if (std::abs(r - a) < 1e-3 * std::max(1.0, a)) ok = false;
    if (!ok) continue;
    CVec dir = random_unit_vector(rng, n);
    return r * dir;
  }
  throw std::runtime_error("sampling region too thin around branch radii");
}

inline void track(CheckReport& rep, double residual, const CVec& z,
                  const CVec& v, const CVec& w, double value) {
  if (!rep.worst || residual > rep.max_residual) {
    rep.max_residual = residual;
    rep.worst = Witness{z, v, w, value};
  }
}

}  // namespace detail

/// Residuals of the pullback identity H*omega0 = omega0 + lambda^2 p*sigma
/// at seeded samples (z, v, w).
inline CheckReport verify_calculation_identity(
    double lambda, int n, int samples, std::uint64_t seed, double tol,
    JacobianMode mode = JacobianMode::FiniteDifference,
    double h = kDefaultFdStep) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  const RadialMapSpec spec = RadialMapSpec::norm_graph(lambda);
  CheckReport rep;
  rep.check = "calculation-identity";
  rep.region = "0.3 <= |z| <= 3";
  rep.samples = samples;
  rep.tol = tol;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const CVec z = detail::sample_point(rng, n, 0.3, 3.0, {});
    const CVec v = detail::random_unit_vector(rng, n);
    const CVec w = detail::random_unit_vector(rng, n);
    const double lhs = pullback_omega0(spec, z, v, w, mode, h);
    const double rhs =
        omega0(v, w) + lambda * lambda * fs_sigma(z, v, w);
    detail::track(rep, std::abs(lhs - rhs), z, v, w, lhs);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

enum class FormCheck {
  Tame,
  Compatible,
  AntiInvariant,
  LagrangianRealLocus,
  EqualsScaledOmega0,
  EqualsRho,
};

inline const char* form_check_name(FormCheck c) {
  switch (c) {
    case FormCheck::Tame: return "tame";
    case FormCheck::Compatible: return "compatible";
    case FormCheck::AntiInvariant: return "anti-invariant";
    case FormCheck::LagrangianRealLocus: return "lagrangian-real-locus";
    case FormCheck::EqualsScaledOmega0: return "equals-scaled-omega0";
    case FormCheck::EqualsRho: return "equals-rho";
  }
  return "?";
}

struct FormCheckSpec {
  FormCheck check;
  double scale = 1.0;   // EqualsScaledOmega0: compare against scale * omega0
  double kappa = 1.0;   // EqualsRho parameters
  double lambda = 1.0;
};

/// Runs one property check for a form over a radial annulus [r0, r1].
/// Taming is reported as the most negative sampled omega(v, iv) (residual 0
/// when positive); the other checks report absolute residuals.
inline CheckReport verify_form_property(const FormEval& form, int n,
                                        double r0, double r1,
                                        const FormCheckSpec& what, int samples,
                                        std::uint64_t seed, double tol,
                                        const std::vector<double>& avoid = {}) {
  if (r0 <= 0.0 || r1 <= r0)
    throw std::invalid_argument("region must satisfy 0 < r0 < r1");
  CheckReport rep;
  rep.check = form_check_name(what.check);
  rep.region = std::to_string(r0) + " <= |z| <= " + std::to_string(r1);
  rep.samples = samples;
  rep.tol = tol;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    CVec z = detail::sample_point(rng, n, r0, r1, avoid);
    CVec v = detail::random_unit_vector(rng, n);
    CVec w = detail::random_unit_vector(rng, n);
    switch (what.check) {
      case FormCheck::Tame: {
        // residual 0 when omega(v, iv) > 0, else past tolerance by the defect
        const double val = form(z, v, times_i(v));
        const double res = val > 0.0 ? 0.0 : tol + std::max(0.0, -val);
        detail::track(rep, res, z, v, times_i(v), val);
        break;
      }
      case FormCheck::Compatible: {
        const double a = form(z, times_i(v), times_i(w));
        const double b = form(z, v, w);
        detail::track(rep, std::abs(a - b), z, v, w, a);
        break;
      }
      case FormCheck::AntiInvariant: {
        const double pulled = form(conj_point(z), v.conjugate(), w.conjugate());
        const double val = form(z, v, w);
        detail::track(rep, std::abs(pulled + val), z, v, w, val);
        break;
      }
      case FormCheck::LagrangianRealLocus: {
        z = z.real().cast<std::complex<double>>();
        if (z.norm() == 0.0) continue;
        v = v.real().cast<std::complex<double>>();
        w = w.real().cast<std::complex<double>>();
        const double val = form(z, v, w);
        detail::track(rep, std::abs(val), z, v, w, val);
        break;
      }
      case FormCheck::EqualsScaledOmega0: {
        const double val = form(z, v, w);
        const double ref = what.scale * omega0(v, w);
        detail::track(rep, std::abs(val - ref), z, v, w, val);
        break;
      }
      case FormCheck::EqualsRho: {
        const double val = form(z, v, w);
        const double ref = what.kappa * what.kappa * omega0(v, w) +
                           what.lambda * what.lambda * fs_sigma(z, v, w);
        detail::track(rep, std::abs(val - ref), z, v, w, val);
        break;
      }
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

/// Taming and i-invariance of f*omega0 for a monotone radial map, sampled
/// away from branch corners.
inline std::vector<CheckReport> verify_radial_kahler(const RadialMapSpec& spec,
                                                     int n, int samples,
                                                     std::uint64_t seed,
                                                     double tol) {
  const MonotoneReport mono = check_monotone_radial(spec, 256, seed);
  if (!mono.monotone)
    throw std::invalid_argument("radial map is not monotone; pullback need not tame i");
  FormEval form = [spec](const CVec& z, const CVec& v, const CVec& w) {
    return pullback_omega0(spec, z, v, w, JacobianMode::Exact);
  };
  const double r1 = 3.0 * (1.0 + spec.epsilon);
  const auto avoid = spec.branch_radii();
  std::vector<CheckReport> out;
  out.push_back(verify_form_property(form, n, 0.05, r1,
                                     {FormCheck::Tame}, samples, seed, tol,
                                     avoid));
  out.push_back(verify_form_property(form, n, 0.05, r1,
                                     {FormCheck::Compatible}, samples, seed + 1,
                                     tol, avoid));
  return out;
}

/// Total mass of the Fubini-Study form over the line CP^1, computed by a
/// midpoint rule on the affine chart in log-polar coordinates, plus a decay
/// extrapolation for the tail beyond R (the integrand falls off like r^-4).
inline double fs_quadrature_cp1(int nr = 200, int ntheta = 200,
                                double r_max = 100.0, double r_min = 1e-4) {
  double total = 0.0;
  const double t0 = std::log(r_min), t1 = std::log(r_max);
  const double dt = (t1 - t0) / nr;
  const double dth = 2.0 * kPi / ntheta;
  CVec z(2), vu(2), vv(2);
  vu << 0.0, 1.0;
  vv << 0.0, std::complex<double>(0.0, 1.0);
  double f_at_rmax = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double t = t0 + (i + 0.5) * dt;
    const double r = std::exp(t);
    double ring = 0.0;
    for (int j = 0; j < ntheta; ++j) {
      const double th = (j + 0.5) * dth;
      z << 1.0, std::polar(r, th);
      ring += fs_sigma(z, vu, vv);
    }
    total += ring * r * r * dt * dth;  // dA = r dr dtheta, dr = r dt
    if (i == nr - 1) f_at_rmax = ring * dth * r;
  }
  // integrand ~ c/r^3 per unit radius at large r: tail = f(R) * R / 2
  total += f_at_rmax * r_max / 2.0;
  return total;
}

}  // namespace sympack::local
