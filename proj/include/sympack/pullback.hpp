#pragma once

#include "sympack/radial.hpp"

#include <complex>
#include <functional>

namespace sympack::local {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Forms on C^n are evaluated on tangent vectors represented as complex
// n-vectors (the tangent space of C^n at any point). The flat form is
// normalized so that the unit complex line has total area 1:
//
//   omega0 = (1/pi) sum dx_j ^ dy_j.
//
// With this scaling the blow-up pullback identity carries the coefficient
// lambda^2 against the unit-normalized Fubini-Study form below.

/// omega0(v, w).
inline double omega0(const CVec& v, const CVec& w) {
  return v.dot(w).imag() / kPi;
}

/// Pullback p*sigma of the Fubini-Study form on CP^{n-1}, normalized to
/// unit total area on each line, through p : C^n \ 0 -> CP^{n-1}.
/// Vertical vectors (the real span of z and iz) are in the kernel, and the
/// value is invariant under (z,v,w) -> (tz,tv,tw).
inline double fs_sigma(const CVec& z, const CVec& v, const CVec& w) {
  const double n2 = z.squaredNorm();
  if (n2 == 0.0) throw std::domain_error("fs_sigma undefined at the origin");
  // In Hermitian-pairing notation <a,b> = sum a_j conj(b_j):
  //   p*sigma(v,w) = -(1/pi) [ Im<v,w>/|z|^2 - Im(<v,z><z,w>)/|z|^4 ].
  const double im_vw = -v.dot(w).imag();
  const double im_mixed = (z.dot(v) * w.dot(z)).imag();
  return -(im_vw / n2 - im_mixed / (n2 * n2)) / kPi;
}

enum class JacobianMode { Exact, FiniteDifference };

inline constexpr double kDefaultFdStep = 1e-5;

/// Differential of a radial map applied to a tangent vector. Exact mode
/// uses d f(z) v = alpha v + alpha'(|z|) (Re<v,z>/|z|) z and silently falls
/// back to finite differences at branch radii, where the profile derivative
/// has no classical value.
inline CVec apply_differential(const RadialMapSpec& spec, const CVec& z,
                               const CVec& v,
                               JacobianMode mode = JacobianMode::Exact,
                               double h = kDefaultFdStep) {
  const double t = z.norm();
  if (t == 0.0 && !spec.zero_in_domain())
    throw std::domain_error("map is undefined at the origin");
  if (mode == JacobianMode::Exact) {
    bool corner = false;
    for (double r : spec.branch_radii())
      if (std::abs(t - r) <= 1e-9 * std::max(1.0, r)) corner = true;
    if (!corner && t > 0.0) {
      const double a = spec.alpha(t);
      const double da = spec.alpha_deriv(t);
      const double radial = z.dot(v).real();  // Re<v,z>
      return a * v + (da * radial / t) * z;
    }
  }
  return (eval_radial_map(spec, z + h * v) - eval_radial_map(spec, z - h * v)) /
         (2.0 * h);
}

/// (f*omega0)(v, w) at z for the radial map f described by spec.
inline double pullback_omega0(const RadialMapSpec& spec, const CVec& z,
                              const CVec& v, const CVec& w,
                              JacobianMode mode = JacobianMode::Exact,
                              double h = kDefaultFdStep) {
  const CVec dv = apply_differential(spec, z, v, mode, h);
  const CVec dw = apply_differential(spec, z, w, mode, h);
  return omega0(dv, dw);
}

/// A 2-form on (a subset of) C^n presented by an evaluation rule.
using FormEval = std::function<double(const CVec&, const CVec&, const CVec&)>;

/// The model form kappa^2 omega0 + lambda^2 p*sigma on C^n \ 0.
inline FormEval rho_form(double kappa, double lambda) {
  return [kappa, lambda](const CVec& z, const CVec& v, const CVec& w) {
    return kappa * kappa * omega0(v, w) + lambda * lambda * fs_sigma(z, v, w);
  };
}

/// The blow-up model form F*omega0 (descends through the bundle projection
/// away from the zero section).
inline FormEval tau_tilde_form(const RadialMapSpec& spec,
                               JacobianMode mode = JacobianMode::Exact,
                               double h = kDefaultFdStep) {
  if (spec.kind != MapKind::BlowUp)
    throw std::invalid_argument("tau_tilde requires a blow-up map spec");
  return [spec, mode, h](const CVec& z, const CVec& v, const CVec& w) {
    return pullback_omega0(spec, z, v, w, mode, h);
  };
}

/// The blow-down model form delta^2 G*omega0 on C^n.
inline FormEval tau_form(const RadialMapSpec& spec,
                         JacobianMode mode = JacobianMode::Exact,
                         double h = kDefaultFdStep) {
  if (spec.kind != MapKind::BlowDown)
    throw std::invalid_argument("tau requires a blow-down map spec");
  const double d2 = spec.delta * spec.delta;
  return [spec, d2, mode, h](const CVec& z, const CVec& v, const CVec& w) {
    return d2 * pullback_omega0(spec, z, v, w, mode, h);
  };
}

inline CVec conj_point(const CVec& z) { return z.conjugate(); }

/// Multiplication by i on a tangent vector.
inline CVec times_i(const CVec& v) {
  return std::complex<double>(0.0, 1.0) * v;
}

}  // namespace sympack::local
