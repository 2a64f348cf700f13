#include "sympack/pullback.hpp"
#include "sympack/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sympack;
using namespace sympack::local;

namespace {

CVec basis(int n, int i) {
  CVec v = CVec::Zero(n);
  v(i) = 1.0;
  return v;
}

CVec random_dir(Rng& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i)
    v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
  return v / v.norm();
}

}  // namespace

TEST_CASE("flat form normalization and antisymmetry") {
  const CVec e1 = basis(2, 0);
  CHECK(omega0(e1, times_i(e1)) == Catch::Approx(1.0 / kPi));
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const CVec v = random_dir(rng, 3), w = random_dir(rng, 3);
    CHECK(omega0(v, w) == Catch::Approx(-omega0(w, v)).margin(1e-15));
    CHECK(omega0(v, times_i(v)) > 0.0);
  }
}

TEST_CASE("projectivized form: kernel, scaling, reference value") {
  Rng rng(2);
  const int n = 2;
  CVec z(2);
  z << 1.0, 0.0;
  const CVec e2 = basis(2, 1);
  CHECK(fs_sigma(z, e2, times_i(e2)) == Catch::Approx(1.0 / kPi));

  for (int trial = 0; trial < 25; ++trial) {
    const CVec zz = rng.log_uniform(0.2, 5.0) * random_dir(rng, n);
    const CVec w = random_dir(rng, n);
    // vertical directions are in the kernel
    CHECK(std::abs(fs_sigma(zz, zz, w)) < 1e-13);
    CHECK(std::abs(fs_sigma(zz, times_i(zz), w)) < 1e-13);
    // scale invariance
    const CVec v = random_dir(rng, n);
    const double t = rng.uniform(0.5, 3.0);
    CHECK(std::abs(fs_sigma(zz, v, w) -
                   fs_sigma((t * zz).eval(), (t * v).eval(), (t * w).eval())) <
          1e-9);
  }
  CHECK_THROWS_AS(fs_sigma(CVec::Zero(2), e2, e2), std::domain_error);
}

TEST_CASE("the zero-weight norm graph is the identity") {
  const auto spec = RadialMapSpec::norm_graph(0.0);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CVec z = random_dir(rng, 2) * rng.uniform(0.3, 2.0);
    const CVec v = random_dir(rng, 2), w = random_dir(rng, 2);
    CHECK(pullback_omega0(spec, z, v, w) ==
          Catch::Approx(omega0(v, w)).margin(1e-12));
  }
}

TEST_CASE("finite differences agree with the closed-form differential") {
  const auto spec = RadialMapSpec::norm_graph(1.0);
  CVec z(2);
  z << 1.0, 0.0;
  const CVec v = basis(2, 1);
  const CVec w = times_i(v);
  const double exact = pullback_omega0(spec, z, v, w, JacobianMode::Exact);
  const double fd =
      pullback_omega0(spec, z, v, w, JacobianMode::FiniteDifference, 1e-5);
  CHECK(std::abs(exact - fd) < 1e-6);
  // reference value: (1 + lambda^2) / pi at |z| = 1 on a horizontal 2-plane
  CHECK(exact == Catch::Approx(2.0 / kPi).margin(1e-12));

  Rng rng(4);
  const auto f_spec = RadialMapSpec::blow_up(1.0, 0.5);
  for (int trial = 0; trial < 30; ++trial) {
    CVec zz = random_dir(rng, 2) * rng.log_uniform(0.05, 3.0);
    bool near_corner = false;
    for (double r : f_spec.branch_radii())
      if (std::abs(zz.norm() - r) < 2e-3) near_corner = true;
    if (near_corner) continue;
    const CVec vv = random_dir(rng, 2), ww = random_dir(rng, 2);
    const double a = pullback_omega0(f_spec, zz, vv, ww, JacobianMode::Exact);
    const double b = pullback_omega0(f_spec, zz, vv, ww,
                                     JacobianMode::FiniteDifference, 1e-5);
    CHECK(std::abs(a - b) < 1e-5);
  }
}

TEST_CASE("exact mode falls back to differences at branch corners") {
  const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
  Rng rng(14);
  for (double r : spec.branch_radii()) {
    const CVec dir = random_dir(rng, 2);
    const CVec z = r * dir;  // exactly on the corner
    const CVec v = random_dir(rng, 2), w = random_dir(rng, 2);
    const double at_corner = pullback_omega0(spec, z, v, w, JacobianMode::Exact);
    const double beside =
        pullback_omega0(spec, (r * 1.01) * dir, v, w, JacobianMode::Exact);
    CHECK(std::isfinite(at_corner));
    // the profile is continuous, so nearby values stay close
    CHECK(std::abs(at_corner - beside) < 0.2);
  }
}

TEST_CASE("form evaluations are antisymmetric in the tangent pair") {
  Rng rng(5);
  const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
  const auto tt = tau_tilde_form(spec);
  for (int trial = 0; trial < 20; ++trial) {
    const CVec z = random_dir(rng, 2) * rng.log_uniform(0.05, 3.0);
    const CVec v = random_dir(rng, 2), w = random_dir(rng, 2);
    CHECK(std::abs(tt(z, v, w) + tt(z, w, v)) < 1e-12);
  }
}

TEST_CASE("difference of pulled-back and flat forms is horizontal") {
  const auto spec = RadialMapSpec::norm_graph(1.0);
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const CVec z = random_dir(rng, 3) * rng.log_uniform(0.3, 3.0);
    const CVec w = random_dir(rng, 3);
    for (const CVec& vertical : {CVec(z), CVec(times_i(z))}) {
      const double diff = pullback_omega0(spec, z, vertical, w) -
                          omega0(vertical, w);
      CHECK(std::abs(diff) < 1e-10);
    }
  }
}

TEST_CASE("pullback identity against the finite-difference oracle") {
  auto rep = verify_calculation_identity(1.0, 2, 100, 42, 1e-6);
  CHECK(rep.pass);
  rep = verify_calculation_identity(0.5, 3, 100, 42, 1e-6);
  CHECK(rep.pass);
  // degenerate weight: the map is the identity and the residual is only
  // the finite-difference noise of the flat form
  rep = verify_calculation_identity(0.0, 2, 50, 42, 1e-9);
  CHECK(rep.pass);
}

TEST_CASE("unit mass of the line form by quadrature") {
  const double total = fs_quadrature_cp1();
  CHECK(std::abs(total - 1.0) < 1e-3);
}

TEST_CASE("model form properties on sampled annuli") {
  const int n = 2;
  SECTION("blow-up form equals the scaled flat form outside the profile") {
    const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
    const auto tt = tau_tilde_form(spec);
    const auto rep = verify_form_property(
        tt, n, 1.3, 5.0, {FormCheck::EqualsScaledOmega0, 1.0}, 100, 42, 1e-9);
    CHECK(rep.pass);
  }
  SECTION("blow-up form matches the model form inside") {
    const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
    const auto tt = tau_tilde_form(spec);
    FormCheckSpec what{FormCheck::EqualsRho};
    what.kappa = 1.0;
    what.lambda = 1.0;
    const auto rep = verify_form_property(tt, n, spec.delta / 8.0,
                                          spec.delta * 0.98, what, 100, 42,
                                          1e-9);
    CHECK(rep.pass);
  }
  SECTION("blow-down form is the scaled flat form on the unit ball") {
    const auto spec = RadialMapSpec::blow_down(1.0, 0.5, 0.25);
    const auto tau = tau_form(spec);
    const auto rep = verify_form_property(
        tau, n, 0.05, 0.99, {FormCheck::EqualsScaledOmega0, 1.0}, 100, 42,
        1e-9);
    CHECK(rep.pass);
  }
  SECTION("blow-down form matches the rescaled model form outside") {
    const auto spec = RadialMapSpec::blow_down(1.0, 0.5, 0.25);
    const auto tau = tau_form(spec);
    FormCheckSpec what{FormCheck::EqualsRho};
    what.kappa = 0.5;
    what.lambda = 1.0;
    const auto rep =
        verify_form_property(tau, n, 1.26, 5.0, what, 100, 42, 1e-9);
    CHECK(rep.pass);
  }
  SECTION("anti-invariance and the real locus") {
    const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
    const auto tt = tau_tilde_form(spec);
    const auto avoid = spec.branch_radii();
    CHECK(verify_form_property(tt, n, 0.05, 4.0, {FormCheck::AntiInvariant},
                               100, 7, 1e-10, avoid)
              .pass);
    CHECK(verify_form_property(tt, n, 0.05, 4.0,
                               {FormCheck::LagrangianRealLocus}, 100, 7, 1e-12,
                               avoid)
              .pass);
  }
  SECTION("the model form is tame, compatible, and anti-invariant") {
    const auto rho = rho_form(1.0, 0.7);
    for (auto check : {FormCheck::Tame, FormCheck::Compatible,
                       FormCheck::AntiInvariant,
                       FormCheck::LagrangianRealLocus}) {
      CHECK(verify_form_property(rho, n, 0.05, 10.0, {check}, 100, 11, 1e-10)
                .pass);
    }
  }
}

TEST_CASE("pullbacks of monotone radial maps stay compatible with i") {
  for (const auto& spec :
       {RadialMapSpec::norm_graph(1.0), RadialMapSpec::norm_graph(0.0),
        RadialMapSpec::blow_down(2.0, 1.0, 0.1)}) {
    const auto reports = verify_radial_kahler(spec, 2, 100, 42, 1e-7);
    for (const auto& rep : reports) CHECK(rep.pass);
  }

  RadialMapSpec bad;
  bad.kind = MapKind::BlowUp;
  bad.lambda = 1.0;
  bad.epsilon = 0.1;
  bad.delta = 0.5;
  CHECK_THROWS_AS(verify_radial_kahler(bad, 2, 10, 42, 1e-7),
                  std::invalid_argument);
}
