#include "sympack/radial.hpp"
#include "sympack/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sympack;
using namespace sympack::local;

namespace {

CVec random_dir(Rng& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i)
    v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
  return v / v.norm();
}

}  // namespace

TEST_CASE("bump profiles interpolate monotonically between the knots") {
  for (BumpKind kind : {BumpKind::SmoothExp, BumpKind::Smoothstep}) {
    const BumpProfile b{kind, 0.5, 2.0};
    CHECK(b.value(0.2) == 1.0);
    CHECK(b.value(0.5) == 1.0);
    CHECK(b.value(2.0) == 0.0);
    CHECK(b.value(3.0) == 0.0);
    CHECK(b.deriv(0.4) == 0.0);
    CHECK(b.deriv(2.1) == 0.0);
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.5 + 1.5 * i / 100.0;
      const double v = b.value(t);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
    // derivative matches a centered difference in the interior
    for (double t : {0.9, 1.3, 1.7}) {
      const double h = 1e-6;
      const double fd = (b.value(t + h) - b.value(t - h)) / (2.0 * h);
      CHECK(std::abs(fd - b.deriv(t)) < 1e-7);
    }
  }
}

TEST_CASE("blow-up spec validates the radius constraint") {
  CHECK_THROWS_AS(RadialMapSpec::blow_up(1.0, 0.1, 0.5), std::invalid_argument);
  const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
  CHECK(spec.delta * spec.delta < spec.lambda * spec.lambda * spec.epsilon / 2.0);
  CHECK_THROWS_AS(RadialMapSpec::blow_up(-1.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(RadialMapSpec::norm_graph(-0.5), std::invalid_argument);
}

TEST_CASE("branch formulas at reference points") {
  Rng rng(3);
  SECTION("outer branch of the blow-up map scales by lambda") {
    const double eps = 0.25;
    const auto spec = RadialMapSpec::blow_up(2.0, eps);
    CVec z = (1.0 + 2.0 * eps) * random_dir(rng, 2);
    const CVec f = eval_radial_map(spec, z);
    CHECK((f - 2.0 * z).norm() < 1e-12);
  }
  SECTION("inner branch adds lambda^2 to the squared norm") {
    const auto spec = RadialMapSpec::blow_up(1.0, 0.25);
    CVec z = (0.5 * spec.delta) * random_dir(rng, 3);
    const CVec f = eval_radial_map(spec, z);
    CHECK(std::abs(f.squaredNorm() - (z.squaredNorm() + 1.0)) < 1e-12);
  }
  SECTION("norm graph does the same globally") {
    const auto spec = RadialMapSpec::norm_graph(1.5);
    CVec z = 2.7 * random_dir(rng, 2);
    CHECK(std::abs(eval_radial_map(spec, z).squaredNorm() -
                   (z.squaredNorm() + 2.25)) < 1e-12);
  }
  SECTION("blow-down contracts by nu inside the unit ball") {
    // nu = lambda / delta = 1/2
    const auto spec = RadialMapSpec::blow_down(1.0, 2.0, 0.25);
    CHECK(spec.nu() == 0.5);
    CVec z = 0.5 * random_dir(rng, 2);
    const CVec f = eval_radial_map(spec, z);
    CHECK((f - 0.5 * z).norm() < 1e-15);
  }
}

TEST_CASE("origin handling matches the domain of each map") {
  const CVec zero = CVec::Zero(2);
  CHECK_THROWS_AS(eval_radial_map(RadialMapSpec::norm_graph(1.0), zero),
                  std::domain_error);
  CHECK_THROWS_AS(eval_radial_map(RadialMapSpec::blow_up(1.0, 0.25), zero),
                  std::domain_error);
  CHECK(eval_radial_map(RadialMapSpec::blow_down(1.0, 1.0, 0.25), zero).norm() ==
        0.0);
}

TEST_CASE("profiles are continuous across branch radii") {
  Rng rng(7);
  const std::vector<RadialMapSpec> specs = {
      RadialMapSpec::blow_up(1.0, 0.25),
      RadialMapSpec::blow_up(0.7, 0.5, 0.2, BumpKind::Smoothstep),
      RadialMapSpec::blow_down(1.0, 0.5, 0.25),
      RadialMapSpec::blow_down(2.0, 1.0, 0.1),
  };
  for (const auto& spec : specs) {
    for (double r : spec.branch_radii()) {
      for (int ray = 0; ray < 50; ++ray) {
        const CVec dir = random_dir(rng, 2);
        const CVec lo = eval_radial_map(spec, (r * (1.0 - 1e-9)) * dir);
        const CVec hi = eval_radial_map(spec, (r * (1.0 + 1e-9)) * dir);
        CHECK((lo - hi).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("radial maps commute with conjugation exactly") {
  Rng rng(13);
  const auto spec = RadialMapSpec::blow_up(1.3, 0.4);
  for (int trial = 0; trial < 25; ++trial) {
    const CVec z = rng.log_uniform(0.05, 4.0) * random_dir(rng, 3);
    const CVec a = eval_radial_map(spec, z.conjugate());
    const CVec b = eval_radial_map(spec, z).conjugate();
    CHECK((a - b).norm() == 0.0);
  }
}

TEST_CASE("monotonicity of the model maps") {
  CHECK(check_monotone_radial(RadialMapSpec::blow_up(1.0, 0.25), 256, 42)
            .monotone);
  CHECK(check_monotone_radial(RadialMapSpec::norm_graph(1.0), 256, 42).monotone);
  CHECK(check_monotone_radial(RadialMapSpec::blow_down(2.0, 1.0, 0.1), 256, 42)
            .monotone);

  SECTION("violating the radius constraint breaks monotonicity") {
    RadialMapSpec bad;  // bypasses the validating constructor
    bad.kind = MapKind::BlowUp;
    bad.lambda = 1.0;
    bad.epsilon = 0.1;
    bad.delta = 0.5;  // delta^2 = 0.25 >= lambda^2 eps / 2 = 0.05
    const auto rep = check_monotone_radial(bad, 512, 42);
    CHECK_FALSE(rep.monotone);
    CHECK(rep.min_slack < 0.0);
    // witness sits in the interpolation region where the profile dips
    CHECK(rep.t1 >= bad.delta);
    CHECK(rep.t2 <= 1.0 + bad.epsilon + 1e-9);
  }
}

TEST_CASE("alpha derivative matches finite differences away from corners") {
  const std::vector<RadialMapSpec> specs = {
      RadialMapSpec::norm_graph(0.8),
      RadialMapSpec::blow_up(1.0, 0.25),
      RadialMapSpec::blow_down(1.0, 0.5, 0.25),
  };
  for (const auto& spec : specs) {
    for (double t : {0.1, 0.6, 1.1, 1.9, 3.0}) {
      bool near_corner = false;
      for (double r : spec.branch_radii())
        if (std::abs(t - r) < 0.05) near_corner = true;
      if (near_corner) continue;
      if (spec.kind != MapKind::BlowDown && t == 0.0) continue;
      const double h = 1e-6;
      const double fd = (spec.alpha(t + h) - spec.alpha(t - h)) / (2.0 * h);
      CHECK(std::abs(fd - spec.alpha_deriv(t)) < 1e-5);
    }
  }
}
