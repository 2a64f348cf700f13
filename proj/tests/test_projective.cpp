#include "sympack/projective.hpp"
#include "sympack/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sympack;
using namespace sympack::lattice;

TEST_CASE("points normalize to coprime integer triples") {
  CHECK(make_point(2, 4, 6) == make_point(1, 2, 3));
  CHECK(make_point(-1, 2, 3) == make_point(1, -2, -3));
  CHECK(make_point({Rat(1, 2), Rat(1, 3), Rat(0)}) == make_point(3, 2, 0));
  CHECK_THROWS_AS(make_point(0, 0, 0), std::invalid_argument);
}

TEST_CASE("quadratic transformation basics") {
  CHECK(quadratic_transform(make_point(1, 1, 1)) == make_point(1, 1, 1));
  CHECK(quadratic_transform(make_point(1, 2, 3)) == make_point(6, 3, 2));
  CHECK_THROWS_AS(quadratic_transform(make_point(1, 0, 0)), std::domain_error);

  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Rat, 3> c;
    for (auto& v : c) {
      long long num = 0;
      while (num == 0) num = static_cast<long long>(rng.below(21)) - 10;
      v = Rat(num, 1 + static_cast<long long>(rng.below(7)));
    }
    const auto p = make_point(c);
    CHECK(quadratic_transform(quadratic_transform(p)) == p);
  }
}

TEST_CASE("centered transformation") {
  const std::array<ProjPoint, 3> triangle = {
      make_point(1, 0, 0), make_point(0, 1, 0), make_point(0, 0, 1)};
  SECTION("coordinate triangle reduces to the standard map") {
    CHECK(centered_quadratic_transform(make_point(1, 2, 3), triangle) ==
          make_point(6, 3, 2));
  }
  SECTION("collinear centers are rejected") {
    const std::array<ProjPoint, 3> bad = {
        make_point(1, 0, 0), make_point(0, 1, 0), make_point(1, 1, 0)};
    CHECK_THROWS_AS(centered_quadratic_transform(make_point(1, 2, 3), bad),
                    std::invalid_argument);
  }
  SECTION("indeterminacy points of the centered map") {
    const std::array<ProjPoint, 3> centers = {
        make_point(1, 1, 1), make_point(1, 2, 4), make_point(1, 3, 9)};
    // the centers themselves sit on two exceptional lines each
    CHECK_THROWS_AS(centered_quadratic_transform(centers[0], centers),
                    std::domain_error);
  }
  SECTION("involutive off the exceptional lines") {
    const std::array<ProjPoint, 3> centers = {
        make_point(1, 1, 0), make_point(0, 1, 1), make_point(1, 0, 3)};
    Rng rng(9);
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = make_point(1 + static_cast<long long>(rng.below(30)),
                                1 + static_cast<long long>(rng.below(30)),
                                1 + static_cast<long long>(rng.below(30)));
      try {
        const auto q = centered_quadratic_transform(
            centered_quadratic_transform(p, centers), centers);
        CHECK(q == p);
      } catch (const std::domain_error&) {
        // p on an exceptional line; not part of the property
      }
    }
  }
}

TEST_CASE("general position verdicts") {
  SECTION("fewer than three points always pass") {
    const auto cfg = Configuration::of({make_point(1, 2, 3)});
    CHECK(general_position_test(cfg).pass);
    const auto cfg2 =
        Configuration::of({make_point(1, 0, 0), make_point(0, 1, 0)});
    CHECK(general_position_test(cfg2).pass);
  }
  SECTION("collinear triple fails with a witness") {
    const auto cfg = Configuration::of(
        {make_point(1, 0, 0), make_point(0, 1, 0), make_point(1, 1, 0)});
    const auto rep = general_position_test(cfg);
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason == "three points collinear");
    CHECK(rep.witness == std::vector<int>{0, 1, 2});
  }
  SECTION("four reference points pass the audit at depth three") {
    const auto cfg = Configuration::of(
        {make_point(1, 0, 0), make_point(0, 1, 0), make_point(0, 0, 1),
         make_point(1, 1, 1)});
    GenPosOptions opts;
    opts.audit_depth = 3;
    const auto rep = general_position_test(cfg, opts);
    CHECK(rep.pass);
    CHECK(rep.audit_nodes > 0);
  }
  SECTION("six points on a conic fail") {
    std::vector<ProjPoint> pts;
    for (long long t = 0; t < 6; ++t) pts.push_back(make_point(1, t, t * t));
    const auto rep = general_position_test(Configuration::of(pts));
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason == "six points on a conic");
  }
  SECTION("seven points plus a node on a nodal cubic fail the rank test") {
    // y^2 z = x^2 (x + z), rational points (t^2-1 : t(t^2-1) : 1), node at
    // the origin chart point [0:0:1]
    std::vector<ProjPoint> pts;
    for (long long t = 2; t <= 8; ++t)
      pts.push_back(make_point(t * t - 1, t * (t * t - 1), 1));
    pts.push_back(make_point(0, 0, 1));
    const auto rep = general_position_test(Configuration::of(pts));
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason ==
          "cubic through seven points with a double point at the eighth");
    CHECK(rep.witness == std::vector<int>{7});
  }
  SECTION("duplicates are rejected at construction") {
    CHECK_THROWS_AS(
        Configuration::of({make_point(1, 2, 3), make_point(2, 4, 6)}),
        std::invalid_argument);
  }
}

TEST_CASE("verdict is invariant under permutation and projectivities") {
  const std::vector<ProjPoint> base = {
      make_point(1, 0, 0), make_point(0, 1, 0), make_point(0, 0, 1),
      make_point(1, 1, 1), make_point(1, 2, 4)};
  GenPosOptions opts;
  opts.audit_depth = 1;
  const bool verdict = general_position_test(Configuration{base}, opts).pass;

  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    // random integer projectivity with nonzero determinant
    std::array<std::array<Int, 3>, 3> m;
    do {
      for (auto& row : m)
        for (auto& v : row)
          v = static_cast<long long>(rng.below(11)) - 5;
    } while (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]) ==
             0);
    std::vector<ProjPoint> moved;
    for (const auto& p : base) {
      std::array<Int, 3> out{};
      for (int i = 0; i < 3; ++i)
        out[i] = m[i][0] * p.x[0] + m[i][1] * p.x[1] + m[i][2] * p.x[2];
      moved.push_back(normalize_point(out));
    }
    // random permutation
    for (size_t i = moved.size(); i > 1; --i)
      std::swap(moved[i - 1], moved[rng.below(i)]);
    CHECK(general_position_test(Configuration{moved}, opts).pass == verdict);
  }
}

TEST_CASE("perturbation into general position") {
  SECTION("already-general configurations are returned unchanged") {
    const auto cfg = Configuration::of(
        {make_point(1, 0, 0), make_point(0, 1, 0), make_point(0, 0, 1),
         make_point(1, 1, 1)});
    const auto out = perturb_to_general_position(cfg, Rat(1, 100), 7);
    CHECK(out.ok);
    CHECK(out.rounds == 0);
    CHECK(out.cfg.pts == cfg.pts);
  }
  SECTION("three collinear points move less than the budget") {
    const auto cfg = Configuration::of(
        {make_point(1, 0, 0), make_point(1, 1, 0), make_point(1, 2, 0)});
    const auto out = perturb_to_general_position(cfg, Rat(1, 100), 7);
    REQUIRE(out.ok);
    CHECK(out.max_moved < Rat(1, 100));
    CHECK(general_position_test(out.cfg).pass);
  }
  SECTION("eight points on a conic") {
    std::vector<ProjPoint> pts;
    for (long long t = 0; t < 8; ++t)
      pts.push_back(make_point(2, 2 * t, t * t));
    GenPosOptions opts;
    opts.audit_depth = 1;
    const auto out = perturb_to_general_position(Configuration::of(pts),
                                                 Rat(1, 50), 11, opts);
    REQUIRE(out.ok);
    CHECK(out.max_moved < Rat(1, 50));
    CHECK(general_position_test(out.cfg, opts).pass);
  }
  SECTION("invalid radius") {
    const auto cfg = Configuration::of({make_point(1, 0, 0)});
    CHECK_THROWS_AS(perturb_to_general_position(cfg, Rat(0), 7),
                    std::invalid_argument);
  }
}
