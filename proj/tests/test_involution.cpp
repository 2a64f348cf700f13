#include "sympack/involution.hpp"
#include "sympack/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sympack;
using namespace sympack::linalg;

namespace {

RatMat rat_from_rows(int dim, const std::vector<std::vector<long long>>& rows) {
  RatMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("conjugation normalizes to the identity") {
  const RatMat psi = normalize_involution_exact(rat_conjugation(4));
  CHECK(psi == RatMat::identity(4));
}

TEST_CASE("the planar shear example") {
  // phi(x, y) = (x + 2y, -y)
  const RatMat phi = rat_from_rows(2, {{1, 2}, {0, -1}});
  const RatMat psi = normalize_involution_exact(phi);
  const RatMat expected = rat_from_rows(2, {{1, 1}, {0, 1}});
  CHECK(psi == expected);
  CHECK(psi.det() == 1);
  CHECK(psi * phi == rat_conjugation(2) * psi);
}

TEST_CASE("rejects maps that are not admissible") {
  SECTION("identity fixes everything") {
    CHECK_THROWS_AS(normalize_involution_exact(RatMat::identity(2)),
                    std::invalid_argument);
  }
  SECTION("fixed space is not R^n") {
    // phi(x, y) = (-x, y) fixes the y-axis instead
    const RatMat phi = rat_from_rows(2, {{-1, 0}, {0, 1}});
    CHECK_THROWS_AS(normalize_involution_exact(phi), std::invalid_argument);
  }
  SECTION("involution but not anti-symplectic") {
    // [[I, B], [0, -I]] with B non-symmetric
    const RatMat phi =
        rat_from_rows(4, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0},
                          {0, 0, 0, -1}});
    CHECK_THROWS_AS(normalize_involution_exact(phi), std::invalid_argument);
  }
  SECTION("not an involution") {
    const RatMat phi = rat_from_rows(2, {{1, 1}, {0, 1}});
    CHECK_THROWS_AS(normalize_involution_exact(phi), std::invalid_argument);
  }
}

TEST_CASE("random rational involutions normalize exactly") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int dim = 2 * n;
    RatMat phi(dim, dim);
    for (int i = 0; i < n; ++i) phi(i, i) = 1;
    for (int i = n; i < dim; ++i) phi(i, i) = -1;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Rat v(static_cast<long long>(rng.below(15)) - 7,
                    1 + static_cast<long long>(rng.below(6)));
        phi(i, n + j) = v;
        phi(j, n + i) = v;
      }
    const RatMat psi = normalize_involution_exact(phi);
    const RatMat omega = rat_omega0(dim);
    CHECK(psi.transpose() * omega * psi == omega);
    CHECK(psi * phi == rat_conjugation(dim) * psi);
  }
}

TEST_CASE("floating path agrees with the exact one") {
  Matrix phi(2, 2);
  phi << 1.0, 2.0, 0.0, -1.0;
  const auto omega0 = make_symplectic_form(omega0_matrix(2));
  const auto psi = normalize_involution(
      LinearMap{2, phi, MapRole::Involution}, omega0);
  Matrix expected(2, 2);
  expected << 1.0, 1.0, 0.0, 1.0;
  CHECK(max_abs(psi.mat - expected) < 1e-12);
  CHECK(preserves_form(omega0, psi, 1e-12));
  const Matrix c = conjugation_matrix(2);
  CHECK(max_abs(psi.mat * phi - c * psi.mat) < 1e-12);
}
