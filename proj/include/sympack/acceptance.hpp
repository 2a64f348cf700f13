#pragma once

#include "sympack/acs.hpp"
#include "sympack/involution.hpp"
#include "sympack/packing.hpp"
#include "sympack/projective.hpp"
#include "sympack/verify.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sympack::acceptance {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline linalg::Matrix random_gaussian(Rng& rng, int n) {
  linalg::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  return m;
}

/// Random exact anti-symplectic involution fixing R^n: [[I, S], [0, -I]]
/// with S symmetric and dyadic, so floating evaluation is exact.
inline linalg::Matrix random_involution_fixing_rn(Rng& rng, int dim) {
  const int n = dim / 2;
  linalg::Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v =
          static_cast<double>(static_cast<long long>(rng.below(129)) - 64) /
          64.0;
      s(i, j) = v;
      s(j, i) = v;
    }
  linalg::Matrix phi = linalg::Matrix::Zero(dim, dim);
  phi.topLeftCorner(n, n).setIdentity();
  phi.topRightCorner(n, n) = s;
  phi.bottomRightCorner(n, n) = -linalg::Matrix::Identity(n, n);
  return phi;
}

}  // namespace detail

// ---- exact packing table ----------------------------------------------------

inline CriterionResult table_reproduction() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "packing-table";
  const std::vector<std::string> expected = {"1",     "1/2",   "3/4",
                                             "1",     "4/5",   "24/25",
                                             "63/64", "288/289"};
  std::ostringstream detail_msg;
  res.pass = true;
  const auto rows = packing::packing_table();
  for (int k = 1; k <= 8; ++k) {
    const std::string got = rat_to_string(rows[k - 1].value);
    if (got != expected[k - 1]) {
      res.pass = false;
      detail_msg << "k=" << k << ": got " << got << ", expected "
                 << expected[k - 1] << "; ";
    }
  }
  if (res.pass) detail_msg << "p_k = 1, 1/2, 3/4, 1, 4/5, 24/25, 63/64, 288/289";
  res.seconds = timer.seconds();
  res.pass = res.pass && res.seconds < 5.0;
  res.detail = detail_msg.str();
  return res;
}

// ---- exceptional class counts, orbit closure, saturation ---------------------

inline CriterionResult class_enumeration() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "exceptional-classes";
  const std::vector<std::size_t> expected = {1, 3, 6, 10, 16, 27, 56, 240};
  std::ostringstream msg;
  res.pass = true;
  for (int k = 1; k <= 8; ++k) {
    const auto brute = lattice::enumerate_exceptional_classes(k);
    if (brute.size() != expected[k - 1]) {
      res.pass = false;
      msg << "count(k=" << k << ")=" << brute.size() << " expected "
          << expected[k - 1] << "; ";
    }
    if (k >= 3) {
      const auto orbit = lattice::cremona_orbit_of_basis(k);
      const std::set<lattice::HomologyClass> brute_set(brute.begin(),
                                                       brute.end());
      if (orbit != brute_set) {
        res.pass = false;
        msg << "orbit(k=" << k << ") != enumeration; ";
      }
    }
    if (lattice::saturation_scan(k, 7, 10) != 0) {
      res.pass = false;
      msg << "saturation found classes beyond b=6 for k=" << k << "; ";
    }
  }
  if (res.pass) msg << "counts 1,3,6,10,16,27,56,240; orbit = enumeration; no b in 7..10";
  res.seconds = timer.seconds();
  res.pass = res.pass && res.seconds < 30.0;
  res.detail = msg.str();
  return res;
}

// ---- binding certificates -----------------------------------------------------

inline CriterionResult binding_certificates() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "binding-certificates";
  std::ostringstream msg;
  res.pass = true;
  const auto expect = [&](int k, const lattice::HomologyClass& want) {
    const auto pn = packing::packing_number(k);
    if (!pn.binding || !(lattice::canonical(*pn.binding) == want)) {
      res.pass = false;
      msg << "k=" << k << ": binding "
          << (pn.binding ? lattice::to_string(*pn.binding) : "(none)")
          << " expected " << lattice::to_string(want) << "; ";
    }
  };
  expect(5, lattice::HomologyClass{5, 2, {1, 1, 1, 1, 1}});
  expect(7, lattice::HomologyClass{7, 3, {2, 1, 1, 1, 1, 1, 1}});
  expect(8, lattice::HomologyClass{8, 6, {3, 2, 2, 2, 2, 2, 2, 2}});
  if (res.pass) msg << "argmin classes (2;1^5), (3;2,1^6), (6;3,2^7)";
  res.seconds = timer.seconds();
  res.detail = msg.str();
  return res;
}

// ---- blow-up pullback identity ------------------------------------------------

inline CriterionResult calculation_identity() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "pullback-identity";
  std::ostringstream msg;
  res.pass = true;
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto rep = local::verify_calculation_identity(
          lambda, n, 100, 42, 1e-6, local::JacobianMode::FiniteDifference,
          1e-5);
      worst = std::max(worst, rep.max_residual);
      if (!rep.pass) {
        res.pass = false;
        msg << "n=" << n << " lambda=" << lambda
            << ": max residual = " << rep.max_residual << "; ";
      }
    }
  }
  msg << "max residual " << std::scientific << std::setprecision(2) << worst
      << " (tol 1e-6, fd step 1e-5)";
  res.seconds = timer.seconds();
  res.pass = res.pass && res.seconds < 10.0;
  res.detail = msg.str();
  return res;
}

// ---- local model form properties ------------------------------------------------

inline CriterionResult local_form_properties() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "local-form-properties";
  std::ostringstream msg;
  res.pass = true;
  const int n = 2;
  const int samples = 100;
  const std::uint64_t seed = 42;

  const double lambda = 1.0, eps = 0.25;
  const auto f_spec = local::RadialMapSpec::blow_up(lambda, eps);
  const auto tt = local::tau_tilde_form(f_spec);
  const double inner = f_spec.delta, outer = 1.0 + eps;
  const auto avoid = f_spec.branch_radii();

  std::vector<local::CheckReport> reports;
  // outside the profile support the form is the scaled flat one
  reports.push_back(local::verify_form_property(
      tt, n, outer * 1.01, 5.0, {local::FormCheck::EqualsScaledOmega0,
                                 lambda * lambda},
      samples, seed, 1e-9));
  // inside the inner radius it agrees with the model form
  {
    local::FormCheckSpec rho_spec{local::FormCheck::EqualsRho};
    rho_spec.kappa = 1.0;
    rho_spec.lambda = lambda;
    reports.push_back(local::verify_form_property(
        tt, n, inner / 8.0, inner * 0.99, rho_spec, samples, seed + 1, 1e-9));
  }
  reports.push_back(local::verify_form_property(
      tt, n, inner / 8.0, 5.0, {local::FormCheck::Tame}, samples, seed + 2,
      1e-12, avoid));
  reports.push_back(local::verify_form_property(
      tt, n, inner / 8.0, 5.0, {local::FormCheck::Compatible}, samples,
      seed + 3, 1e-9, avoid));
  reports.push_back(local::verify_form_property(
      tt, n, inner * 1.02, outer * 0.99, {local::FormCheck::AntiInvariant},
      samples, seed + 4, 1e-8));

  const double tau_lambda = 1.0, tau_delta = 0.5, tau_eps = 0.25;
  const auto g_spec =
      local::RadialMapSpec::blow_down(tau_lambda, tau_delta, tau_eps);
  const auto tau = local::tau_form(g_spec);
  const auto g_avoid = g_spec.branch_radii();
  reports.push_back(local::verify_form_property(
      tau, n, 0.05, 0.99, {local::FormCheck::EqualsScaledOmega0,
                           tau_lambda * tau_lambda},
      samples, seed + 5, 1e-9));
  {
    local::FormCheckSpec rho_spec{local::FormCheck::EqualsRho};
    rho_spec.kappa = tau_delta;
    rho_spec.lambda = tau_lambda;
    reports.push_back(local::verify_form_property(
        tau, n, (1.0 + tau_eps) * 1.01, 5.0, rho_spec, samples, seed + 6,
        1e-9));
  }
  reports.push_back(local::verify_form_property(
      tau, n, 0.05, 5.0, {local::FormCheck::Tame}, samples, seed + 7, 1e-12,
      g_avoid));
  reports.push_back(local::verify_form_property(
      tau, n, 0.05, 5.0, {local::FormCheck::Compatible}, samples, seed + 8,
      1e-9, g_avoid));
  reports.push_back(local::verify_form_property(
      tau, n, 1.01, (1.0 + tau_eps) * 0.99, {local::FormCheck::AntiInvariant},
      samples, seed + 9, 1e-8));

  double worst = 0.0;
  for (const auto& rep : reports) {
    worst = std::max(worst, rep.max_residual);
    if (!rep.pass) {
      res.pass = false;
      msg << rep.check << " in " << rep.region
          << ": max residual = " << rep.max_residual << "; ";
    }
  }
  msg << reports.size() << " checks, worst residual " << std::scientific
      << std::setprecision(2) << worst;
  res.seconds = timer.seconds();
  res.pass = res.pass && res.seconds < 20.0;
  res.detail = msg.str();
  return res;
}

// ---- polar decomposition suite ---------------------------------------------------

inline CriterionResult polar_acs_suite() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "polar-acs-suite";
  std::ostringstream msg;
  res.pass = true;
  Rng rng(20240901);
  double worst = 0.0;
  int trials_run = 0;
  for (int dim : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 50; ++trial) {
      const linalg::Matrix phi_mat = detail::random_involution_fixing_rn(rng, dim);
      const linalg::LinearMap phi{dim, phi_mat, linalg::MapRole::Involution};

      // anti-invariant symplectic form for phi, nondegenerate by resampling
      linalg::Matrix omega_mat;
      for (;;) {
        linalg::Matrix raw = detail::random_gaussian(rng, dim);
        raw = 0.5 * (raw - raw.transpose().eval());
        omega_mat = 0.5 * (raw - linalg::pullback(raw, phi_mat));
        omega_mat = 0.5 * (omega_mat - omega_mat.transpose().eval());
        Eigen::JacobiSVD<linalg::Matrix> svd(omega_mat);
        if (svd.singularValues().minCoeff() > 0.05) break;
      }
      const auto omega = linalg::make_symplectic_form(omega_mat);

      linalg::Matrix g_raw = detail::random_gaussian(rng, dim);
      const auto g = linalg::make_metric(
          (g_raw * g_raw.transpose() +
           0.5 * linalg::Matrix::Identity(dim, dim))
              .eval());

      const auto j = linalg::equivariant_acs(g, omega, phi);
      ++trials_run;

      const double sq = linalg::max_abs(
          j.mat * j.mat + linalg::Matrix::Identity(dim, dim));
      const double compat = linalg::max_abs(
          linalg::pullback(omega.mat, j.mat) - omega.mat);
      const double equiv = linalg::max_abs(phi_mat * j.mat + j.mat * phi_mat);
      const auto gj = linalg::metric_from_acs(omega, j);
      const auto j2 = linalg::compatible_acs_from_metric(gj, omega);
      const double roundtrip = linalg::max_abs(j2.mat - j.mat);
      const bool tame = linalg::check_tame(omega, j).tame;

      worst = std::max({worst, sq, compat, equiv, roundtrip});
      if (sq > 1e-9 || compat > 1e-9 || equiv > 1e-9 || roundtrip > 1e-9 ||
          !tame) {
        res.pass = false;
        msg << "dim=" << dim << " trial=" << trial << ": J^2+I=" << sq
            << " compat=" << compat << " equiv=" << equiv
            << " roundtrip=" << roundtrip << "; ";
      }
    }
  }
  msg << trials_run << " triples, worst defect " << std::scientific
      << std::setprecision(2) << worst << " (tol 1e-9)";
  res.seconds = timer.seconds();
  res.detail = msg.str();
  return res;
}

// ---- exact involution normalization ------------------------------------------------

inline CriterionResult involution_normalization() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "involution-normalization";
  std::ostringstream msg;
  res.pass = true;
  Rng rng(7);
  int done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int dim = 2 * n;
    RatMat phi(dim, dim);
    for (int i = 0; i < n; ++i) phi(i, i) = 1;
    for (int i = n; i < dim; ++i) phi(i, i) = -1;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const long long num = static_cast<long long>(rng.below(19)) - 9;
        const long long den = 1 + static_cast<long long>(rng.below(9));
        phi(i, n + j) = Rat(num, den);
        phi(j, n + i) = Rat(num, den);
      }
    try {
      const RatMat psi = linalg::normalize_involution_exact(phi);
      const RatMat omega = rat_omega0(dim);
      if (!(psi.transpose() * omega * psi == omega) ||
          !(psi * phi == rat_conjugation(dim) * psi)) {
        res.pass = false;
        msg << "trial " << trial << ": identities violated; ";
      }
    } catch (const std::exception& e) {
      res.pass = false;
      msg << "trial " << trial << ": " << e.what() << "; ";
    }
    ++done;
  }
  msg << done << " rational involutions normalized exactly";
  res.seconds = timer.seconds();
  res.detail = msg.str();
  return res;
}

// ---- general position suite -----------------------------------------------------------

inline CriterionResult general_position_suite() {
  detail::Timer timer;
  CriterionResult res;
  res.name = "general-position";
  std::ostringstream msg;
  res.pass = true;

  // exact degeneracy detection
  {
    const auto cfg = lattice::Configuration::of(
        {lattice::make_point(1, 0, 0), lattice::make_point(0, 1, 0),
         lattice::make_point(1, 1, 0)});
    const auto rep = lattice::general_position_test(cfg);
    if (rep.pass || rep.reason != "three points collinear") {
      res.pass = false;
      msg << "collinear triple not detected; ";
    }
  }
  {
    std::vector<lattice::ProjPoint> pts;
    for (long long t = 0; t < 6; ++t)
      pts.push_back(lattice::make_point(1, t, t * t));
    const auto rep = lattice::general_position_test(
        lattice::Configuration::of(std::move(pts)));
    if (rep.pass || rep.reason != "six points on a conic") {
      res.pass = false;
      msg << "conic degeneracy not detected; ";
    }
  }

  // 50 seeded degenerate configurations, perturbed within 1/100
  const Rat radius(1, 100);
  int fixed = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const int k = 3 + (seed % 6);
    Rng rng(1000 + seed);
    std::vector<lattice::ProjPoint> pts;
    if (k >= 6 && seed % 2 == 0) {
      // first six on a conic
      std::set<long long> used;
      while (pts.size() < 6) {
        const long long t = static_cast<long long>(rng.below(40)) - 20;
        if (!used.insert(t).second) continue;
        pts.push_back(lattice::make_point(4, 4 * t, t * t));
      }
    } else {
      // three collinear points
      const long long a = 1 + static_cast<long long>(rng.below(5));
      pts.push_back(lattice::make_point(1, a, 0));
      pts.push_back(lattice::make_point(1, a + 1, 0));
      pts.push_back(lattice::make_point(1, a + 2, 0));
    }
    std::set<lattice::ProjPoint> seen(pts.begin(), pts.end());
    while (static_cast<int>(pts.size()) < k) {
      const long long x = static_cast<long long>(rng.below(41)) - 20;
      const long long y = static_cast<long long>(rng.below(41)) - 20;
      const auto p = lattice::make_point(7, x, y);
      if (seen.insert(p).second) pts.push_back(p);
    }
    lattice::GenPosOptions opts;
    opts.audit_depth = 1;
    const auto cfg = lattice::Configuration::of(std::move(pts));
    const auto out = lattice::perturb_to_general_position(cfg, radius,
                                                          900 + seed, opts);
    if (!out.ok || out.max_moved >= radius) {
      res.pass = false;
      msg << "seed " << seed << " (k=" << k << "): perturbation "
          << (out.ok ? "moved too far" : "failed") << "; ";
    } else {
      ++fixed;
    }
  }

  // involutive property of the quadratic transformation
  Rng rng(12345);
  int inv_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Rat, 3> c;
    for (auto& v : c) {
      long long num = 0;
      while (num == 0) num = static_cast<long long>(rng.below(41)) - 20;
      const long long den = 1 + static_cast<long long>(rng.below(12));
      v = Rat(num, den);
    }
    const auto p = lattice::make_point(c);
    const auto q = lattice::quadratic_transform(lattice::quadratic_transform(p));
    if (q == p) ++inv_ok;
  }
  if (inv_ok != 100) {
    res.pass = false;
    msg << "involution property failed on " << (100 - inv_ok) << " points; ";
  }

  msg << "degeneracies detected, " << fixed
      << "/50 configurations repaired within 1/100, involution exact on 100 points";
  res.seconds = timer.seconds();
  res.detail = msg.str();
  return res;
}

inline std::vector<CriterionResult> run_all() {
  return {table_reproduction(),    class_enumeration(),
          binding_certificates(),  calculation_identity(),
          local_form_properties(), polar_acs_suite(),
          involution_normalization(), general_position_suite()};
}

inline bool print_scoreboard(std::ostream& out,
                             const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(28)
        << r.name << " (" << std::fixed << std::setprecision(2) << r.seconds
        << "s)  " << r.detail << "\n";
    all = all && r.pass;
  }
  out << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
  return all;
}

}  // namespace sympack::acceptance
