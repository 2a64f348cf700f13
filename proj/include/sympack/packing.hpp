#pragma once

#include "sympack/homology.hpp"
#include "sympack/rational.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace sympack::packing {

using lattice::HomologyClass;
using sympack::Rat;

/// A real packing instance: k balls with squared radii (capacities)
/// lambda_sq, measured against the unit line class.
struct PackingProblem {
  int k = 0;
  std::vector<Rat> lambda_sq;
  bool equal_radii = false;

  static PackingProblem equal(int k, const Rat& lam_sq) {
    return PackingProblem{k, std::vector<Rat>(static_cast<size_t>(k), lam_sq),
                          true};
  }
  static PackingProblem of(std::vector<Rat> lam_sq) {
    const int k = static_cast<int>(lam_sq.size());
    if (k < 1 || k > 8) throw std::invalid_argument("k must lie in 1..8");
    for (const auto& l : lam_sq)
      if (l < 0) throw std::invalid_argument("squared radii must be >= 0");
    return PackingProblem{k, std::move(lam_sq), false};
  }
};

struct PackingResult {
  bool feasible = false;
  Rat ratio;  // filled volume fraction, sum of lambda^4
  std::optional<HomologyClass> binding;
  bool volume_binding = false;
  Rat chern_pairing;  // 3 - sum lambda^2, reported for reference
  std::string certificate;
};

inline const std::vector<HomologyClass>& exceptional_classes_cached(int k) {
  static std::map<int, std::vector<HomologyClass>> cache;
  auto it = cache.find(k);
  if (it == cache.end())
    it = cache.emplace(k, lattice::enumerate_exceptional_classes(k)).first;
  return it->second;
}

/// Pairing of the candidate cohomology class alpha a - sum lambda_q^2 e_q
/// with an integer class b A - sum m_q E_q: alpha b - sum lambda_q^2 m_q.
/// Reversing the homology class flips the sign, which is what makes the
/// candidate anti-invariant under the real structure.
inline Rat rho_pairing(const Rat& alpha, const std::vector<Rat>& lambda_sq,
                       const HomologyClass& cls) {
  if (static_cast<int>(lambda_sq.size()) != cls.k)
    throw std::invalid_argument("lambda_sq length must equal k");
  Rat out = alpha * cls.b;
  for (int q = 0; q < cls.k; ++q) out -= lambda_sq[q] * Rat(cls.m[q]);
  return out;
}

/// Feasibility of a packing instance, decided exactly:
///   volume:  sum lambda_q^4 < 1, and
///   classes: sum m_q lambda_q^2 < b for every exceptional class.
/// Constraints whose left side is <= 0 bound nothing and are skipped.
inline PackingResult check_feasible(const PackingProblem& p) {
  if (p.k < 1 || p.k > 8) throw std::invalid_argument("k must lie in 1..8");
  if (static_cast<int>(p.lambda_sq.size()) != p.k)
    throw std::invalid_argument("lambda_sq length must equal k");

  PackingResult res;
  res.ratio = 0;
  Rat sum_l2 = 0;
  for (const auto& l : p.lambda_sq) {
    res.ratio += l * l;
    sum_l2 += l;
  }
  res.chern_pairing = Rat(3) - sum_l2;

  // track the tightest constraint for the certificate either way
  Rat worst_gap;  // b - lhs, minimal
  bool have_worst = false;

  std::ostringstream cert;
  if (res.ratio >= 1) {
    res.feasible = false;
    res.volume_binding = true;
    cert << "volume: sum lambda^4 = " << rat_to_string(res.ratio) << " >= 1";
    res.certificate = cert.str();
    return res;
  }

  const auto& classes = exceptional_classes_cached(p.k);
  std::optional<HomologyClass> tightest;
  for (const auto& cls : classes) {
    Rat lhs = 0;
    for (int q = 0; q < p.k; ++q) lhs += Rat(cls.m[q]) * p.lambda_sq[q];
    if (lhs <= 0) continue;  // vacuous
    const Rat gap = Rat(cls.b) - lhs;
    if (!have_worst || gap < worst_gap) {
      worst_gap = gap;
      tightest = cls;
      have_worst = true;
    }
  }

  if (have_worst && worst_gap <= 0) {
    res.feasible = false;
    res.binding = lattice::canonical(*tightest);
    cert << "class " << lattice::to_string(*res.binding)
         << ": sum m lambda^2 = " << rat_to_string(Rat(tightest->b) - worst_gap)
         << " >= b = " << tightest->b << " (strict inequality required)";
    res.certificate = cert.str();
    return res;
  }

  res.feasible = true;
  // report the tightest obstruction among class and volume slack
  const Rat volume_gap = Rat(1) - res.ratio;
  if (have_worst && worst_gap <= volume_gap) {
    res.binding = lattice::canonical(*tightest);
    cert << "feasible; tightest class " << lattice::to_string(*res.binding)
         << " with slack " << rat_to_string(worst_gap);
  } else {
    res.volume_binding = true;
    cert << "feasible; volume slack " << rat_to_string(volume_gap);
  }
  res.certificate = cert.str();
  return res;
}

/// The packing number for k equal balls and its certificate.
struct PackingNumber {
  int k = 0;
  Rat value;           // p_k, exact
  Rat lambda_star_sq;  // sup of the equal squared radius
  std::optional<HomologyClass> binding;
  bool volume_binds = false;
};

/// p_k = k (lambda*^2)^2 with lambda*^2 = min(min_cls b / sum m, k^{-1/2}).
/// The irrational volume bound is handled by comparing squares; the result
/// is exact for k <= 8 (where a rational bound always attains the minimum).
inline PackingNumber packing_number(int k) {
  if (k < 1 || k > 8) throw std::invalid_argument("k must lie in 1..8");
  PackingNumber out;
  out.k = k;

  std::optional<Rat> class_bound;
  std::optional<HomologyClass> argmin;
  for (const auto& cls : exceptional_classes_cached(k)) {
    long long msum = 0;
    for (auto v : cls.m) msum += v;
    if (msum <= 0) continue;
    const Rat bound = Rat(cls.b, msum);
    if (!class_bound || bound < *class_bound ||
        (bound == *class_bound &&
         lattice::canonical(cls) < lattice::canonical(*argmin))) {
      class_bound = bound;
      argmin = cls;
    }
  }

  if (!class_bound) {  // k = 1: only the basis classes, volume decides
    out.volume_binds = true;
    out.lambda_star_sq = Rat(1);  // 1/sqrt(1)
    out.value = 1;
    return out;
  }

  const int cmp = compare_with_inv_sqrt(*class_bound, k);
  if (cmp <= 0) {
    out.binding = lattice::canonical(*argmin);
    out.lambda_star_sq = *class_bound;
    out.value = Rat(k) * (*class_bound) * (*class_bound);
    out.volume_binds = (cmp == 0);
  } else {
    // volume bound is smaller; for k <= 8 this occurs only at square k
    out.volume_binds = true;
    out.value = 1;
    if (k == 1) out.lambda_star_sq = 1;
    else if (k == 4) out.lambda_star_sq = Rat(1, 2);
    else throw std::logic_error("irrational packing supremum outside square k");
  }
  return out;
}

inline std::vector<PackingNumber> packing_table() {
  std::vector<PackingNumber> rows;
  for (int k = 1; k <= 8; ++k) rows.push_back(packing_number(k));
  return rows;
}

/// Scaling bound along a fixed positive weight profile lambda_q^2 = t w_q:
/// sup t = min( min_cls b / sum m_q w_q , 1 / sqrt(sum w_q^2) ), the class
/// bound exact, the volume bound compared exactly via squares.
struct SupRadiusProfile {
  int k = 0;
  Rat t_sq;                  // (sup t)^2, always rational
  std::optional<Rat> t;      // sup t itself when rational (class-bound case)
  std::optional<HomologyClass> binding;
  bool volume_binds = false;
  Rat weight_norm_sq;  // sum w_q^2
};

inline SupRadiusProfile sup_radius_profile(int k, const std::vector<Rat>& w) {
  if (k < 1 || k > 8) throw std::invalid_argument("k must lie in 1..8");
  if (static_cast<int>(w.size()) != k)
    throw std::invalid_argument("weights length must equal k");
  for (const auto& x : w)
    if (x <= 0) throw std::invalid_argument("weights must be positive");

  SupRadiusProfile out;
  out.k = k;
  out.weight_norm_sq = 0;
  for (const auto& x : w) out.weight_norm_sq += x * x;

  std::optional<Rat> class_bound;
  std::optional<HomologyClass> argmin;
  for (const auto& cls : exceptional_classes_cached(k)) {
    Rat denom = 0;
    for (int q = 0; q < k; ++q) denom += Rat(cls.m[q]) * w[q];
    if (denom <= 0) continue;
    const Rat bound = Rat(cls.b) / denom;
    if (!class_bound || bound < *class_bound ||
        (bound == *class_bound &&
         lattice::canonical(cls) < lattice::canonical(*argmin))) {
      class_bound = bound;
      argmin = cls;
    }
  }

  // class bound r vs volume bound 1/sqrt(S): compare r^2 S with 1
  if (class_bound && (*class_bound) * (*class_bound) * out.weight_norm_sq <= 1) {
    out.t = *class_bound;
    out.t_sq = (*class_bound) * (*class_bound);
    out.binding = lattice::canonical(*argmin);
    out.volume_binds =
        ((*class_bound) * (*class_bound) * out.weight_norm_sq == 1);
  } else {
    out.volume_binds = true;
    out.t_sq = Rat(1) / out.weight_norm_sq;
    // t itself rational only if S is a perfect square of a rational
    const Rat s = out.weight_norm_sq;
    const Int num = boost::multiprecision::numerator(s);
    const Int den = boost::multiprecision::denominator(s);
    const Int rn = boost::multiprecision::sqrt(num);
    const Int rd = boost::multiprecision::sqrt(den);
    if (rn * rn == num && rd * rd == den) out.t = Rat(rd, rn);
  }
  return out;
}

}  // namespace sympack::packing
