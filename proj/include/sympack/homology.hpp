#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympack::lattice {

// H_2 of the k-point blow-up of the projective plane, in the standard basis
// {A, E_1..E_k} with intersection form diag(1, -1, ..., -1). A class is
// written b A - sum_q m_q E_q, so the E_q themselves carry m = -e_q.

struct HomologyClass {
  int k = 0;
  long long b = 0;
  std::vector<long long> m;

  bool operator==(const HomologyClass& o) const {
    return k == o.k && b == o.b && m == o.m;
  }
  bool operator<(const HomologyClass& o) const {
    if (b != o.b) return b < o.b;
    return m < o.m;
  }
};

inline HomologyClass exceptional_basis_class(int k, int i) {
  HomologyClass c{k, 0, std::vector<long long>(k, 0)};
  c.m[i] = -1;
  return c;
}

inline long long pairing(const HomologyClass& x, const HomologyClass& y) {
  if (x.k != y.k) throw std::invalid_argument("classes live in different lattices");
  long long p = x.b * y.b;
  for (int q = 0; q < x.k; ++q) p -= x.m[q] * y.m[q];
  return p;
}

inline long long self_intersection(const HomologyClass& x) {
  return pairing(x, x);
}

/// Pairing with the anti-canonical class 3A - sum E_q.
inline long long chern_pairing(const HomologyClass& x) {
  return 3 * x.b - std::accumulate(x.m.begin(), x.m.end(), 0LL);
}

/// Push-forward under the real structure: every basis class is reversed.
inline HomologyClass real_structure_action(const HomologyClass& x) {
  HomologyClass out = x;
  out.b = -out.b;
  for (auto& v : out.m) v = -v;
  return out;
}

/// Representative with multiplicities sorted descending.
inline HomologyClass canonical(const HomologyClass& x) {
  HomologyClass out = x;
  std::sort(out.m.begin(), out.m.end(), std::greater<long long>());
  return out;
}

inline std::string to_string(const HomologyClass& x) {
  std::string s = "(" + std::to_string(x.b) + ";";
  for (int q = 0; q < x.k; ++q)
    s += (q ? "," : " ") + std::to_string(x.m[q]);
  return s + ")";
}

namespace detail {

/// Enumerates descending vectors m with sum = target_s, sum of squares =
/// target_q, entries bounded by [-(bound), min(prev, bound)], pruned by
/// Cauchy-Schwarz on the remaining slots.
inline void descend(int slots, long long prev, long long bound, long long s,
                    long long q, std::vector<long long>& acc,
                    std::vector<std::vector<long long>>& out) {
  if (slots == 0) {
    if (s == 0 && q == 0) out.push_back(acc);
    return;
  }
  const long long r = slots - 1;
  for (long long v = std::min(prev, bound); v >= -bound; --v) {
    const long long s2 = s - v, q2 = q - v * v;
    if (q2 < 0) continue;
    // feasibility of the remaining r slots, each in [-bound, min(v, bound)]
    if (s2 > r * std::min(v, bound) || s2 < -r * bound) continue;
    if (s2 * s2 > r * q2) continue;  // Cauchy-Schwarz; forces s2=q2=0 at r=0
    if (q2 > r * bound * bound) continue;
    acc.push_back(v);
    descend(static_cast<int>(r), v, bound, s2, q2, acc, out);
    acc.pop_back();
  }
}

inline std::vector<HomologyClass> classes_for_degree(int k, long long b) {
  // E . E = -1  and  pairing with the anti-canonical class = 1:
  //   sum m = 3b - 1,  sum m^2 = b^2 + 1.
  std::vector<std::vector<long long>> sorted_vectors;
  std::vector<long long> acc;
  descend(k, b + 1, b + 1, 3 * b - 1, b * b + 1, acc, sorted_vectors);
  std::vector<HomologyClass> out;
  for (auto& mv : sorted_vectors) {
    // expand to all distinct permutations (mv arrives descending)
    std::sort(mv.begin(), mv.end());
    do {
      out.push_back(HomologyClass{k, b, mv});
    } while (std::next_permutation(mv.begin(), mv.end()));
  }
  return out;
}

}  // namespace detail

/// All integer classes with self-intersection -1 and anti-canonical degree 1,
/// for degrees 0..b_max. Closed under coordinate permutations.
inline std::vector<HomologyClass> enumerate_exceptional_classes(
    int k, long long b_max = 6) {
  if (k < 1 || k > 8) throw std::invalid_argument("k must lie in 1..8");
  std::vector<HomologyClass> out;
  for (long long b = 0; b <= b_max; ++b) {
    auto part = detail::classes_for_degree(k, b);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Degrees b in [from, to] contributing no classes beyond the b_max cap.
/// Returns how many extra classes were found (expected 0).
inline std::size_t saturation_scan(int k, long long from = 7, long long to = 10) {
  std::size_t extra = 0;
  for (long long b = from; b <= to; ++b)
    extra += detail::classes_for_degree(k, b).size();
  return extra;
}

/// Reflection induced on H_2 by the quadratic transformation centered at
/// the points indexed by slots (i, j, l).
inline HomologyClass cremona_move(const HomologyClass& x, int i, int j, int l) {
  if (i == j || j == l || i == l)
    throw std::invalid_argument("cremona move needs three distinct slots");
  HomologyClass out = x;
  const long long mi = x.m[i], mj = x.m[j], ml = x.m[l];
  out.b = 2 * x.b - mi - mj - ml;
  out.m[i] = x.b - mj - ml;
  out.m[j] = x.b - mi - ml;
  out.m[l] = x.b - mi - mj;
  return out;
}

/// Closure of a seed set under Cremona moves at all slot triples (which,
/// for a permutation-closed seed, equals closure under permutations and the
/// standard move). For k < 3 the seed is returned unchanged.
inline std::set<HomologyClass> cremona_orbit(
    const std::vector<HomologyClass>& seeds, int k) {
  std::set<HomologyClass> orbit(seeds.begin(), seeds.end());
  if (k < 3) return orbit;
  std::vector<HomologyClass> frontier(orbit.begin(), orbit.end());
  while (!frontier.empty()) {
    std::vector<HomologyClass> next;
    for (const auto& cls : frontier) {
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int l = j + 1; l < k; ++l) {
            HomologyClass moved = cremona_move(cls, i, j, l);
            if (orbit.insert(moved).second) next.push_back(std::move(moved));
          }
    }
    frontier = std::move(next);
  }
  return orbit;
}

inline std::set<HomologyClass> cremona_orbit_of_basis(int k) {
  std::vector<HomologyClass> seeds;
  for (int i = 0; i < k; ++i) seeds.push_back(exceptional_basis_class(k, i));
  return cremona_orbit(seeds, k);
}

}  // namespace sympack::lattice
