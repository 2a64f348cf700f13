#pragma once

#include "sympack/ratmat.hpp"
#include "sympack/rng.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

namespace sympack::lattice {

using sympack::Int;
using sympack::Rat;

/// Point of the projective plane with exact integer homogeneous coordinates,
/// kept canonical: coprime entries, first nonzero entry positive.
struct ProjPoint {
  std::array<Int, 3> x{Int(0), Int(0), Int(0)};

  bool operator==(const ProjPoint& o) const { return x == o.x; }
  bool operator<(const ProjPoint& o) const { return x < o.x; }
};

namespace detail {

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
  using boost::multiprecision::gcd;
  return gcd(gcd(abs(a), abs(b)), abs(c));
}

}  // namespace detail

inline ProjPoint normalize_point(const std::array<Int, 3>& raw) {
  if (raw[0] == 0 && raw[1] == 0 && raw[2] == 0)
    throw std::invalid_argument("homogeneous coordinates must not all vanish");
  const Int g = detail::gcd3(raw[0], raw[1], raw[2]);
  std::array<Int, 3> out{raw[0] / g, raw[1] / g, raw[2] / g};
  for (const auto& c : out) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& v : out) v = -v;
    break;
  }
  return ProjPoint{out};
}

inline ProjPoint make_point(const std::array<Rat, 3>& coords) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  Int l = lcm(lcm(denominator(coords[0]), denominator(coords[1])),
              denominator(coords[2]));
  std::array<Int, 3> raw;
  for (int i = 0; i < 3; ++i)
    raw[i] = numerator(coords[i]) * (l / denominator(coords[i]));
  return normalize_point(raw);
}

inline ProjPoint make_point(long long a, long long b, long long c) {
  return normalize_point({Int(a), Int(b), Int(c)});
}

inline Int det3(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  return p.x[0] * (q.x[1] * r.x[2] - q.x[2] * r.x[1]) -
         p.x[1] * (q.x[0] * r.x[2] - q.x[2] * r.x[0]) +
         p.x[2] * (q.x[0] * r.x[1] - q.x[1] * r.x[0]);
}

inline bool collinear(const ProjPoint& p, const ProjPoint& q,
                      const ProjPoint& r) {
  return det3(p, q, r) == 0;
}

/// The standard quadratic (Cremona) involution
/// [x0 : x1 : x2] -> [x1 x2 : x0 x2 : x0 x1], defined whenever at most one
/// coordinate vanishes.
inline ProjPoint quadratic_transform(const ProjPoint& p) {
  int zeros = 0;
  for (const auto& c : p.x)
    if (c == 0) ++zeros;
  if (zeros >= 2)
    throw std::domain_error("quadratic transform undefined: two coordinates vanish");
  return normalize_point({p.x[1] * p.x[2], p.x[0] * p.x[2], p.x[0] * p.x[1]});
}

namespace detail {

inline std::array<Int, 3> apply3(const std::array<std::array<Int, 3>, 3>& m,
                                 const std::array<Int, 3>& v) {
  std::array<Int, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

/// Adjugate, an exact projective inverse.
inline std::array<std::array<Int, 3>, 3> adjugate(
    const std::array<std::array<Int, 3>, 3>& m) {
  std::array<std::array<Int, 3>, 3> a;
  a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return a;
}

}  // namespace detail

/// Quadratic transformation centered at three non-collinear points: the
/// standard involution conjugated by the coordinate change sending the
/// centers to the coordinate triangle. The change of coordinates is pinned
/// by the deterministic fourth point c1 + c2 + c3 (canonical
/// representatives) -> [1 : 1 : 1].
inline ProjPoint centered_quadratic_transform(
    const ProjPoint& p, const std::array<ProjPoint, 3>& centers) {
  if (collinear(centers[0], centers[1], centers[2]))
    throw std::invalid_argument("centers are collinear");
  std::array<std::array<Int, 3>, 3> m;  // columns are the centers
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = centers[j].x[i];
  const auto t = detail::adjugate(m);  // sends centers to e1, e2, e3
  const ProjPoint moved = normalize_point(detail::apply3(t, p.x));
  const ProjPoint transformed = quadratic_transform(moved);
  return normalize_point(detail::apply3(m, transformed.x));
}

/// A configuration of 1..8 pairwise distinct points.
struct Configuration {
  std::vector<ProjPoint> pts;

  static Configuration of(std::vector<ProjPoint> pts) {
    if (pts.empty() || pts.size() > 8)
      throw std::invalid_argument("configuration must hold 1..8 points");
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j])
          throw std::invalid_argument("configuration has duplicate points");
    return Configuration{std::move(pts)};
  }

  int size() const { return static_cast<int>(pts.size()); }
};

struct GenPosOptions {
  int audit_depth = 3;  // quadratic-transform audit depth; 0 disables
};

struct GenPosReport {
  bool pass = false;
  std::string reason;                // empty when pass
  std::vector<int> witness;          // offending subset, if any
  std::vector<int> audit_sequence;   // flattened center triples leading there
  long long audit_nodes = 0;
  std::vector<std::string> checks_passed;
};

namespace detail {

inline std::array<Int, 10> cubic_monomials(const ProjPoint& p) {
  const Int &x = p.x[0], &y = p.x[1], &z = p.x[2];
  return {x * x * x, y * y * y, z * z * z, x * x * y, x * x * z,
          x * y * y, y * y * z, x * z * z, y * z * z, x * y * z};
}

/// Gradient rows of the cubic monomial vector at p.
inline std::array<std::array<Int, 10>, 3> cubic_gradient(const ProjPoint& p) {
  const Int &x = p.x[0], &y = p.x[1], &z = p.x[2];
  std::array<std::array<Int, 10>, 3> g;
  // d/dx
  g[0] = {3 * x * x, Int(0), Int(0), 2 * x * y, 2 * x * z,
          y * y,     Int(0), z * z,  Int(0),    y * z};
  // d/dy
  g[1] = {Int(0), 3 * y * y, Int(0), x * x, Int(0),
          2 * x * y, 2 * y * z, Int(0), z * z, x * z};
  // d/dz
  g[2] = {Int(0), Int(0), 3 * z * z, Int(0), x * x,
          Int(0), y * y, 2 * x * z, 2 * y * z, x * y};
  return g;
}

/// Rank by fraction-free (Bareiss) elimination; entry growth stays linear.
inline int int_matrix_rank(std::vector<std::vector<Int>> m) {
  const int nr = static_cast<int>(m.size());
  const int nc = nr ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  Int denom = 1;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int pivot = -1;
    for (int r = rank; r < nr; ++r)
      if (m[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < nr; ++r) {
      for (int j = col + 1; j < nc; ++j) {
        m[r][j] = m[r][j] * m[rank][col] - m[r][col] * m[rank][j];
        if (denom != 1) m[r][j] /= denom;
      }
      m[r][col] = 0;
    }
    denom = m[rank][col];
    ++rank;
  }
  return rank;
}

inline Int veronese_det6(const std::vector<ProjPoint>& pts,
                         const std::array<int, 6>& idx) {
  // conic monomials x^2, y^2, z^2, xy, xz, yz
  std::vector<std::vector<Int>> m(6, std::vector<Int>(6));
  for (int r = 0; r < 6; ++r) {
    const auto& p = pts[idx[r]];
    m[r] = {p.x[0] * p.x[0], p.x[1] * p.x[1], p.x[2] * p.x[2],
            p.x[0] * p.x[1], p.x[0] * p.x[2], p.x[1] * p.x[2]};
  }
  // fraction-free elimination, Bareiss style determinant
  Int denom = 1, det = 1;
  for (int col = 0; col < 6; ++col) {
    int pivot = -1;
    for (int r = col; r < 6; ++r)
      if (m[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) return Int(0);
    if (pivot != col) { std::swap(m[pivot], m[col]); det = -det; }
    for (int r = col + 1; r < 6; ++r) {
      for (int j = col + 1; j < 6; ++j) {
        m[r][j] = (m[r][j] * m[col][col] - m[r][col] * m[col][j]);
        if (col > 0) m[r][j] /= denom;
      }
      m[r][col] = 0;
    }
    denom = m[col][col];
  }
  det *= m[5][5];
  return det;
}

}  // namespace detail

/// Exact general-position test:
///   any k < 3 passes;
///   (i)   no 3 points collinear (3x3 determinants);
///   (ii)  k >= 6: no 6 points on a conic (Veronese determinant);
///   (iii) k == 8: no cubic through 7 points with a double point at the
///         eighth, for each choice of the doubled point (10x10 rank);
/// plus a bounded-depth audit: sequences of centered quadratic transforms
/// at configuration triples may never make three points collinear.
inline GenPosReport general_position_test(const Configuration& cfg,
                                          const GenPosOptions& opts = {}) {
  GenPosReport rep;
  const int k = cfg.size();
  const auto battery = [&](const std::vector<ProjPoint>& pts,
                           std::vector<int>& witness) -> bool {
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          if (collinear(pts[i], pts[j], pts[l])) {
            witness = {i, j, l};
            return false;
          }
    return true;
  };

  if (k < 3) {
    rep.pass = true;
    rep.checks_passed = {"k<3"};
    return rep;
  }

  std::vector<int> witness;
  if (!battery(cfg.pts, witness)) {
    rep.reason = "three points collinear";
    rep.witness = witness;
    return rep;
  }
  rep.checks_passed.push_back("no-3-collinear");

  if (k >= 6) {
    std::array<int, 6> idx{};
    std::vector<int> comb(6);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      for (int i = 0; i < 6; ++i) idx[i] = comb[i];
      if (detail::veronese_det6(cfg.pts, idx) == 0) {
        rep.reason = "six points on a conic";
        rep.witness.assign(comb.begin(), comb.end());
        return rep;
      }
      int i = 5;
      while (i >= 0 && comb[i] == k - 6 + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < 6; ++j) comb[j] = comb[j - 1] + 1;
    }
    rep.checks_passed.push_back("no-6-on-conic");
  }

  if (k == 8) {
    for (int doubled = 0; doubled < 8; ++doubled) {
      std::vector<std::vector<Int>> rows;
      for (int i = 0; i < 8; ++i) {
        if (i == doubled) continue;
        const auto mono = detail::cubic_monomials(cfg.pts[i]);
        rows.emplace_back(mono.begin(), mono.end());
      }
      const auto grad = detail::cubic_gradient(cfg.pts[doubled]);
      for (const auto& g : grad) rows.emplace_back(g.begin(), g.end());
      if (detail::int_matrix_rank(rows) < 10) {
        rep.reason = "cubic through seven points with a double point at the eighth";
        rep.witness = {doubled};
        return rep;
      }
    }
    rep.checks_passed.push_back("no-nodal-cubic");
  }

  // Audit: depth-first over sequences of centered transforms. Centers stay
  // in place; the remaining points move. Repeating the previous triple is
  // skipped (the transform is an involution on the rest).
  if (opts.audit_depth > 0) {
    struct Frame {
      std::vector<ProjPoint> pts;
      int last_triple = -1;
      int depth = 0;
      std::vector<int> seq;
    };
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int l = j + 1; l < k; ++l) triples.push_back({i, j, l});

    std::vector<Frame> stack{{cfg.pts, -1, 0, {}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.depth >= opts.audit_depth) continue;
      for (int t = 0; t < static_cast<int>(triples.size()); ++t) {
        if (t == f.last_triple) continue;
        const auto& tri = triples[t];
        std::array<ProjPoint, 3> centers{f.pts[tri[0]], f.pts[tri[1]],
                                         f.pts[tri[2]]};
        std::vector<ProjPoint> moved = f.pts;
        for (int i = 0; i < k; ++i) {
          if (i == tri[0] || i == tri[1] || i == tri[2]) continue;
          moved[i] = centered_quadratic_transform(f.pts[i], centers);
        }
        ++rep.audit_nodes;
        std::vector<int> w;
        if (!battery(moved, w)) {
          rep.reason = "quadratic transform produced three collinear points";
          rep.witness = w;
          rep.audit_sequence = f.seq;
          rep.audit_sequence.insert(rep.audit_sequence.end(), tri.begin(),
                                    tri.end());
          return rep;
        }
        Frame next{std::move(moved), t, f.depth + 1, f.seq};
        next.seq.insert(next.seq.end(), tri.begin(), tri.end());
        stack.push_back(std::move(next));
      }
    }
    rep.checks_passed.push_back("cremona-audit-depth-" +
                                std::to_string(opts.audit_depth));
  }

  rep.pass = true;
  return rep;
}

struct PerturbResult {
  Configuration cfg;
  bool ok = false;
  int rounds = 0;
  Rat max_moved;  // affine-chart distance, see below
};

namespace detail {

/// Chart representative: divide by the entry of largest magnitude, so all
/// coordinates are rationals in [-1, 1] and one of them equals 1.
inline std::array<Rat, 3> chart_rep(const ProjPoint& p, int& unit_idx) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(p.x[i]) > abs(p.x[best])) best = i;
  unit_idx = best;
  std::array<Rat, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = make_rat(p.x[i], p.x[best]);
  return out;
}

}  // namespace detail

/// Moves the points of a degenerate real configuration by exact rational
/// jitter (each point at most `radius` away in its affine chart) until the
/// general-position test passes. A maximal already-general subset is kept
/// fixed; jitter restarts from the original coordinates each round and
/// shrinks geometrically.
inline PerturbResult perturb_to_general_position(const Configuration& cfg,
                                                 const Rat& radius,
                                                 std::uint64_t seed,
                                                 const GenPosOptions& opts = {},
                                                 int max_rounds = 48) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  if (general_position_test(cfg, opts).pass)
    return PerturbResult{cfg, true, 0, Rat(0)};

  const int k = cfg.size();
  // greedy maximal general-position subset (cheap options: no audit)
  std::vector<bool> keep(k, false);
  {
    std::vector<ProjPoint> sub;
    GenPosOptions cheap;
    cheap.audit_depth = 0;
    for (int i = 0; i < k; ++i) {
      sub.push_back(cfg.pts[i]);
      if (general_position_test(Configuration{sub}, cheap).pass) {
        keep[i] = true;
      } else {
        sub.pop_back();
      }
    }
  }

  Rng rng(seed);
  Rat step = radius / 2;
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<ProjPoint> pts = cfg.pts;
    Rat moved_bound(0);
    for (int i = 0; i < k; ++i) {
      if (keep[i]) continue;
      int unit_idx = 0;
      auto rep = detail::chart_rep(cfg.pts[i], unit_idx);
      Rat moved(0);
      for (int c = 0; c < 3; ++c) {
        if (c == unit_idx) continue;
        // exact rational jitter in [-step, step]
        const long long numer =
            static_cast<long long>(rng.below(2 * 65536 + 1)) - 65536;
        const Rat d = step * Rat(numer, 65536);
        rep[c] += d;
        moved = std::max(moved, Rat(abs(d)));
      }
      pts[i] = make_point(rep);
      moved_bound = std::max(moved_bound, moved);
    }
    bool distinct = true;
    for (int i = 0; i < k && distinct; ++i)
      for (int j = i + 1; j < k && distinct; ++j)
        if (pts[i] == pts[j]) distinct = false;
    if (distinct) {
      Configuration candidate{pts};
      if (general_position_test(candidate, opts).pass)
        return PerturbResult{std::move(candidate), true, round, moved_bound};
    }
    step /= 2;
    if (step == 0) break;
  }
  return PerturbResult{cfg, false, max_rounds, Rat(0)};
}

}  // namespace sympack::lattice
