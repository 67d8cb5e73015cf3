#pragma once

// Singular-point censuses of exact line arrangements, conic searches through
// exact point sets, exact transversality of conic pairs and the cell
// structure of real line arrangements.

#include <algorithm>
#include <bitset>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "klein/projplane.hpp"
#include "klein/upoly.hpp"

namespace klein {

using TVector = std::map<int, int>;

template <class S>
struct Census {
  std::vector<ProjectivePoint<S>> points;
  std::vector<std::vector<int>> curves;  // sorted incident curve indices per point
  TVector tvector;
  std::vector<std::map<int, int>> per_curve;  // multiplicity -> count, per curve

  [[nodiscard]] int multiplicity(std::size_t i) const { return static_cast<int>(curves[i].size()); }
};

/// Sum over census points of (mult - 1)^2.
int jacobian_degree(const TVector& t);
/// Sum of C(r, 2) t_r.
int pair_count(const TVector& t);

struct PluckerCounts {
  int dual_degree, nodes, cusps;
};
/// Classical Plücker numbers of the dual of a smooth plane curve of degree d.
PluckerCounts plucker_counts(int d);

std::string format_tvector(const TVector& t);

template <class S>
Census<S> census_from_groups(std::map<ProjectivePoint<S>, std::set<int>> groups, std::size_t ncurves) {
  Census<S> c;
  c.per_curve.assign(ncurves, {});
  for (auto& [p, s] : groups) {
    c.points.push_back(p);
    c.curves.emplace_back(s.begin(), s.end());
    const int r = static_cast<int>(s.size());
    ++c.tvector[r];
    for (int i : s) ++c.per_curve[static_cast<std::size_t>(i)][r];
  }
  return c;
}

/// All pairwise meets, grouped by exact point equality.
template <class S>
Census<S> line_census(const std::vector<ProjectiveLine<S>>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] == lines[j]) throw std::invalid_argument("line_census: duplicate lines");
  std::map<ProjectivePoint<S>, std::set<int>> groups;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto& s = groups[meet(lines[i], lines[j])];
      s.insert(static_cast<int>(i));
      s.insert(static_cast<int>(j));
    }
  return census_from_groups(std::move(groups), lines.size());
}

/// Index of p in the census, or -1.
template <class S>
int find_point(const Census<S>& c, const ProjectivePoint<S>& p) {
  auto it = std::find(c.points.begin(), c.points.end(), p);
  return it == c.points.end() ? -1 : static_cast<int>(it - c.points.begin());
}

// ---------------------------------------------------------------------------
// Conic searches

template <class S>
struct ConicHit {
  Conic<S> conic;
  std::vector<int> subset;  // indices of incident points, ascending
};

namespace detail {

using CD = std::complex<double>;
using CD3 = std::array<CD, 3>;

inline std::array<CD, 6> conic_row_d(const CD3& p) {
  return {p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]};
}

/// Kernel vector of a 5x6 complex matrix by partial-pivot elimination.
/// Returns false when the rank is below 5 (smallest pivot under `eps`).
inline bool kernel_5x6(std::array<std::array<CD, 6>, 5> m, std::array<CD, 6>& out, double eps) {
  std::array<int, 5> piv{};
  std::array<bool, 6> used{};
  for (int r = 0; r < 5; ++r) {
    int bc = -1;
    double best = 0;
    for (int c = 0; c < 6; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      for (int rr = r; rr < 5; ++rr) {
        double v = std::abs(m[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)]);
        if (v > best) {
          best = v;
          bc = c;
        }
      }
    }
    if (best < eps) return false;
    int br = r;
    for (int rr = r; rr < 5; ++rr)
      if (std::abs(m[static_cast<std::size_t>(rr)][static_cast<std::size_t>(bc)]) >
          std::abs(m[static_cast<std::size_t>(br)][static_cast<std::size_t>(bc)]))
        br = rr;
    std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(br)]);
    auto& row = m[static_cast<std::size_t>(r)];
    const CD inv = 1.0 / row[static_cast<std::size_t>(bc)];
    for (auto& v : row) v *= inv;
    for (int rr = 0; rr < 5; ++rr) {
      if (rr == r) continue;
      auto& o = m[static_cast<std::size_t>(rr)];
      const CD f = o[static_cast<std::size_t>(bc)];
      if (f == CD(0)) continue;
      for (std::size_t k = 0; k < 6; ++k) o[k] -= f * row[k];
    }
    piv[static_cast<std::size_t>(r)] = bc;
    used[static_cast<std::size_t>(bc)] = true;
  }
  int free_col = 0;
  while (used[static_cast<std::size_t>(free_col)]) ++free_col;
  out.fill(0);
  out[static_cast<std::size_t>(free_col)] = 1;
  for (int r = 0; r < 5; ++r) out[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = -m[static_cast<std::size_t>(r)][static_cast<std::size_t>(free_col)];
  double n = 0;
  for (auto& v : out) n += std::norm(v);
  n = std::sqrt(n);
  for (auto& v : out) v /= n;
  return true;
}

constexpr std::size_t kMaxSearchPoints = 64;

}  // namespace detail

/// Smooth conics through at least `min_inc` of `points`. Candidate incidence
/// sets come from a double-precision fit of every 5-subset; each candidate is
/// then refitted and counted exactly, and only exact results are returned.
/// Degenerate conics (line pairs) are discarded.
template <class S>
std::vector<ConicHit<S>> conic_search_exact(const std::vector<ProjectivePoint<S>>& points, int min_inc) {
  const std::size_t n = points.size();
  if (n < 5) throw std::invalid_argument("conic_search_exact: need at least five points");
  if (min_inc < 6) throw std::invalid_argument("conic_search_exact: min_inc must be at least 6");
  if (n > detail::kMaxSearchPoints) throw std::invalid_argument("conic_search_exact: too many points");
  using Mask = std::bitset<detail::kMaxSearchPoints>;

  std::vector<detail::CD3> pd(n);
  std::vector<std::array<detail::CD, 6>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    double nn = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      pd[i][k] = scalar_approx(points[i].c[k]);
      nn += std::norm(pd[i][k]);
    }
    for (auto& v : pd[i]) v /= std::sqrt(nn);
    rows[i] = detail::conic_row_d(pd[i]);
  }

  std::vector<Mask> candidates;
  std::array<int, 5> idx{0, 1, 2, 3, 4};
  const int N = static_cast<int>(n);
  while (true) {
    Mask sub;
    for (int i : idx) sub.set(static_cast<std::size_t>(i));
    bool covered = false;
    for (const auto& c : candidates)
      if ((c & sub) == sub) {
        covered = true;
        break;
      }
    if (!covered) {
      std::array<std::array<detail::CD, 6>, 5> m;
      for (std::size_t r = 0; r < 5; ++r) m[r] = rows[static_cast<std::size_t>(idx[r])];
      std::array<detail::CD, 6> k;
      if (detail::kernel_5x6(m, k, 1e-10)) {
        Mask inc;
        for (std::size_t i = 0; i < n; ++i) {
          detail::CD v = 0;
          for (std::size_t t = 0; t < 6; ++t) v += rows[i][t] * k[t];
          if (std::abs(v) < 1e-6) inc.set(i);
        }
        if (static_cast<int>(inc.count()) >= min_inc) candidates.push_back(inc);
      }
    }
    int p = 4;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == N - 5 + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < 5; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }

  std::map<Conic<S>, std::vector<int>> exact;
  for (const auto& cand : candidates) {
    std::vector<int> members;
    for (std::size_t i = 0; i < n; ++i)
      if (cand.test(i)) members.push_back(static_cast<int>(i));
    // first 5-subset of the members with an exact unique conic
    std::optional<Conic<S>> fit;
    std::array<int, 5> s{0, 1, 2, 3, 4};
    const int M = static_cast<int>(members.size());
    while (!fit) {
      try {
        std::array<ProjectivePoint<S>, 5> five;
        for (std::size_t r = 0; r < 5; ++r) five[r] = points[static_cast<std::size_t>(members[static_cast<std::size_t>(s[r])])];
        fit = conic_through_5(five);
      } catch (const DegenerateInput&) {
        int p = 4;
        while (p >= 0 && s[static_cast<std::size_t>(p)] == M - 5 + p) --p;
        if (p < 0) break;
        ++s[static_cast<std::size_t>(p)];
        for (int q = p + 1; q < 5; ++q) s[static_cast<std::size_t>(q)] = s[static_cast<std::size_t>(q - 1)] + 1;
      }
    }
    if (!fit || !is_smooth(*fit)) continue;
    std::vector<int> inc;
    for (std::size_t i = 0; i < n; ++i)
      if (on_conic(points[i], *fit)) inc.push_back(static_cast<int>(i));
    if (static_cast<int>(inc.size()) >= min_inc) exact.emplace(*fit, std::move(inc));
  }
  std::vector<ConicHit<S>> out;
  for (auto& [c, s] : exact) out.push_back({c, s});
  std::sort(out.begin(), out.end(), [](const ConicHit<S>& a, const ConicHit<S>& b) { return a.subset < b.subset; });
  return out;
}

// ---------------------------------------------------------------------------
// Exact transversality

template <class S>
Mat3<S> congruence(const Mat3<S>& c, const Mat3<S>& t) {
  Mat3<S> out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      S acc(0);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          if (is_zero(c[k][l]) || is_zero(t[k][i]) || is_zero(t[l][j])) continue;
          acc = acc + t[k][i] * c[k][l] * t[l][j];
        }
      out[i][j] = acc;
    }
  return out;
}

/// Eliminant of two conics in the affine chart z = 1 after eliminating x:
/// a univariate polynomial in y whose roots are the y-coordinates of the
/// common points.
template <class S>
UPoly<S> conic_pair_eliminant(const Mat3<S>& c, const Mat3<S>& d) {
  using P = UPoly<S>;
  auto parts = [](const Mat3<S>& m) {
    P a2 = P::constant(m[0][0]);
    P a1(std::vector<S>{S(2) * m[0][2], S(2) * m[0][1]});
    P a0(std::vector<S>{m[2][2], S(2) * m[1][2], m[1][1]});
    return std::array<P, 3>{a0, a1, a2};
  };
  auto [a0, a1, a2] = parts(c);
  auto [b0, b1, b2] = parts(d);
  P u = a2 * b0 - a0 * b2;
  return u * u - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
}

struct TransversalityReport {
  bool all_transversal = true;
  std::vector<std::pair<int, int>> tangent_pairs;
};

/// For each pair, eliminates to a quartic after a random integer projective
/// change and tests squarefreeness exactly. A pair is transversal as soon as
/// one change gives a squarefree quartic of full degree; three failures in a
/// row mark it tangent.
template <class S>
TransversalityReport transversality_check_exact(const std::vector<Conic<S>>& conics, unsigned seed = 1) {
  for (const auto& c : conics)
    if (!is_smooth(c)) throw std::invalid_argument("transversality_check_exact: singular conic");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  auto random_change = [&]() {
    while (true) {
      Mat3<S> t;
      for (auto& r : t)
        for (auto& v : r) v = S(dist(rng));
      if (!is_zero(det3(t))) return t;
    }
  };
  TransversalityReport rep;
  for (std::size_t i = 0; i < conics.size(); ++i)
    for (std::size_t j = i + 1; j < conics.size(); ++j) {
      bool ok = false;
      for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
        const Mat3<S> t = random_change();
        UPoly<S> q = conic_pair_eliminant(congruence(conics[i].m, t), congruence(conics[j].m, t));
        ok = q.degree() == 4 && is_squarefree(q);
      }
      if (!ok) {
        rep.all_transversal = false;
        rep.tangent_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Cells of a real line arrangement

struct CellCounts {
  int vertices = 0, edges = 0, faces = 0;
  std::map<int, int> face_sizes;  // number of sides -> count (in the projective plane)
};

namespace detail {

/// Half-plane angular order of (x, y) pairs with exact signs.
template <class S>
bool angle_less(const S& xa, const S& ya, const S& xb, const S& yb) {
  auto half = [](const S& x, const S& y) {
    const int sy = scalar_sign(y);
    return sy < 0 || (sy == 0 && scalar_sign(x) < 0);
  };
  const bool ha = half(xa, ya), hb = half(xb, yb);
  if (ha != hb) return !ha;
  return scalar_sign(xa * yb - ya * xb) > 0;
}

}  // namespace detail

/// Cell structure of a real arrangement by face traversal on the sphere that
/// double covers the projective plane. Face counts are reported for the
/// projective plane (halved).
template <class S>
CellCounts cell_structure(const std::vector<ProjectiveLine<S>>& lines) {
  if (lines.size() < 3) throw std::invalid_argument("cell_structure: need at least three lines");
  const Census<S> cen = line_census(lines);
  if (cen.points.size() == 1) throw std::invalid_argument("cell_structure: all lines concurrent");
  const std::size_t np = cen.points.size();
  auto vec_of = [&](std::size_t v) {
    Vec3<S> p = cen.points[v / 2].c;
    if (v % 2) p = {S(0) - p[0], S(0) - p[1], S(0) - p[2]};
    return p;
  };
  // neighbours along each great circle
  std::vector<std::vector<std::size_t>> nbr(2 * np);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Vec3<S>& L = lines[li].c;
    std::vector<std::size_t> on;
    for (std::size_t k = 0; k < np; ++k)
      if (std::binary_search(cen.curves[k].begin(), cen.curves[k].end(), static_cast<int>(li))) {
        on.push_back(2 * k);
        on.push_back(2 * k + 1);
      }
    const Vec3<S> u = vec_of(on[0]);
    const Vec3<S> w = cross(L, u);
    std::sort(on.begin(), on.end(), [&](std::size_t a, std::size_t b) {
      const Vec3<S> va = vec_of(a), vb = vec_of(b);
      return detail::angle_less(dot(va, u), dot(va, w), dot(vb, u), dot(vb, w));
    });
    for (std::size_t t = 0; t < on.size(); ++t) {
      nbr[on[t]].push_back(on[(t + 1) % on.size()]);
      nbr[on[t]].push_back(on[(t + on.size() - 1) % on.size()]);
    }
  }
  // rotation system: neighbours sorted counterclockwise seen from outside
  for (std::size_t v = 0; v < 2 * np; ++v) {
    const Vec3<S> pv = vec_of(v);
    const Vec3<S> u = cross(lines[static_cast<std::size_t>(cen.curves[v / 2][0])].c, pv);
    const Vec3<S> w = cross(pv, u);
    std::sort(nbr[v].begin(), nbr[v].end(), [&](std::size_t a, std::size_t b) {
      const Vec3<S> va = vec_of(a), vb = vec_of(b);
      return detail::angle_less(dot(va, u), dot(va, w), dot(vb, u), dot(vb, w));
    });
  }
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  std::size_t half_edges = 0;
  for (std::size_t v = 0; v < 2 * np; ++v) half_edges += nbr[v].size();
  std::map<int, int> sizes;
  int faces = 0;
  for (std::size_t v = 0; v < 2 * np; ++v)
    for (std::size_t b : nbr[v]) {
      if (seen[{v, b}]) continue;
      std::size_t a = v, c = b;
      int len = 0;
      while (!seen[{a, c}]) {
        seen[{a, c}] = true;
        ++len;
        const auto& r = nbr[c];
        const std::size_t pos = static_cast<std::size_t>(std::find(r.begin(), r.end(), a) - r.begin());
        const std::size_t nxt = r[(pos + r.size() - 1) % r.size()];
        a = c;
        c = nxt;
      }
      ++faces;
      ++sizes[len];
    }
  CellCounts out;
  out.vertices = static_cast<int>(np);
  out.edges = static_cast<int>(half_edges / 4);
  out.faces = faces / 2;
  for (auto& [k, cnt] : sizes) out.face_sizes[k] = cnt / 2;
  return out;
}

/// Every 2-cell of the real arrangement is a triangle.
template <class S>
bool is_simplicial(const std::vector<ProjectiveLine<S>>& lines) {
  const CellCounts c = cell_structure(lines);
  return c.face_sizes.size() == 1 && c.face_sizes.begin()->first == 3;
}

/// Face count from the Euler characteristic of the projective plane,
/// f2 = 1 - f0 + f1 with f1 = sum over lines of their census points.
template <class S>
CellCounts euler_counts(const std::vector<ProjectiveLine<S>>& lines) {
  const Census<S> cen = line_census(lines);
  CellCounts c;
  c.vertices = static_cast<int>(cen.points.size());
  for (const auto& pc : cen.per_curve)
    for (const auto& [r, k] : pc) c.edges += k;
  c.faces = 1 - c.vertices + c.edges;
  return c;
}

}  // namespace klein
