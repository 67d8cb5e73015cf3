#pragma once

// Multiprecision complex projective geometry: homogeneous 3-vectors,
// symmetric conic matrices and clustering of approximate points.

#include <array>
#include <numeric>
#include <vector>

#include "klein/numeric.hpp"

namespace klein {

using CVec3 = std::array<ComplexR, 3>;
using CMat3 = std::array<CVec3, 3>;

inline ComplexR dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Real norm2(const CVec3& a) { return sqrt(norm(a[0]) + norm(a[1]) + norm(a[2])); }

/// Scales to unit Euclidean norm with the largest-modulus coordinate real
/// and positive, which makes representatives comparable.
inline CVec3 normalized(const CVec3& a) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (norm(a[i]) > norm(a[k])) k = i;
  const Real n = norm2(a);
  if (n == 0) throw std::domain_error("normalized: zero vector");
  ComplexR phase = conj(a[k]) / ComplexR(abs(a[k]) * n);
  return {a[0] * phase, a[1] * phase, a[2] * phase};
}

/// Scale-invariant projective distance |a x b| / (|a| |b|).
inline Real proj_distance(const CVec3& a, const CVec3& b) { return norm2(cross(a, b)) / (norm2(a) * norm2(b)); }

inline CVec3 mat_vec(const CMat3& m, const CVec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

inline ComplexR conic_value(const CMat3& c, const CVec3& p) { return dot(p, mat_vec(c, p)); }

inline ComplexR det3(const CMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Real mat_norm(const CMat3& m) {
  Real s = 0;
  for (const auto& r : m)
    for (const auto& v : r) s += norm(v);
  return sqrt(s);
}

/// Union-find grouping of approximate projective points. Points closer than
/// `tol` are merged; a pair whose distance falls in [tol, gap) makes the
/// grouping ambiguous and raises PrecisionError.
inline std::vector<int> cluster_points(const std::vector<CVec3>& pts, const Real& tol, const Real& gap) {
  const std::size_t n = pts.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  // Cheap double-precision screen before the multiprecision distance.
  std::vector<std::array<std::complex<double>, 3>> dp(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto u = normalized(pts[i]);
    dp[i] = {to_std(u[0]), to_std(u[1]), to_std(u[2])};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = dp[i];
      const auto& b = dp[j];
      double c = std::abs(a[1] * b[2] - a[2] * b[1]) + std::abs(a[2] * b[0] - a[0] * b[2]) +
                 std::abs(a[0] * b[1] - a[1] * b[0]);
      if (c > 1e-6) continue;
      Real d = proj_distance(pts[i], pts[j]);
      if (d < tol) {
        parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
      } else if (d < gap) {
        throw PrecisionError("cluster_points: ambiguous separation between points");
      }
    }
  }
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = find(static_cast<int>(i));
  // relabel to 0..k-1 in order of first appearance
  std::vector<int> remap(n, -1);
  int next = 0;
  for (auto& l : label) {
    if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next++;
    l = remap[static_cast<std::size_t>(l)];
  }
  return label;
}

}  // namespace klein
