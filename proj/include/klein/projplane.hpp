#pragma once

// Points, lines and conics of the projective plane over an exact scalar S
// (Rational or FieldElement). Everything is stored canonically (first
// nonzero coordinate equal to 1), so equality is coordinate equality.

#include <algorithm>
#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "klein/numfield.hpp"

namespace klein {

inline int scalar_cmp(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}
inline int scalar_cmp(const FieldElement& a, const FieldElement& b) { return compare(a, b); }
inline int scalar_sign(const Rational& a) { return sgn(a) < 0 ? -1 : (sgn(a) > 0 ? 1 : 0); }
inline int scalar_sign(const FieldElement& a) { return real_sign(a); }
inline std::complex<double> scalar_approx(const Rational& a) { return {a.get_d(), 0.0}; }
inline std::complex<double> scalar_approx(const FieldElement& a) { return approx_double(a); }

template <class S>
using Vec3 = std::array<S, 3>;
template <class S>
using Mat3 = std::array<Vec3<S>, 3>;

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
bool is_zero_vec(const Vec3<S>& v) {
  return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]);
}

template <class S>
Vec3<S> mat_vec(const Mat3<S>& m, const Vec3<S>& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

template <class S>
S det3(const Mat3<S>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class S>
Mat3<S> adjugate(const Mat3<S>& m) {
  Mat3<S> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          m[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)] * m[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)] -
          m[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c1)] * m[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c0)];
    }
  return a;
}

/// Scales v so that its first nonzero coordinate is 1.
template <class S>
Vec3<S> canonical(Vec3<S> v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (is_zero(v[i])) continue;
    const S inv = S(1) / v[i];
    v[i] = S(1);
    for (std::size_t j = i + 1; j < 3; ++j) v[j] = v[j] * inv;
    return v;
  }
  throw std::invalid_argument("zero vector has no projective class");
}

template <class S>
int vec_cmp(const Vec3<S>& a, const Vec3<S>& b) {
  for (std::size_t i = 0; i < 3; ++i) {
    int c = scalar_cmp(a[i], b[i]);
    if (c) return c;
  }
  return 0;
}

template <class S>
struct ProjectivePoint {
  Vec3<S> c;
  ProjectivePoint() = default;
  explicit ProjectivePoint(const Vec3<S>& v) : c(canonical(v)) {}
  ProjectivePoint(S x, S y, S z) : c(canonical(Vec3<S>{std::move(x), std::move(y), std::move(z)})) {}
  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.c == b.c; }
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) { return vec_cmp(a.c, b.c) < 0; }
};

template <class S>
struct ProjectiveLine {
  Vec3<S> c;
  ProjectiveLine() = default;
  explicit ProjectiveLine(const Vec3<S>& v) : c(canonical(v)) {}
  ProjectiveLine(S a, S b, S d) : c(canonical(Vec3<S>{std::move(a), std::move(b), std::move(d)})) {}
  friend bool operator==(const ProjectiveLine& a, const ProjectiveLine& b) { return a.c == b.c; }
  friend bool operator<(const ProjectiveLine& a, const ProjectiveLine& b) { return vec_cmp(a.c, b.c) < 0; }
};

/// Upper-triangle order used for canonical scaling and serialization:
/// a11, a12, a13, a22, a23, a33.
inline constexpr std::array<std::pair<int, int>, 6> kConicEntries = {{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

template <class S>
struct Conic {
  Mat3<S> m;
  Conic() = default;
  explicit Conic(const Mat3<S>& sym) : m(sym) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))
          throw std::invalid_argument("conic matrix must be symmetric");
    for (const auto& [i, j] : kConicEntries) {
      const S& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (is_zero(v)) continue;
      const S inv = S(1) / v;
      for (auto& row : m)
        for (auto& e : row) e = e * inv;
      return;
    }
    throw std::invalid_argument("zero conic");
  }
  /// From coefficients of a x^2 + b xy + c xz + d y^2 + e yz + f z^2.
  static Conic from_coeffs(const std::array<S, 6>& k) {
    const S h = S(1) / S(2);
    Mat3<S> m{Vec3<S>{k[0], k[1] * h, k[2] * h}, Vec3<S>{k[1] * h, k[3], k[4] * h}, Vec3<S>{k[2] * h, k[4] * h, k[5]}};
    return Conic(m);
  }
  [[nodiscard]] std::array<S, 6> upper() const {
    std::array<S, 6> u;
    for (std::size_t k = 0; k < 6; ++k)
      u[k] = m[static_cast<std::size_t>(kConicEntries[k].first)][static_cast<std::size_t>(kConicEntries[k].second)];
    return u;
  }
  friend bool operator==(const Conic& a, const Conic& b) { return a.m == b.m; }
  friend bool operator<(const Conic& a, const Conic& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      int c = vec_cmp(a.m[i], b.m[i]);
      if (c) return c < 0;
    }
    return false;
  }
};

/// Circle with affine center (cx : cy : 1) and squared radius r2.
template <class S>
struct Circle {
  S cx, cy, r2;
  [[nodiscard]] Conic<S> conic() const {
    Mat3<S> m{Vec3<S>{S(1), S(0), S(0) - cx}, Vec3<S>{S(0), S(1), S(0) - cy},
              Vec3<S>{S(0) - cx, S(0) - cy, cx * cx + cy * cy - r2}};
    return Conic<S>(m);
  }
};

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class S>
ProjectiveLine<S> join(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q) {
  Vec3<S> v = cross(p.c, q.c);
  if (is_zero_vec(v)) throw DegenerateInput("join of equal points");
  return ProjectiveLine<S>(v);
}

template <class S>
ProjectivePoint<S> meet(const ProjectiveLine<S>& l, const ProjectiveLine<S>& m) {
  Vec3<S> v = cross(l.c, m.c);
  if (is_zero_vec(v)) throw DegenerateInput("meet of equal lines");
  return ProjectivePoint<S>(v);
}

template <class S>
bool incident(const ProjectivePoint<S>& p, const ProjectiveLine<S>& l) {
  return is_zero(dot(p.c, l.c));
}

template <class S>
bool collinear(const ProjectivePoint<S>& a, const ProjectivePoint<S>& b, const ProjectivePoint<S>& c) {
  return is_zero(dot(cross(a.c, b.c), c.c));
}

template <class S>
bool on_conic(const ProjectivePoint<S>& p, const Conic<S>& c) {
  return is_zero(dot(p.c, mat_vec(c.m, p.c)));
}

template <class S>
bool is_smooth(const Conic<S>& c) {
  return !is_zero(det3(c.m));
}

/// Values of the six conic monomials x^2, xy, xz, y^2, yz, z^2 at p.
template <class S>
std::array<S, 6> conic_row(const Vec3<S>& p) {
  return {p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]};
}

/// Kernel of a k x 6 matrix by Gauss-Jordan elimination; returns the kernel
/// basis vectors.
template <class S>
std::vector<std::array<S, 6>> kernel6(std::vector<std::array<S, 6>> rows) {
  std::vector<int> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < 6 && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const S inv = S(1) / rows[r][c];
    for (auto& v : rows[r]) v = v * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || is_zero(rows[i][c])) continue;
      const S f = rows[i][c];
      for (std::size_t k = 0; k < 6; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::array<S, 6>> ker;
  for (std::size_t fcol = 0; fcol < 6; ++fcol) {
    if (std::find(pivcol.begin(), pivcol.end(), static_cast<int>(fcol)) != pivcol.end()) continue;
    std::array<S, 6> v;
    v.fill(S(0));
    v[fcol] = S(1);
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[static_cast<std::size_t>(pivcol[i])] = S(0) - rows[i][fcol];
    ker.push_back(v);
  }
  return ker;
}

/// The unique conic through five points; throws DegenerateInput when the
/// points impose fewer than five conditions (e.g. four of them collinear).
template <class S>
Conic<S> conic_through_5(const std::array<ProjectivePoint<S>, 5>& pts) {
  std::vector<std::array<S, 6>> rows;
  for (const auto& p : pts) rows.push_back(conic_row(p.c));
  auto ker = kernel6(std::move(rows));
  if (ker.size() != 1) throw DegenerateInput("five points do not determine a unique conic");
  return Conic<S>::from_coeffs(ker[0]);
}

enum class ConicKind { Ellipse, Hyperbola, Parabola, Degenerate };

inline const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Parabola: return "parabola";
    default: return "degenerate";
  }
}

/// Affine type over a real field, read off from the points at infinity.
template <class S>
ConicKind conic_classify(const Conic<S>& c) {
  if (!is_smooth(c)) return ConicKind::Degenerate;
  const S disc = c.m[0][1] * c.m[0][1] - c.m[0][0] * c.m[1][1];
  const int s = scalar_sign(disc);
  if (s < 0) return ConicKind::Ellipse;
  if (s > 0) return ConicKind::Hyperbola;
  return ConicKind::Parabola;
}

template <class S>
ProjectiveLine<S> polar(const ProjectivePoint<S>& p, const Conic<S>& c) {
  if (!is_smooth(c)) throw DegenerateInput("polar with respect to a degenerate conic");
  return ProjectiveLine<S>(mat_vec(c.m, p.c));
}

template <class S>
ProjectivePoint<S> pole(const ProjectiveLine<S>& l, const Conic<S>& c) {
  if (!is_smooth(c)) throw DegenerateInput("pole with respect to a degenerate conic");
  return ProjectivePoint<S>(mat_vec(adjugate(c.m), l.c));
}

template <class S>
struct Reciprocal {
  std::vector<ProjectiveLine<S>> lines;    // polars of the input points
  std::vector<ProjectivePoint<S>> points;  // poles of the input lines
  std::vector<int> center_points;          // input points whose polar is the line at infinity
};

template <class S>
Reciprocal<S> reciprocal_set(const std::vector<ProjectivePoint<S>>& points, const std::vector<ProjectiveLine<S>>& lines,
                             const Circle<S>& gamma) {
  const Conic<S> c = gamma.conic();
  Reciprocal<S> r;
  const ProjectiveLine<S> infinity(S(0), S(0), S(1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    r.lines.push_back(polar(points[i], c));
    if (r.lines.back() == infinity) r.center_points.push_back(static_cast<int>(i));
  }
  for (const auto& l : lines) r.points.push_back(pole(l, c));
  return r;
}

/// Whether two concentric circle pairs share their midcircle, compared via
/// k^4 = R^2 rho^2 so no square roots are taken.
template <class S>
bool midcircle_condition(const S& R2a, const S& r2a, const S& R2b, const S& r2b) {
  for (const S* v : {&R2a, &r2a, &R2b, &r2b})
    if (scalar_sign(*v) <= 0) throw std::invalid_argument("squared radius must be positive");
  return R2a * r2a == R2b * r2b;
}

/// Applies a field automorphism coordinatewise (alpha -> image).
template <class T>
T conjugate_object(const T& obj, const FieldElement& image) {
  T out = obj;
  for (auto& v : out.c) v = apply_automorphism(v, image);
  return T(out.c);
}

}  // namespace klein
