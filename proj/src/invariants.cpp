#include "klein/invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace klein {

namespace {

QForm x_() { return QForm::var(0); }
QForm y_() { return QForm::var(1); }
QForm z_() { return QForm::var(2); }

}  // namespace

KleinInvariants build_invariants(bool with_phi42) {
  KleinInvariants inv;
  const QForm x = x_(), y = y_(), z = z_();
  inv.phi4 = pow(x, 3) * y + pow(y, 3) * z + pow(z, 3) * x;
  inv.gradmap = gradient(inv.phi4);

  auto hess = hessian(inv.phi4);
  inv.phi6 = polymat_det(hess) * Rational(-1, 54);

  auto g6 = gradient(inv.phi6);
  FormMatrix<Rational> bh(4, std::vector<QForm>(4));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) bh[i][j] = hess[i][j];
    bh[i][3] = g6[i];
    bh[3][i] = g6[i];
  }
  bh[3][3] = QForm(0);
  inv.phi14 = polymat_det(bh) * Rational(1, 9);
  if (inv.phi14.degree() != 14 || inv.phi14.is_zero()) throw std::runtime_error("border Hessian has unexpected degree");

  inv.phi21 = polymat_det(jacobian<Rational>({inv.phi4, inv.phi6, inv.phi14})) * Rational(1, 14);
  inv.steinerian = pow(inv.phi4, 3) * Rational(4) + pow(inv.phi6, 2);

  if (with_phi42) {
    QForm phi63 = compose(inv.phi21, inv.gradmap);
    inv.phi42 = divide_exact(phi63, inv.phi21);
  }
  return inv;
}

std::vector<Rational> solve_in_span(const QForm& target, const std::vector<QForm>& basis) {
  const int d = target.degree();
  for (const auto& b : basis)
    if (b.degree() != d && !b.is_zero()) throw std::invalid_argument("solve_in_span: degree mismatch");
  const std::size_t n = basis.size();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t m = 0; m < monomial_count(d); ++m) {
    std::vector<Rational> row(n + 1);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = basis[k].is_zero() ? Rational(0) : basis[k].dense()[m];
      any = any || !is_zero(row[k]);
    }
    row[n] = target.dense()[m];
    any = any || !is_zero(row[n]);
    if (any) rows.push_back(std::move(row));
  }
  // Gauss-Jordan elimination
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || is_zero(rows[i][c])) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = c; k <= n; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!is_zero(rows[i][n])) throw NoSolution("target is not in the span of the basis");
  std::vector<Rational> sol(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) sol[static_cast<std::size_t>(pivot_col[i])] = rows[i][n];
  return sol;
}

std::vector<std::array<int, 3>> invariant_monomials(int degree) {
  std::vector<std::array<int, 3>> out;
  for (int k = 0; 14 * k <= degree; ++k)
    for (int j = 0; 14 * k + 6 * j <= degree; ++j) {
      int rest = degree - 14 * k - 6 * j;
      if (rest % 4 == 0) out.push_back({rest / 4, j, k});
    }
  return out;
}

SpanMembership verify_phi21_square_membership(const KleinInvariants& inv) {
  SpanMembership res;
  res.exponents = invariant_monomials(42);
  std::vector<QForm> basis;
  for (const auto& [i, j, k] : res.exponents) basis.push_back(pow(inv.phi4, i) * pow(inv.phi6, j) * pow(inv.phi14, k));
  res.coeffs = solve_in_span(pow(inv.phi21, 2), basis);
  return res;
}

CForm to_complex(const QForm& f) {
  return f.map<ComplexR>([](const Rational& q) { return ComplexR(to_real(q)); });
}

namespace {

struct PowerTable {
  std::array<std::vector<ComplexR>, 3> p;
  PowerTable(const CVec3& v, int d) {
    for (std::size_t k = 0; k < 3; ++k) {
      p[k].resize(static_cast<std::size_t>(d) + 1);
      p[k][0] = ComplexR(1);
      for (std::size_t e = 1; e <= static_cast<std::size_t>(d); ++e) p[k][e] = p[k][e - 1] * v[k];
    }
  }
};

ComplexR eval(const CForm& f, const CVec3& v) {
  PowerTable pt(v, f.degree());
  ComplexR acc{};
  const auto& c = f.dense();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    Exponent e = monomial_at(f.degree(), i);
    acc += c[i] * pt.p[0][static_cast<std::size_t>(e.x)] * pt.p[1][static_cast<std::size_t>(e.y)] *
           pt.p[2][static_cast<std::size_t>(e.z)];
  }
  return acc;
}

CVec3 to_cvec(const std::array<Rational, 3>& v) {
  return {ComplexR(to_real(v[0])), ComplexR(to_real(v[1])), ComplexR(to_real(v[2]))};
}

/// Two well-conditioned points on a numeric line.
std::pair<CVec3, CVec3> line_points(const CVec3& l) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (norm(l[i]) > norm(l[k])) k = i;
  CVec3 e1{ComplexR(0), ComplexR(0), ComplexR(0)}, e2 = e1;
  e1[(k + 1) % 3] = ComplexR(1);
  e2[(k + 2) % 3] = ComplexR(1);
  return {cross(l, e1), cross(l, e2)};
}

/// Roots in t of f(P0 + t P1), where the two points are generic on the line.
std::vector<CVec3> root_points(const QForm& f, const std::array<Rational, 3>& L, unsigned digits) {
  const std::array<Rational, 3> u{Rational(1), Rational(2), Rational(3)}, w{Rational(-2), Rational(5), Rational(1)};
  auto crossq = [](const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) {
    return std::array<Rational, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto P0 = crossq(L, u), P1 = crossq(L, w);
  PolyMap<Rational> m;
  for (std::size_t k = 0; k < 3; ++k) m[k] = QForm::linear(P0[k], P1[k], Rational(0));
  QForm g = compose(f, m);
  // coefficient of t^k is that of x^(d-k) y^k
  const int d = f.degree();
  std::vector<ComplexR> c;
  for (int k = 0; k <= d; ++k) c.emplace_back(to_real(g.coeff(d - k, k, 0)));
  if (is_zero(c.back())) return {};
  std::vector<ComplexR> roots;
  {
    PrecisionScope ps(digits + 40);
    std::vector<ComplexR> ch;
    for (int k = 0; k <= d; ++k) ch.emplace_back(to_real(g.coeff(d - k, k, 0)));
    roots = polynomial_roots(std::span<const ComplexR>(ch), pow10(-static_cast<int>(digits) - 5));
  }
  CVec3 p0 = to_cvec(P0), p1 = to_cvec(P1);
  std::vector<CVec3> pts;
  for (const auto& r : roots) {
    ComplexR t{Real(r.re), Real(r.im)};
    pts.push_back(normalized({p0[0] + t * p1[0], p0[1] + t * p1[1], p0[2] + t * p1[2]}));
  }
  return pts;
}

Real tol_of(unsigned digits) { return pow10(-static_cast<int>(digits) / 2); }
Real gap_of(unsigned digits) { return pow10(-static_cast<int>(digits) / 4); }

}  // namespace

Real relative_value(const CForm& f, const CVec3& p) {
  Real scale = 0;
  for (const auto& c : f.dense()) scale += abs(c);
  if (scale == 0) return Real(0);
  return abs(eval(f, normalized(p))) / scale;
}

NumericLines extract_lines_numeric(const QForm& f, unsigned digits) {
  if (digits < 30) throw std::invalid_argument("extract_lines_numeric: need at least 30 digits");
  PrecisionScope ps(digits + 10);
  const int n = f.degree();
  const CForm fc = to_complex(f);
  const Real accept = pow10(4 - static_cast<int>(digits));
  const Real reject = gap_of(digits);

  static const std::array<std::array<std::array<int, 3>, 2>, 4> probes = {{
      {{{3, -7, 11}, {-5, 13, 2}}},
      {{{7, 2, -9}, {4, -11, 5}}},
      {{{-2, 9, 13}, {11, 3, -8}}},
      {{{17, -5, 3}, {2, 19, -7}}},
  }};
  for (const auto& probe : probes) {
    std::array<std::vector<CVec3>, 2> pts;
    bool ok = true;
    for (std::size_t s = 0; s < 2 && ok; ++s) {
      std::array<Rational, 3> L{Rational(probe[s][0]), Rational(probe[s][1]), Rational(probe[s][2])};
      pts[s] = root_points(f, L, digits);
      if (pts[s].size() != static_cast<std::size_t>(n)) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < pts[s].size() && ok; ++i)
        for (std::size_t j = i + 1; j < pts[s].size() && ok; ++j)
          if (proj_distance(pts[s][i], pts[s][j]) < reject) ok = false;
    }
    if (!ok) continue;
    for (const auto& a : pts[0])
      for (const auto& b : pts[1])
        if (proj_distance(a, b) < reject) ok = false;
    if (!ok) continue;

    const ComplexR mix(Real("0.6180339887498948482"), Real("0.2360679774997896964"));
    NumericLines out;
    out.max_residual = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& a : pts[0]) {
      std::vector<std::pair<Real, int>> vals;
      for (std::size_t j = 0; j < pts[1].size(); ++j) {
        const auto& b = pts[1][j];
        CVec3 t{a[0] + mix * b[0], a[1] + mix * b[1], a[2] + mix * b[2]};
        vals.emplace_back(relative_value(fc, t), static_cast<int>(j));
      }
      std::sort(vals.begin(), vals.end(), [](const auto& u, const auto& w) { return u.first < w.first; });
      const int best = vals[0].second;
      const Real bv = vals[0].first;
      const Real second = vals.size() > 1 ? vals[1].first : Real(1);
      if (pts[1].size() > 1 && second < reject) throw PrecisionError("extract_lines_numeric: ambiguous join matching");
      if (bv > accept) throw PrecisionError("extract_lines_numeric: no join vanishes to working precision");
      if (used[static_cast<std::size_t>(best)]) throw PrecisionError("extract_lines_numeric: matching is not a bijection");
      used[static_cast<std::size_t>(best)] = true;
      out.lines.push_back(normalized(cross(a, pts[1][static_cast<std::size_t>(best)])));
    }
    for (std::size_t i = 0; i < out.lines.size(); ++i)
      for (std::size_t j = i + 1; j < out.lines.size(); ++j)
        if (proj_distance(out.lines[i], out.lines[j]) < reject) throw PrecisionError("extract_lines_numeric: coincident lines");
    for (const auto& l : out.lines) {
      auto [u, v] = line_points(l);
      const std::array<ComplexR, 3> ts = {ComplexR(Real(1)), ComplexR(Real(-2), Real(1)), ComplexR(Real(3), Real(-5))};
      for (const auto& t : ts) {
        Real r = relative_value(fc, normalized({u[0] + t * v[0], u[1] + t * v[1], u[2] + t * v[2]}));
        out.max_residual = std::max(out.max_residual, r);
      }
    }
    if (out.max_residual > accept) throw PrecisionError("extract_lines_numeric: residual above tolerance");
    return out;
  }
  throw PrecisionError("extract_lines_numeric: no generic probe lines found");
}

namespace {

NumericCensus census_from_pair_points(const std::vector<CVec3>& pts, const std::vector<std::pair<int, int>>& owners,
                                      int n_curves, unsigned digits) {
  auto label = cluster_points(pts, tol_of(digits), gap_of(digits));
  int k = 0;
  for (int l : label) k = std::max(k, l + 1);
  std::vector<std::set<int>> members(static_cast<std::size_t>(k));
  std::vector<int> pair_count(static_cast<std::size_t>(k), 0);
  NumericCensus c;
  c.points.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto l = static_cast<std::size_t>(label[i]);
    members[l].insert(owners[i].first);
    members[l].insert(owners[i].second);
    pair_count[l] += 1;
    if (pair_count[l] == 1) c.points[l] = normalized(pts[i]);
  }
  c.per_curve.assign(static_cast<std::size_t>(n_curves), {});
  for (std::size_t l = 0; l < members.size(); ++l) {
    const int r = static_cast<int>(members[l].size());
    c.incident.emplace_back(members[l].begin(), members[l].end());
    c.tvector[r] += 1;
    for (int cv : members[l]) c.per_curve[static_cast<std::size_t>(cv)][r] += 1;
  }
  return c;
}

}  // namespace

NumericCensus numeric_line_census(const std::vector<CVec3>& lines, unsigned digits) {
  PrecisionScope ps(digits + 10);
  std::vector<CVec3> pts;
  std::vector<std::pair<int, int>> owners;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      CVec3 p = cross(lines[i], lines[j]);
      if (norm2(p) < gap_of(digits)) throw PrecisionError("numeric_line_census: coincident lines");
      pts.push_back(normalized(p));
      owners.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  auto c = census_from_pair_points(pts, owners, static_cast<int>(lines.size()), digits);
  // every cluster of r lines must consist of exactly C(r,2) meets
  std::size_t total = 0;
  for (const auto& [r, t] : c.tvector) total += static_cast<std::size_t>(r * (r - 1) / 2 * t);
  if (total != pts.size()) throw PrecisionError("numeric_line_census: inconsistent clustering");
  return c;
}

std::pair<CForm, Real> divide_linear(const CForm& f, const CVec3& l) {
  std::size_t v = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (norm(l[i]) > norm(l[v])) v = i;
  const int d = f.degree();
  if (d == 0) return {CForm(0), Real(0)};
  CForm r = f;
  CForm q(d - 1);
  const ComplexR inv = ComplexR(1) / l[v];
  for (int level = d; level >= 1; --level) {
    for (std::size_t idx = 0; idx < r.dense().size(); ++idx) {
      const ComplexR c = r.dense()[idx];
      if (is_zero(c)) continue;
      Exponent e = monomial_at(d, idx);
      int ex[3] = {e.x, e.y, e.z};
      if (ex[v] != level) continue;
      ComplexR qc = c * inv;
      ex[v] -= 1;
      q.set(ex[0], ex[1], ex[2], q.coeff(ex[0], ex[1], ex[2]) + qc);
      for (std::size_t w = 0; w < 3; ++w) {
        int ey[3] = {ex[0], ex[1], ex[2]};
        ey[w] += 1;
        r.set(ey[0], ey[1], ey[2], r.coeff(ey[0], ey[1], ey[2]) - qc * l[w]);
      }
    }
  }
  Real rmax = 0, fmax = 0;
  for (const auto& c : r.dense()) rmax = std::max(rmax, abs(c));
  for (const auto& c : f.dense()) fmax = std::max(fmax, abs(c));
  return {q, fmax == 0 ? Real(0) : rmax / fmax};
}

CMat3 conic_from_form(const CForm& q) {
  if (q.degree() != 2) throw std::invalid_argument("conic_from_form: degree must be 2");
  const ComplexR half(Real(1) / 2);
  CMat3 m;
  m[0][0] = q.coeff(2, 0, 0);
  m[1][1] = q.coeff(0, 2, 0);
  m[2][2] = q.coeff(0, 0, 2);
  m[0][1] = m[1][0] = q.coeff(1, 1, 0) * half;
  m[0][2] = m[2][0] = q.coeff(1, 0, 1) * half;
  m[1][2] = m[2][1] = q.coeff(0, 1, 1) * half;
  return m;
}

CForm form_from_conic(const CMat3& c) {
  CForm q(2);
  const ComplexR two(2);
  q.set(2, 0, 0, c[0][0]);
  q.set(0, 2, 0, c[1][1]);
  q.set(0, 0, 2, c[2][2]);
  q.set(1, 1, 0, c[0][1] * two);
  q.set(1, 0, 1, c[0][2] * two);
  q.set(0, 1, 1, c[1][2] * two);
  return q;
}

PolarSplit split_reducible_polar(const CVec3& p, const KleinInvariants& inv, const std::vector<CVec3>& lines,
                                 unsigned digits) {
  PrecisionScope ps(digits + 10);
  CForm cubic(3);
  for (std::size_t k = 0; k < 3; ++k) cubic += to_complex(inv.gradmap[k]) * p[k];
  PolarSplit out;
  Real best = -1, second = -1;
  CForm best_q;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto [q, res] = divide_linear(cubic, lines[i]);
    if (best < 0 || res < best) {
      second = best;
      best = res;
      out.line_index = static_cast<int>(i);
      best_q = q;
    } else if (second < 0 || res < second) {
      second = res;
    }
  }
  if (best < 0 || best > Real(1e-20)) throw std::runtime_error("split_reducible_polar: no line divides the polar cubic");
  if (second >= 0 && second < Real(1e-10)) throw PrecisionError("split_reducible_polar: two lines divide the polar");
  out.division_residual = best;
  out.conic = conic_from_form(best_q);
  Real n = mat_norm(out.conic);
  out.det_ratio = abs(det3(out.conic)) / (n * n * n);
  const auto& l = lines[static_cast<std::size_t>(out.line_index)];
  auto [u, v] = line_points(l);
  ComplexR a = conic_value(out.conic, u);
  ComplexR b = dot(u, mat_vec(out.conic, v));
  ComplexR c = conic_value(out.conic, v);
  ComplexR disc = b * b - a * c;
  Real scale = abs(b * b) + abs(a * c);
  if (scale == 0)
    out.line_conic_meets = 0;
  else
    out.line_conic_meets = abs(disc) / scale > Real(1e-10) ? 2 : 1;
  return out;
}

Real steinerian_vanishing(const KleinInvariants& inv, const std::vector<CVec3>& points) {
  CForm s = to_complex(inv.steinerian);
  Real m = 0;
  for (const auto& p : points) m = std::max(m, abs(eval(s, normalized(p))));
  return m;
}

std::vector<ComplexR> steinerian_ratios(const KleinInvariants& inv, const std::vector<CVec3>& points) {
  CForm f4 = to_complex(inv.phi4), f6 = to_complex(inv.phi6);
  std::vector<ComplexR> out;
  for (const auto& p : points) {
    auto q = normalized(p);
    ComplexR a = eval(f4, q), b = eval(f6, q);
    out.push_back(-(b * b) / (a * a * a));
  }
  return out;
}

namespace {

using CPoly = UPoly<ComplexR>;

struct Eliminant {
  CPoly quartic;
  CPoly num, den;  // y = -num(x) / den(x)
};

Eliminant eliminate(const CMat3& c1, const CMat3& c2) {
  auto coeffs = [](const CMat3& c) {
    const ComplexR two(2);
    CPoly a2 = CPoly::constant(c[1][1]);
    CPoly a1(std::vector<ComplexR>{two * c[1][2], two * c[0][1]});
    CPoly a0(std::vector<ComplexR>{c[2][2], two * c[0][2], c[0][0]});
    return std::array<CPoly, 3>{a0, a1, a2};
  };
  auto [a0, a1, a2] = coeffs(c1);
  auto [b0, b1, b2] = coeffs(c2);
  CPoly p = a2 * b0 - a0 * b2;
  CPoly q = a2 * b1 - a1 * b2;
  CPoly r = a1 * b0 - a0 * b1;
  return {p * p - q * r, p, q};
}

CMat3 transform_conic(const CMat3& c, const std::array<std::array<int, 3>, 3>& t) {
  // T^t C T
  CMat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      ComplexR acc{};
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          if (t[k][i] == 0 || t[l][j] == 0) continue;
          acc += ComplexR(Real(t[k][i] * t[l][j])) * c[k][l];
        }
      out[i][j] = acc;
    }
  return out;
}

const std::array<std::array<std::array<int, 3>, 3>, 3> kTransforms = {{
    {{{2, -1, 3}, {1, 4, -2}, {-3, 1, 5}}},
    {{{5, 2, -1}, {-2, 3, 7}, {1, -6, 2}}},
    {{{3, 1, 4}, {-1, 5, 9}, {2, -6, 5}}},
}};

}  // namespace

NumericCensus conic_census_numeric(const std::vector<CMat3>& conics, unsigned digits) {
  if (digits < 30) throw std::invalid_argument("conic_census_numeric: need at least 30 digits");
  PrecisionScope ps(digits + 10);
  std::vector<CVec3> pts;
  std::vector<std::pair<int, int>> owners;
  int tangencies = 0;
  const Real root_merge = pow10(-static_cast<int>(digits) / 5);
  for (std::size_t i = 0; i < conics.size(); ++i) {
    for (std::size_t j = i + 1; j < conics.size(); ++j) {
      bool done = false;
      for (const auto& t : kTransforms) {
        CMat3 a = transform_conic(conics[i], t), b = transform_conic(conics[j], t);
        Eliminant e = eliminate(a, b);
        Real cmax = 0;
        for (const auto& v : e.quartic.coeffs()) cmax = std::max(cmax, abs(v));
        if (e.quartic.degree() != 4 || abs(e.quartic.lead()) < Real(1e-12) * cmax) continue;
        auto roots = polynomial_roots(std::span<const ComplexR>(e.quartic.coeffs()), pow10(-static_cast<int>(digits)), false);
        std::vector<bool> merged(roots.size(), false);
        std::vector<ComplexR> xs;
        for (std::size_t r = 0; r < roots.size(); ++r) {
          if (merged[r]) continue;
          ComplexR x = roots[r];
          for (std::size_t s = r + 1; s < roots.size(); ++s)
            if (!merged[s] && abs(roots[s] - roots[r]) < root_merge * std::max(Real(1), abs(roots[r]))) {
              merged[s] = true;
              ++tangencies;
            }
          xs.push_back(x);
        }
        bool bad = false;
        std::vector<CVec3> local;
        for (const auto& x : xs) {
          ComplexR den = e.den.eval(x);
          if (abs(den) < Real(1e-12)) {
            bad = true;
            break;
          }
          ComplexR y = -(e.num.eval(x) / den);
          CVec3 pp{x, y, ComplexR(1)};
          CVec3 orig;
          for (std::size_t k = 0; k < 3; ++k)
            orig[k] = ComplexR(Real(t[k][0])) * pp[0] + ComplexR(Real(t[k][1])) * pp[1] + ComplexR(Real(t[k][2])) * pp[2];
          local.push_back(normalized(orig));
        }
        if (bad) continue;
        for (auto& p : local) {
          pts.push_back(p);
          owners.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
        done = true;
        break;
      }
      if (!done) throw PrecisionError("conic_census_numeric: no generic elimination found");
    }
  }
  auto c = census_from_pair_points(pts, owners, static_cast<int>(conics.size()), digits);
  c.tangencies = tangencies;
  return c;
}

Real conic_product_spread(const std::vector<CMat3>& conics, const QForm& phi42, unsigned digits, int samples) {
  PrecisionScope ps(digits + 10);
  CForm f = to_complex(phi42);
  std::vector<ComplexR> ratios;
  for (int s = 0; s < samples; ++s) {
    CVec3 p{ComplexR(Real(1 + s), Real(0.5 - s)), ComplexR(Real(-2 + 3 * s) / 7, Real(1)),
            ComplexR(Real(3), Real(s) / 3)};
    p = normalized(p);
    ComplexR prod(1);
    for (const auto& c : conics) prod *= conic_value(c, p);
    ratios.push_back(prod / eval(f, p));
  }
  Real spread = 0;
  for (const auto& r : ratios) spread = std::max(spread, abs(r - ratios[0]) / abs(ratios[0]));
  return spread;
}

KleinPipelineReport run_klein_pipeline(const KleinInvariants& inv, unsigned digits, unsigned max_digits) {
  for (unsigned d = digits; d <= max_digits; d *= 2) {
    try {
      PrecisionScope ps(d + 10);
      KleinPipelineReport rep;
      rep.digits_used = d;
      rep.lines = extract_lines_numeric(inv.phi21, d);
      rep.line_census = numeric_line_census(rep.lines.lines, d);
      for (std::size_t i = 0; i < rep.line_census.points.size(); ++i)
        if (rep.line_census.incident[i].size() == 4) rep.quad_points.push_back(rep.line_census.points[i]);
      rep.steinerian_residual = steinerian_vanishing(inv, rep.quad_points);
      rep.steinerian_ratio = steinerian_ratios(inv, rep.quad_points);
      std::vector<CMat3> conics;
      for (const auto& p : rep.quad_points) {
        rep.splits.push_back(split_reducible_polar(p, inv, rep.lines.lines, d));
        conics.push_back(rep.splits.back().conic);
      }
      rep.conic_census = conic_census_numeric(conics, d);
      rep.product_spread = inv.phi42.is_zero() ? Real(-1) : conic_product_spread(conics, inv.phi42, d);
      return rep;
    } catch (const PrecisionError&) {
      if (d * 2 > max_digits) throw;
    }
  }
  throw PrecisionError("run_klein_pipeline: maximum precision exceeded");
}

}  // namespace klein
