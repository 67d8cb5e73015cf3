#include "klein/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace klein {

namespace {

using Triple = std::array<const char*, 3>;

// l1..l21
const Triple kKleinLines[21] = {
    {"1", "0", "0"},   {"0", "1", "1"},  {"a", "1", "-1"},  {"a", "-1", "1"},  {"0", "-1", "1"},  {"1", "a", "-1"},
    {"a", "-1", "-1"}, {"-1", "1", "a"}, {"a", "1", "1"},   {"-1", "a", "1"},  {"-1", "-1", "a"}, {"1", "0", "1"},
    {"-1", "a", "-1"}, {"1", "a", "1"},  {"-1", "0", "1"},  {"1", "-1", "a"},  {"1", "1", "a"},   {"0", "0", "1"},
    {"-1", "1", "0"},  {"1", "1", "0"},  {"0", "1", "0"}};

// points 1..49
const Triple kKleinPoints[49] = {
    {"1", "0", "0"},     {"1", "-a-1", "-1"}, {"1", "a+1", "1"},   {"1", "-a-1", "1"},  {"1", "-1", "1+a"},
    {"0", "1", "1"},     {"a+1", "-1", "1"},  {"0", "0", "1"},     {"a+1", "-1", "-1"}, {"a+1", "1", "1"},
    {"1", "0", "-1"},    {"1", "1", "a+1"},   {"1", "-1", "0"},    {"a+1", "1", "-1"},  {"1", "a+1", "-1"},
    {"1", "0", "1"},     {"0", "1", "-1"},    {"1", "1", "0"},     {"1", "-1", "-1-a"}, {"1", "1", "-1-a"},
    {"0", "1", "0"},     {"0", "1", "a"},     {"0", "1", "-a"},    {"a", "-1", "0"},    {"0", "a", "-1"},
    {"-a+1", "1", "-1"}, {"1", "-1", "a-1"},  {"1", "1-a", "1"},   {"a", "1", "0"},     {"1", "-a", "0"},
    {"1", "-1", "1-a"},  {"1", "1", "a-1"},   {"1", "0", "a"},     {"1", "a", "0"},     {"1", "-1", "1"},
    {"1", "a-1", "1"},   {"0", "a", "1"},     {"a-1", "1", "1"},   {"a", "0", "1"},     {"1", "1", "-1"},
    {"1", "1", "1"},     {"1", "0", "-a"},    {"1", "1", "-a+1"},  {"a-1", "1", "-1"},  {"1", "-a+1", "-1"},
    {"1", "a-1", "-1"},  {"a-1", "-1", "-1"}, {"1", "-1", "-1"},   {"a", "0", "-1"}};

// printed triple points of K' (the twelfth entry is defective and recovered)
const Triple kKPrimePoints[11] = {
    {"a-1", "a-1", "-a-3"},  {"a+1", "-a+1", "-a-1"}, {"a-1", "a+1", "-a-1"}, {"-a+1", "a+1", "-a-1"},
    {"-a-1", "a+1", "a-1"},  {"-a-1", "-a+1", "-a-1"}, {"-a-1", "-a+1", "a+1"}, {"a-1", "-a+1", "-a-3"},
    {"a-1", "-a-1", "-a-1"}, {"-a+1", "-a-1", "-a-1"}, {"a+1", "a+1", "-a+1"}};

const Triple kGenerators[5] = {
    {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1", "-a-1", "-1"}, {"1", "-1", "a+1"}};

template <class T>
T make_from(const FieldPtr& f, const Triple& t) {
  return T(parse_linear(f, t[0]), parse_linear(f, t[1]), parse_linear(f, t[2]));
}

}  // namespace

FieldPtr field_qa() {
  static const FieldPtr f = NumberField::create({Rational(2), Rational(1)}, {-0.5, 1.32});
  return f;
}

FieldPtr field_gr() {
  static const FieldPtr f =
      NumberField::create({Rational(-7), Rational(0), Rational(14), Rational(0), Rational(-7), Rational(0)}, {1.95, 0.0});
  return f;
}

FieldElement parse_linear(const FieldPtr& f, const std::string& text, char symbol) {
  Rational c0 = 0, c1 = 0;
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (any) {
      throw std::invalid_argument("parse_linear: expected sign in '" + text + "'");
    }
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    Rational k = j > i ? Rational(text.substr(i, j - i)) : Rational(1);
    i = j;
    if (i < text.size() && text[i] == '*') ++i;
    if (i < text.size() && text[i] == symbol) {
      c1 += sign * k;
      ++i;
    } else {
      if (j == i && j > 0 && !std::isdigit(static_cast<unsigned char>(text[j - 1])))
        throw std::invalid_argument("parse_linear: malformed term in '" + text + "'");
      c0 += sign * k;
    }
    any = true;
  }
  if (!any) throw std::invalid_argument("parse_linear: empty expression");
  return FieldElement(f, {c0, c1});
}

std::vector<FLine> KleinModel::lines_by_label(const std::vector<int>& labels) const {
  std::vector<FLine> out;
  for (int l : labels) out.push_back(lines.at(static_cast<std::size_t>(l - 1)));
  return out;
}

const KleinModel& klein_model() {
  static const KleinModel model = [] {
    KleinModel m;
    m.field = field_qa();
    for (const auto& t : kKleinLines) m.lines.push_back(make_from<FLine>(m.field, t));
    for (const auto& t : kKleinPoints) m.points.push_back(make_from<FPoint>(m.field, t));
    m.kprime = {3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 16, 17};
    for (int l = 1; l <= 21; ++l) {
      const auto& c = m.lines[static_cast<std::size_t>(l - 1)].c;
      if (std::all_of(c.begin(), c.end(), [](const FieldElement& e) { return e.is_rational(); })) m.real9.push_back(l);
    }
    for (const auto& t : kGenerators) m.printed_generators.push_back(make_from<FLine>(m.field, t));
    // H4 and H5 are the complex conjugates of l6 and l8; the seed is taken
    // inside this model's lines.
    m.generator_seed = {1, 21, 18, 6, 8};
    for (std::size_t i = 0; i < m.points.size(); ++i) {
      int on = 0;
      for (const auto& l : m.lines)
        if (incident(m.points[i], l)) ++on;
      const int expected = i < 21 ? 4 : 3;
      if (on != expected)
        throw std::runtime_error("klein_model: point " + std::to_string(i + 1) + " lies on " + std::to_string(on) +
                                 " lines");
      m.flags_checked += on;
    }
    for (const auto& t : kKPrimePoints) m.kprime_points.push_back(make_from<FPoint>(m.field, t));
    m.kprime_point12_printed = "(-a-1:a-1-a-1)";
    // the missing triple point is the one remaining in the census of K'
    const Census<FieldElement> kc = line_census(m.lines_by_label(m.kprime));
    for (std::size_t i = 0; i < kc.points.size(); ++i) {
      if (kc.multiplicity(i) != 3) continue;
      if (std::find(m.kprime_points.begin(), m.kprime_points.end(), kc.points[i]) == m.kprime_points.end())
        m.kprime_points.push_back(kc.points[i]);
    }
    if (m.kprime_points.size() != 12) throw std::runtime_error("klein_model: K' triple points do not match the table");
    return m;
  }();
  return model;
}

IncidenceStructure klein_quadruple_structure(const KleinModel& m) {
  IncidenceStructure s(21, 21);
  for (int p = 0; p < 21; ++p)
    for (int l = 0; l < 21; ++l)
      if (incident(m.points[static_cast<std::size_t>(p)], m.lines[static_cast<std::size_t>(l)])) s.set(p, l);
  return s;
}

IncidenceStructure kprime_structure(const KleinModel& m) {
  const auto lines = m.lines_by_label(m.kprime);
  IncidenceStructure s(12, 12);
  for (int p = 0; p < 12; ++p)
    for (int l = 0; l < 12; ++l)
      if (incident(m.kprime_points[static_cast<std::size_t>(p)], lines[static_cast<std::size_t>(l)])) s.set(p, l);
  return s;
}

const std::vector<std::array<int, 3>>& kprime_extra_triples() {
  static const std::vector<std::array<int, 3>> t = {{7, 11, 13}, {3, 8, 14}, {4, 10, 17}, {6, 9, 16}};
  return t;
}

IncidenceStructure kprime_extended_structure(const KleinModel& m) {
  const IncidenceStructure base = kprime_structure(m);
  const auto& extra = kprime_extra_triples();
  IncidenceStructure s(12 + static_cast<int>(extra.size()), 12);
  for (int p = 0; p < 12; ++p)
    for (int l = 0; l < 12; ++l)
      if (base.has(p, l)) s.set(p, l);
  for (std::size_t e = 0; e < extra.size(); ++e)
    for (int label : extra[e]) {
      const auto it = std::find(m.kprime.begin(), m.kprime.end(), label);
      if (it == m.kprime.end()) throw std::logic_error("kprime_extended_structure: label outside K'");
      s.set(12 + static_cast<int>(e), static_cast<int>(it - m.kprime.begin()));
    }
  return s;
}

RoulleauReport roulleau_conics(const KleinModel& m) {
  const std::vector<FPoint> triple(m.points.begin() + 21, m.points.end());
  RoulleauReport r;
  r.conics = conic_search_exact(triple, 8);
  std::vector<std::vector<int>> blocks;
  std::vector<FConic> cs;
  for (const auto& h : r.conics) {
    blocks.push_back(h.subset);
    cs.push_back(h.conic);
  }
  r.incidence = IncidenceStructure::from_blocks(28, blocks);
  r.type = census_type(r.incidence).text;
  r.transversality = transversality_check_exact(cs);
  const int n = static_cast<int>(cs.size());
  r.pair_intersections = 4 * n * (n - 1) / 2;
  for (int p = 0; p < 28; ++p) r.sextuple_points += r.incidence.blocks_through(p).size() == 6;
  r.derived_double_points = r.pair_intersections - 15 * r.sextuple_points;
  return r;
}

const std::vector<std::vector<int>>& gr_incidence_list() {
  static const std::vector<std::vector<int>> list = {
      {1, 2, 15, 21},  {1, 3, 8, 13},   {1, 6, 9, 14},   {4, 5, 15, 16},  {4, 6, 8, 10},   {8, 11, 15, 18},
      {9, 13, 17, 21}, {11, 14, 16, 20}, {2, 4, 9, 11},   {9, 12, 15, 19}, {3, 5, 12, 14},  {8, 12, 17, 20},
      {10, 13, 16, 19}, {3, 4, 17, 18},  {2, 3, 19, 20},  {10, 14, 18, 21}, {1, 7, 16, 17},  {5, 6, 20, 21},
      {5, 7, 11, 13},  {2, 7, 10, 12},  {6, 7, 18, 19}};
  return list;
}

IncidenceStructure incidence_from_quadruples(const std::vector<std::vector<int>>& quads, int n_lines) {
  IncidenceStructure s(static_cast<int>(quads.size()), n_lines);
  for (std::size_t p = 0; p < quads.size(); ++p)
    for (int l : quads[p]) s.set(static_cast<int>(p), l - 1);
  return s;
}

// ---------------------------------------------------------------------------
// Grünbaum-Rigby

namespace {

/// c(m) = 2cos(m pi/14) by the Chebyshev recurrence c(m+1) = alpha c(m) - c(m-1).
FieldElement two_cos_14(const FieldPtr& f, int m) {
  m = ((m % 28) + 28) % 28;
  FieldElement prev = FieldElement::constant(f, 2), cur = FieldElement::generator(f);
  if (m == 0) return prev;
  for (int k = 1; k < m; ++k) {
    FieldElement next = FieldElement::generator(f) * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void certify_trig(const FieldPtr& f) {
  const FieldElement c1 = gr_cos(f, 1), s1 = gr_sin(f, 1);
  for (int k = 0; k < 14; ++k) {
    const FieldElement c = gr_cos(f, k), s = gr_sin(f, k);
    if (!(c * c + s * s == FieldElement(1))) throw std::runtime_error("gr trig: sin^2 + cos^2 != 1");
    if (!(gr_cos(f, k + 1) == c1 * c - s1 * s) || !(gr_sin(f, k + 1) == s * c1 + c * s1))
      throw std::runtime_error("gr trig: angle addition fails");
    const double x = k * M_PI / 7;
    if (std::abs(approx_double(c).real() - std::cos(x)) > 1e-12 || std::abs(approx_double(s).real() - std::sin(x)) > 1e-12)
      throw std::runtime_error("gr trig: numeric mismatch");
  }
}

}  // namespace

FieldElement gr_cos(const FieldPtr& f, int k) { return two_cos_14(f, 2 * k) * FieldElement(Rational(1, 2)); }
FieldElement gr_sin(const FieldPtr& f, int k) { return two_cos_14(f, 7 - 2 * k) * FieldElement(Rational(1, 2)); }

FieldElement squared_radius(const FPoint& p) {
  if (is_zero(p.c[2])) throw std::domain_error("squared_radius: point at infinity");
  return (p.c[0] * p.c[0] + p.c[1] * p.c[1]) / (p.c[2] * p.c[2]);
}

std::vector<FPoint> GRModel::quadruple_points() const {
  std::vector<FPoint> out;
  for (int i : quadruple) out.push_back(census.points[static_cast<std::size_t>(i)]);
  return out;
}

const GRModel& gr_model() {
  static const GRModel model = [] {
    GRModel m;
    m.field = field_gr();
    const FieldPtr& f = m.field;
    certify_trig(f);
    const FieldElement c1 = gr_cos(f, 1), c2 = gr_cos(f, 2), c4 = gr_cos(f, 4);
    m.p = c4 / c2;
    m.q = (c2 - c1) / (FieldElement(2) * c2 * c1);
    for (int j = 0; j < 7; ++j) {
      m.lines.emplace_back(gr_sin(f, 2 * j), FieldElement(0) - gr_cos(f, 2 * j), FieldElement(1));
      m.names.push_back("A" + std::to_string(j));
    }
    for (int j = 0; j < 7; ++j) {
      m.lines.emplace_back(gr_sin(f, 2 * j + 1), FieldElement(0) - gr_cos(f, 2 * j + 1), FieldElement(0) - m.p);
      m.names.push_back("B" + std::to_string(j));
    }
    for (int j = 0; j < 7; ++j) {
      m.lines.emplace_back(gr_sin(f, 2 * j), FieldElement(0) - gr_cos(f, 2 * j), FieldElement(0) - m.q);
      m.names.push_back("C" + std::to_string(j));
    }
    m.census = line_census(m.lines);
    for (std::size_t i = 0; i < m.census.points.size(); ++i)
      if (m.census.multiplicity(i) == 4) m.quadruple.push_back(static_cast<int>(i));
    // point orbits by decreasing radius
    std::vector<FieldElement> radii;
    for (int i : m.quadruple) {
      FieldElement r = squared_radius(m.census.points[static_cast<std::size_t>(i)]);
      if (std::find(radii.begin(), radii.end(), r) == radii.end()) radii.push_back(r);
    }
    if (radii.size() != 3) throw std::runtime_error("gr_model: quadruple points do not form three orbits");
    std::sort(radii.begin(), radii.end(), [](const FieldElement& a, const FieldElement& b) { return real_sign(a - b) > 0; });
    for (std::size_t k = 0; k < 3; ++k) {
      m.point_orbit_r2[k] = radii[k];
      for (int i : m.quadruple)
        if (squared_radius(m.census.points[static_cast<std::size_t>(i)]) == radii[k]) m.point_orbits[k].push_back(i);
    }
    return m;
  }();
  return model;
}

IncidenceStructure gr_quadruple_structure(const GRModel& m) {
  IncidenceStructure s(static_cast<int>(m.quadruple.size()), static_cast<int>(m.lines.size()));
  for (std::size_t p = 0; p < m.quadruple.size(); ++p)
    for (int l : m.census.curves[static_cast<std::size_t>(m.quadruple[p])]) s.set(static_cast<int>(p), l);
  return s;
}

DoubleOrbits gr_double_orbits(const GRModel& m) {
  DoubleOrbits out;
  std::vector<DoubleOrbit> groups;
  for (std::size_t i = 0; i < m.census.points.size(); ++i) {
    const auto& ls = m.census.curves[i];
    if (ls.size() != 2 || GRModel::orbit_of_line(ls[0]) == GRModel::orbit_of_line(ls[1])) continue;
    const FPoint& p = m.census.points[i];
    if (is_zero(p.c[2])) {
      ++out.at_infinity;
      continue;
    }
    FieldElement r2 = squared_radius(p);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const DoubleOrbit& g) { return g.r2 == r2; });
    if (it == groups.end()) {
      groups.push_back({r2, {p}});
    } else {
      it->points.push_back(p);
    }
  }
  if (groups.size() != 3 || std::any_of(groups.begin(), groups.end(), [](const DoubleOrbit& g) { return g.points.size() != 14; }))
    throw std::runtime_error("gr_double_orbits: cross-orbit double points do not form three 14-point orbits");
  std::sort(groups.begin(), groups.end(), [](const DoubleOrbit& a, const DoubleOrbit& b) { return real_sign(a.r2 - b.r2) < 0; });
  for (std::size_t k = 0; k < 3; ++k) out.orbits[k] = std::move(groups[k]);
  return out;
}

// ---------------------------------------------------------------------------
// Collinear subsets and derived configurations

namespace {

using D3 = std::array<std::complex<double>, 3>;

D3 approx_unit(const Vec3<FieldElement>& v) {
  D3 d{approx_double(v[0]), approx_double(v[1]), approx_double(v[2])};
  const double n = std::sqrt(std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2]));
  for (auto& x : d) x /= n;
  return d;
}

std::complex<double> ddot(const D3& a, const D3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

D3 dcross(const D3& a, const D3& b) {
  D3 c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double n = std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
  for (auto& x : c) x /= n;
  return c;
}

}  // namespace

std::vector<CollinearHit> collinear_ktuples(const std::vector<FPoint>& points, int k) {
  const std::size_t n = points.size();
  if (k < 3 || static_cast<int>(n) < k) throw std::invalid_argument("collinear_ktuples: need |points| >= k >= 3");
  std::vector<D3> pd;
  for (const auto& p : points) pd.push_back(approx_unit(p.c));
  std::set<std::vector<int>> seen_sets;
  std::vector<CollinearHit> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const D3 l = dcross(pd[i], pd[j]);
      std::vector<int> near;
      for (std::size_t t = 0; t < n; ++t)
        if (std::abs(ddot(l, pd[t])) < 1e-8) near.push_back(static_cast<int>(t));
      if (static_cast<int>(near.size()) < k || near[0] != static_cast<int>(i) || near[1] != static_cast<int>(j)) continue;
      FLine line = join(points[i], points[j]);
      std::vector<int> exact;
      for (std::size_t t = 0; t < n; ++t)
        if (incident(points[t], line)) exact.push_back(static_cast<int>(t));
      if (static_cast<int>(exact.size()) >= k && seen_sets.insert(exact).second) out.push_back({line, exact});
    }
  return out;
}

DerivedConfig make_config(std::string name, std::string construction, std::vector<FPoint> points,
                          std::vector<FLine> lines, std::vector<FConic> conics) {
  DerivedConfig c;
  c.name = std::move(name);
  c.construction = std::move(construction);
  c.incidence = IncidenceStructure(static_cast<int>(points.size()), static_cast<int>(lines.size() + conics.size()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t l = 0; l < lines.size(); ++l)
      if (incident(points[p], lines[l])) c.incidence.set(static_cast<int>(p), static_cast<int>(l));
    for (std::size_t q = 0; q < conics.size(); ++q)
      if (on_conic(points[p], conics[q])) c.incidence.set(static_cast<int>(p), static_cast<int>(lines.size() + q));
  }
  c.points = std::move(points);
  c.lines = std::move(lines);
  c.conics = std::move(conics);
  return c;
}

DerivedConfig gr_pair_config(const GRModel& m, int pair) {
  int a = 0, b = 0;
  switch (pair) {
    case 12: a = 0, b = 1; break;
    case 23: a = 1, b = 2; break;
    case 13: a = 0, b = 2; break;
    default: throw std::invalid_argument("gr_pair_config: pair must be 12, 23 or 13");
  }
  const DoubleOrbits d = gr_double_orbits(m);
  std::vector<FPoint> pts = d.orbits[static_cast<std::size_t>(a)].points;
  for (const auto& p : d.orbits[static_cast<std::size_t>(b)].points) pts.push_back(p);
  std::vector<FLine> lines;
  for (auto& h : collinear_ktuples(pts, 4)) lines.push_back(h.line);
  return make_config("GR_d" + std::to_string(pair) + "(28_3,21_4)",
                     "collinear quadruples among the double-point orbits O" + std::to_string(a + 1) + " and O" +
                         std::to_string(b + 1),
                     std::move(pts), std::move(lines));
}

IncidenceSum incidence_sum_49(const DerivedConfig& cfg) {
  const auto& P = cfg.points;
  const auto& L = cfg.lines;
  for (const auto& p : P)
    if (is_zero(p.c[2])) throw std::invalid_argument("incidence_sum_49: point at infinity");
  // candidate k^2 from P_i lying on the polar of P_j
  std::vector<FieldElement> cand;
  std::vector<std::pair<FieldElement, double>> affine;
  std::vector<std::array<double, 2>> pd;
  for (const auto& p : P) {
    FieldElement x = p.c[0] / p.c[2], y = p.c[1] / p.c[2];
    pd.push_back({approx_double(x).real(), approx_double(y).real()});
  }
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> dc;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i; j < P.size(); ++j) {
      const double v = pd[i][0] * pd[j][0] + pd[i][1] * pd[j][1];
      if (v > 1e-9) dc.push_back({v, {i, j}});
    }
  std::sort(dc.begin(), dc.end());
  // distinct values, screened in double precision against the full structure
  std::vector<std::array<double, 3>> ld;
  for (const auto& l : L) ld.push_back({approx_double(l.c[0]).real(), approx_double(l.c[1]).real(), approx_double(l.c[2]).real()});
  auto screen = [&](double k2) {
    std::vector<std::array<double, 3>> pts, lns;
    for (auto& p : pd) pts.push_back({p[0], p[1], 1});
    for (auto& l : ld) {
      pts.push_back({l[0], l[1], -l[2] / k2});
      lns.push_back(l);
    }
    for (auto& p : pd) lns.push_back({p[0], p[1], -k2});
    for (auto& p : pts) {
      int on = 0;
      const double np = std::hypot(p[0], p[1], p[2]);
      for (auto& l : lns)
        if (std::abs(p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) / (np * std::hypot(l[0], l[1], l[2])) < 1e-9) ++on;
      if (on != 4) return false;
    }
    return true;
  };
  IncidenceSum out;
  std::vector<double> distinct;
  for (const auto& [v, ij] : dc) {
    if (!distinct.empty() && std::abs(v - distinct.back()) < 1e-9 * std::max(1.0, v)) continue;
    distinct.push_back(v);
    ++out.candidates;
    if (!screen(v)) continue;
    const FPoint &pi = P[ij.first], &pj = P[ij.second];
    FieldElement k2 = (pi.c[0] * pj.c[0] + pi.c[1] * pj.c[1]) / (pi.c[2] * pj.c[2]);
    Circle<FieldElement> gamma{FieldElement(0), FieldElement(0), k2};
    auto rec = reciprocal_set(P, L, gamma);
    std::vector<FPoint> pts = P;
    pts.insert(pts.end(), rec.points.begin(), rec.points.end());
    std::vector<FLine> lns = L;
    lns.insert(lns.end(), rec.lines.begin(), rec.lines.end());
    DerivedConfig sum = make_config(cfg.name.substr(0, cfg.name.find('(')) + "(49_4)",
                                    "incidence sum of " + cfg.name + " with its reciprocal in a concentric circle",
                                    pts, lns);
    const TypeSignature t = sum.type();
    if (!(t.balanced && t.n_points == 49 && t.point_degrees.begin()->first == 4)) continue;
    out.valid_k2.push_back(k2);
    if (out.valid_k2.size() > 1) continue;
    out.k2 = k2;
    out.config = std::move(sum);
    out.reciprocal = make_config(cfg.name + "^reciprocal", "polar reciprocal of " + cfg.name, rec.points, rec.lines);
    // the polarity must exchange the point set and the line set
    const Conic<FieldElement> g = gamma.conic();
    std::set<FPoint> pset(out.config.points.begin(), out.config.points.end());
    std::set<FLine> lset(out.config.lines.begin(), out.config.lines.end());
    bool ok = true;
    for (const auto& p : out.config.points) ok = ok && lset.count(polar(p, g));
    for (const auto& l : out.config.lines) ok = ok && pset.count(pole(l, g));
    out.self_reciprocal = ok;
  }
  if (out.valid_k2.empty()) throw std::runtime_error("incidence_sum_49: no radius gives a (49_4) configuration");
  return out;
}

Mat3<FieldElement> gr_rotation(const FieldPtr& f) {
  const FieldElement c = gr_cos(f, 2), s = gr_sin(f, 2);
  return {Vec3<FieldElement>{c, FieldElement(0) - s, FieldElement(0)}, Vec3<FieldElement>{s, c, FieldElement(0)},
          Vec3<FieldElement>{FieldElement(0), FieldElement(0), FieldElement(1)}};
}

Mat3<FieldElement> gr_reflection(const FieldPtr& f) {
  const FieldElement c = gr_cos(f, 1), s = gr_sin(f, 1);
  return {Vec3<FieldElement>{c, s, FieldElement(0)}, Vec3<FieldElement>{s, FieldElement(0) - c, FieldElement(0)},
          Vec3<FieldElement>{FieldElement(0), FieldElement(0), FieldElement(1)}};
}

std::vector<int> point_permutation(const std::vector<FPoint>& pts, const Mat3<FieldElement>& t) {
  std::map<FPoint, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index.emplace(pts[i], static_cast<int>(i));
  std::vector<int> perm;
  for (const auto& p : pts) {
    auto it = index.find(FPoint(mat_vec(t, p.c)));
    if (it == index.end()) throw std::runtime_error("point_permutation: map does not preserve the point set");
    perm.push_back(it->second);
  }
  return perm;
}

HalfOrbitResult half_orbit_42_config(const GRModel& m) {
  const DoubleOrbits d = gr_double_orbits(m);
  const Mat3<FieldElement> rot = gr_rotation(m.field);
  std::array<std::array<std::vector<FPoint>, 2>, 3> halves;
  for (std::size_t o = 0; o < 3; ++o) {
    const auto& pts = d.orbits[o].points;
    const std::vector<int> perm = point_permutation(pts, rot);
    std::vector<char> in_first(pts.size(), 0);
    int i = 0;
    do {
      in_first[static_cast<std::size_t>(i)] = 1;
      i = perm[static_cast<std::size_t>(i)];
    } while (i != 0);
    for (std::size_t k = 0; k < pts.size(); ++k) halves[o][in_first[k] ? 0 : 1].push_back(pts[k]);
    if (halves[o][0].size() != 7 || halves[o][1].size() != 7)
      throw std::runtime_error("half_orbit_42_config: a double orbit does not split into two rotation orbits");
  }
  HalfOrbitResult out;
  const std::vector<FPoint> quad = m.quadruple_points();
  for (int choice = 0; choice < 8; ++choice) {
    std::vector<FPoint> pts = quad;
    for (std::size_t o = 0; o < 3; ++o) {
      const auto& h = halves[o][static_cast<std::size_t>((choice >> o) & 1)];
      pts.insert(pts.end(), h.begin(), h.end());
    }
    auto hits = collinear_ktuples(pts, 6);
    if (hits.size() != 28) continue;
    if (std::any_of(hits.begin(), hits.end(), [](const CollinearHit& h) { return h.subset.size() != 6; })) continue;
    std::vector<FLine> lines;
    for (auto& h : hits) lines.push_back(h.line);
    DerivedConfig c = make_config("GR(42_4,28_6)", "quadruple points with one rotation orbit from each double orbit",
                                  std::move(pts), std::move(lines));
    const TypeSignature t = c.type();
    if (!(t.regular && t.point_degrees.begin()->first == 4)) continue;
    out.successful_choices.push_back(choice);
    if (out.choice < 0) {
      out.choice = choice;
      out.config = std::move(c);
    }
  }
  if (out.choice < 0) throw std::runtime_error("half_orbit_42_config: no halving gives a (42_4,28_6) configuration");
  return out;
}

std::array<SubConfig, 3> subconfigs_14_2_7_4(const GRModel& m) {
  std::array<SubConfig, 3> out;
  for (int o = 0; o < 3; ++o) {
    SubConfig& s = out[static_cast<std::size_t>(o)];
    s.line_orbit = o;
    std::vector<int> pts;
    std::set<int> orbits;
    for (std::size_t k = 0; k < 3; ++k)
      for (int i : m.point_orbits[k]) {
        const auto& ls = m.census.curves[static_cast<std::size_t>(i)];
        const auto cnt = std::count_if(ls.begin(), ls.end(), [&](int l) { return GRModel::orbit_of_line(l) == o; });
        if (cnt == 0) continue;
        if (cnt != 2) throw std::runtime_error("subconfigs: a quadruple point meets an orbit in one line");
        pts.push_back(i);
        orbits.insert(static_cast<int>(k) + 1);
      }
    if (orbits.size() != 2 || pts.size() != 14) throw std::runtime_error("subconfigs: unexpected point orbits");
    s.point_orbits = {*orbits.begin(), *orbits.rbegin()};
    s.name = "S" + std::to_string(s.point_orbits[0]) + std::to_string(s.point_orbits[1]);
    s.incidence = IncidenceStructure(14, 7);
    for (std::size_t p = 0; p < pts.size(); ++p)
      for (int l : m.census.curves[static_cast<std::size_t>(pts[p])])
        if (GRModel::orbit_of_line(l) == o) s.incidence.set(static_cast<int>(p), l - 7 * o);
    // Star type: the outermost points are the vertices of {7/k}, where
    // R^2 cos^2(k pi/7) equals the squared incircle radius of the lines.
    const FLine& l0 = m.lines[static_cast<std::size_t>(7 * o)];
    const FieldElement d2 = l0.c[2] * l0.c[2] / (l0.c[0] * l0.c[0] + l0.c[1] * l0.c[1]);
    const FieldElement R2 = m.point_orbit_r2[static_cast<std::size_t>(s.point_orbits[0] - 1)];
    for (int k = 1; k <= 3; ++k) {
      const FieldElement c = gr_cos(m.field, k);
      if (R2 * c * c == d2) s.star = k;
    }
  }
  std::sort(out.begin(), out.end(), [](const SubConfig& a, const SubConfig& b) { return a.name < b.name; });
  return out;
}

// ---------------------------------------------------------------------------
// Point-conic configurations

std::vector<ConicOrbit> conic_orbits(const ConicFamily& fam, const std::vector<std::vector<int>>& perms) {
  std::map<std::vector<int>, int> by_subset;
  for (std::size_t i = 0; i < fam.hits.size(); ++i) by_subset.emplace(fam.hits[i].subset, static_cast<int>(i));
  std::vector<char> done(fam.hits.size(), 0);
  std::vector<ConicOrbit> out;
  for (std::size_t i = 0; i < fam.hits.size(); ++i) {
    if (done[i]) continue;
    ConicOrbit orb;
    std::vector<int> frontier{static_cast<int>(i)};
    done[i] = 1;
    while (!frontier.empty()) {
      const int c = frontier.back();
      frontier.pop_back();
      orb.conics.push_back(c);
      for (const auto& g : perms) {
        std::vector<int> img;
        for (int p : fam.hits[static_cast<std::size_t>(c)].subset) img.push_back(g[static_cast<std::size_t>(p)]);
        std::sort(img.begin(), img.end());
        auto it = by_subset.find(img);
        if (it == by_subset.end()) throw std::runtime_error("conic_orbits: family is not symmetric");
        if (!done[static_cast<std::size_t>(it->second)]) {
          done[static_cast<std::size_t>(it->second)] = 1;
          frontier.push_back(it->second);
        }
      }
    }
    std::sort(orb.conics.begin(), orb.conics.end());
    orb.kind = conic_classify(fam.hits[static_cast<std::size_t>(orb.conics[0])].conic);
    std::map<int, int> cover;
    for (int c : orb.conics)
      for (int p : fam.hits[static_cast<std::size_t>(c)].subset) ++cover[p];
    orb.points_covered = static_cast<int>(cover.size());
    orb.two_fold_cover = std::all_of(cover.begin(), cover.end(), [](const auto& kv) { return kv.second == 2; });
    out.push_back(std::move(orb));
  }
  return out;
}

PointConicConfig point_conic_config(const std::string& name, const ConicFamily& fam, const std::vector<int>& orbits) {
  std::vector<std::vector<int>> blocks;
  for (int o : orbits)
    for (int c : fam.orbits[static_cast<std::size_t>(o)].conics) blocks.push_back(fam.hits[static_cast<std::size_t>(c)].subset);
  PointConicConfig pc;
  pc.name = name;
  pc.orbits = orbits;
  pc.incidence = IncidenceStructure::from_blocks(static_cast<int>(fam.points.size()), blocks);
  pc.type = census_type(pc.incidence).text;
  return pc;
}

std::vector<std::vector<int>> balanced_orbit_unions(const ConicFamily& fam, int n_conics, int degree) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(fam.orbits.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    int count = 0;
    std::vector<int> sel;
    for (int o = 0; o < n; ++o)
      if (mask >> o & 1) {
        sel.push_back(o);
        count += static_cast<int>(fam.orbits[static_cast<std::size_t>(o)].conics.size());
      }
    if (count != n_conics) continue;
    std::vector<int> deg(fam.points.size(), 0);
    for (int o : sel)
      for (int c : fam.orbits[static_cast<std::size_t>(o)].conics)
        for (int p : fam.hits[static_cast<std::size_t>(c)].subset) ++deg[static_cast<std::size_t>(p)];
    if (std::all_of(deg.begin(), deg.end(), [&](int d) { return d == degree; })) out.push_back(sel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConicFamily gr_conic_family(const GRModel& m, std::string source, std::vector<FPoint> points, int exactly) {
  ConicFamily fam;
  fam.source = std::move(source);
  fam.points = std::move(points);
  for (auto& h : conic_search_exact(fam.points, exactly))
    if (static_cast<int>(h.subset.size()) == exactly) fam.hits.push_back(std::move(h));
  const std::vector<std::vector<int>> perms{point_permutation(fam.points, gr_rotation(m.field)),
                                            point_permutation(fam.points, gr_reflection(m.field))};
  fam.orbits = conic_orbits(fam, perms);
  return fam;
}

namespace {

std::string kinds_of(const ConicFamily& fam, const std::vector<int>& orbits) {
  std::string s;
  for (int o : orbits) s += fam.orbits[static_cast<std::size_t>(o)].kind == ConicKind::Ellipse ? 'E' : 'H';
  return s;
}

}  // namespace

PointConicCatalog point_conic_configs(const GRModel& m, bool with49) {
  PointConicCatalog cat;
  // (21_7) from conics through seven quadruple points
  cat.on21 = gr_conic_family(m, "GR quadruple points", m.quadruple_points(), 7);
  for (auto& sel : balanced_orbit_unions(cat.on21, 21, 7)) {
    auto pc = point_conic_config("GR(21_7)#" + std::to_string(cat.configs21.size() + 1), cat.on21, sel);
    pc.resolution = resolvable(pc.incidence, 7);
    cat.configs21.push_back(std::move(pc));
  }
  // (28_8) from GR_d12
  const DerivedConfig d12 = gr_pair_config(m, 12);
  cat.on28 = gr_conic_family(m, d12.name, d12.points, 8);
  std::vector<int> all28(cat.on28.orbits.size());
  std::iota(all28.begin(), all28.end(), 0);
  cat.config28 = point_conic_config("GR_d12(28_8)", cat.on28, all28);
  for (std::size_t drop = 0; drop < all28.size(); ++drop) {
    std::vector<int> keep;
    for (int o : all28)
      if (o != static_cast<int>(drop)) keep.push_back(o);
    cat.deletions28.push_back(point_conic_config("GR_d12(28_8) without orbit " + std::to_string(drop + 1), cat.on28, keep));
  }
  if (!with49) return cat;
  // (49_8): search the incidence sums of every pair and radius until one
  // carries a balanced union of conic orbits with eight conics per point.
  for (int pair : {12, 23, 13}) {
    const DerivedConfig base = gr_pair_config(m, pair);
    const IncidenceSum first = incidence_sum_49(base);
    for (const auto& k2 : first.valid_k2) {
      Circle<FieldElement> gamma{FieldElement(0), FieldElement(0), k2};
      auto rec = reciprocal_set(base.points, base.lines, gamma);
      std::vector<FPoint> pts = base.points;
      pts.insert(pts.end(), rec.points.begin(), rec.points.end());
      ConicFamily fam = gr_conic_family(m, "GR_d" + std::to_string(pair) + "(49_4) k^2=" + approx_string(k2, 9), pts, 8);
      auto sols = balanced_orbit_unions(fam, 49, 8);
      cat.attempts49.push_back(fam.source + ": " + std::to_string(fam.hits.size()) + " conics, " +
                               std::to_string(fam.orbits.size()) + " orbits, " + std::to_string(sols.size()) +
                               " balanced unions");
      if (sols.empty()) continue;
      // among the balanced unions take the first with the most ellipse orbits
      std::vector<int> pick = sols.front();
      long best = -1;
      for (const auto& s : sols) {
        const std::string k = kinds_of(fam, s);
        const long e = std::count(k.begin(), k.end(), 'E');
        if (e > best) {
          best = e;
          pick = s;
        }
      }
      cat.source49 = fam.source;
      cat.solutions49 = sols;
      cat.config49 = point_conic_config("GR(49_8)", fam, pick);
      // (28_4, 14_8): two orbits whose conics cover 28 points four times
      const int no = static_cast<int>(fam.orbits.size());
      for (int i = 0; i < no && !cat.config28_14; ++i)
        for (int j = i + 1; j < no && !cat.config28_14; ++j) {
          std::map<int, int> cover;
          for (int o : {i, j})
            for (int c : fam.orbits[static_cast<std::size_t>(o)].conics)
              for (int p : fam.hits[static_cast<std::size_t>(c)].subset) ++cover[p];
          if (cover.size() != 28 || std::any_of(cover.begin(), cover.end(), [](const auto& kv) { return kv.second != 4; }))
            continue;
          std::vector<int> idx;
          for (auto& [p, c] : cover) idx.push_back(p);
          std::vector<std::vector<int>> blocks;
          for (int o : {i, j})
            for (int c : fam.orbits[static_cast<std::size_t>(o)].conics) {
              std::vector<int> b;
              for (int p : fam.hits[static_cast<std::size_t>(c)].subset)
                b.push_back(static_cast<int>(std::lower_bound(idx.begin(), idx.end(), p) - idx.begin()));
              blocks.push_back(b);
            }
          PointConicConfig pc;
          pc.name = "GR(28_4,14_8)";
          pc.orbits = {i, j};
          pc.incidence = IncidenceStructure::from_blocks(28, blocks);
          pc.type = census_type(pc.incidence).text;
          cat.config28_14 = std::move(pc);
        }
      cat.on49 = std::move(fam);
      return cat;
    }
  }
  return cat;
}

}  // namespace klein
