#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "klein/arrangement.hpp"
#include "klein/incidence.hpp"
#include "klein/models.hpp"

using namespace klein;

namespace {

IncidenceStructure fano() {
  return IncidenceStructure::from_blocks(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

IncidenceStructure permuted(const IncidenceStructure& s, std::mt19937& rng) {
  std::vector<int> pp(static_cast<std::size_t>(s.n_points())), bp(static_cast<std::size_t>(s.n_blocks()));
  std::iota(pp.begin(), pp.end(), 0);
  std::iota(bp.begin(), bp.end(), 0);
  std::shuffle(pp.begin(), pp.end(), rng);
  std::shuffle(bp.begin(), bp.end(), rng);
  IncidenceStructure t(s.n_points(), s.n_blocks());
  for (int p = 0; p < s.n_points(); ++p)
    for (int b = 0; b < s.n_blocks(); ++b)
      if (s.has(p, b)) t.set(pp[static_cast<std::size_t>(p)], bp[static_cast<std::size_t>(b)]);
  return t;
}

template <class S>
GeometricLattice lattice_of(const std::vector<ProjectiveLine<S>>& lines) {
  const auto c = line_census(lines);
  return GeometricLattice(static_cast<int>(lines.size()), c.curves);
}

/// Fixpoint closure written independently: repeat full passes until stable.
bool generates_naive(const GeometricLattice& L, const std::vector<int>& seed) {
  std::set<int> ls(seed.begin(), seed.end()), ps;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a : ls)
      for (int b : ls)
        if (a != b && ps.insert(L.meet(a, b)).second) grew = true;
    for (int p : ps)
      for (int q : ps) {
        if (p == q) continue;
        const int l = L.join(p, q);
        if (l >= 0 && ls.insert(l).second) grew = true;
      }
  }
  return static_cast<int>(ls.size()) == L.n_lines();
}

int g_naive(const GeometricLattice& L) {
  const int n = L.n_lines();
  for (int k = 1; k <= n; ++k) {
    std::vector<char> sel(static_cast<std::size_t>(n), 0);
    std::fill(sel.begin(), sel.begin() + k, 1);
    do {
      std::vector<int> seed;
      for (int i = 0; i < n; ++i)
        if (sel[static_cast<std::size_t>(i)]) seed.push_back(i);
      if (generates_naive(L, seed)) return k;
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  return -1;
}

using QL = ProjectiveLine<Rational>;

}  // namespace

TEST_CASE("type signatures and duality") {
  const auto f = fano();
  const TypeSignature t = census_type(f);
  CHECK(t.text == "(7_3)");
  CHECK(t.regular);
  CHECK(t.balanced);
  CHECK(f.flag_count() == 21);
  CHECK_FALSE(f.has_repeated_blocks());

  const KleinModel& m = klein_model();
  const auto k = klein_quadruple_structure(m);
  CHECK(census_type(k).text == "(21_4)");

  // 28 triple points against the 21 lines
  IncidenceStructure tri(28, 21);
  for (int p = 0; p < 28; ++p)
    for (int l = 0; l < 21; ++l)
      if (incident(m.points[static_cast<std::size_t>(21 + p)], m.lines[static_cast<std::size_t>(l)])) tri.set(p, l);
  const TypeSignature tt = census_type(tri);
  CHECK(tt.text == "(28_3,21_4)");
  CHECK(tt.regular);
  CHECK_FALSE(tt.balanced);
  CHECK(census_type(dual(tri)).text == "(21_4,28_3)");
  CHECK(dual(dual(tri)) == tri);

  const auto irregular = IncidenceStructure::from_blocks(3, {{0, 1, 2}, {0, 1}});
  const TypeSignature ti = census_type(irregular);
  CHECK_FALSE(ti.regular);
  CHECK(ti.point_degrees == std::map<int, int>{{1, 1}, {2, 2}});
  CHECK(IncidenceStructure::from_blocks(2, {{0, 1}, {1, 0}}).has_repeated_blocks());
}

TEST_CASE("isomorphism with witnesses") {
  std::mt19937 rng(3);
  const auto f = fano();
  for (int i = 0; i < 5; ++i) {
    const auto g = permuted(f, rng);
    const auto w = isomorphic(f, g);
    REQUIRE(w);
    CHECK(verify_isomorphism(f, g, *w));
  }
  // Fano plane is self-dual
  CHECK(isomorphic(f, dual(f)));

  const KleinModel& m = klein_model();
  const auto k = klein_quadruple_structure(m);
  const auto kp = permuted(k, rng);
  const auto w = isomorphic(k, kp);
  REQUIRE(w);
  CHECK(verify_isomorphism(k, kp, *w));
  CHECK(isomorphic(kp, k));

  // same type, different structure: a hexagon against two triangles
  const auto hex = IncidenceStructure::from_blocks(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  const auto two = IncidenceStructure::from_blocks(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK(census_type(hex).text == census_type(two).text);
  CHECK_FALSE(isomorphic(hex, two));
  CHECK_FALSE(isomorphic(two, hex));
  CHECK_FALSE(isomorphic(f, hex));

  // a wrong witness is rejected
  Isomorphism bad = *w;
  std::swap(bad.point_map[0], bad.point_map[1]);
  CHECK_FALSE(verify_isomorphism(k, kp, bad));
}

TEST_CASE("resolvability") {
  const auto s = IncidenceStructure::from_blocks(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}});
  const auto r = resolvable(s, 2);
  REQUIRE(r);
  CHECK(verify_resolution(s, *r));
  CHECK(r->size() == 2);
  CHECK_FALSE(resolvable(IncidenceStructure::from_blocks(3, {{0, 1}, {1, 2}, {2, 0}}), 1));
  CHECK_FALSE(resolvable(fano(), 1));
  CHECK_FALSE(verify_resolution(s, {{0, 2}, {1, 3}}));
}

TEST_CASE("generation closure") {
  const std::vector<QL> tri{QL(Rational(1), Rational(0), Rational(0)), QL(Rational(0), Rational(1), Rational(0)),
                            QL(Rational(0), Rational(0), Rational(1))};
  const GeometricLattice L = lattice_of(tri);
  const ClosureReport two = generation_closure(L, {0, 1});
  CHECK_FALSE(two.generates);
  CHECK(two.lines == std::vector<int>{0, 1});
  CHECK(two.points.size() == 1);
  const ClosureReport all = generation_closure(L, {0, 1, 2});
  CHECK(all.generates);
  CHECK(all.points.size() == 3);
  const GenerationReport g = generation_number(L);
  CHECK(g.g == 3);
  CHECK(g.witness == std::vector<int>{0, 1, 2});
  CHECK_THROWS(GeometricLattice(3, {{0, 1}, {1, 2}}));

  const KleinModel& m = klein_model();
  const GeometricLattice K = lattice_of(m.lines);
  std::vector<int> seed;
  for (int l : m.generator_seed) seed.push_back(l - 1);
  const ClosureReport kc = generation_closure(K, seed);
  CHECK(kc.generates);
  CHECK(kc.points.size() == 49);
  const ClosureReport full = generation_closure(K, kc.lines);
  CHECK(full.lines == kc.lines);
}

TEST_CASE("generation number agrees with a naive closure") {
  // near-pencil: four concurrent lines and one transversal
  const std::vector<QL> pencil{QL(Rational(1), Rational(0), Rational(0)), QL(Rational(0), Rational(1), Rational(0)),
                               QL(Rational(1), Rational(1), Rational(0)), QL(Rational(1), Rational(-1), Rational(0)),
                               QL(Rational(0), Rational(0), Rational(1))};
  const GeometricLattice P = lattice_of(pencil);
  CHECK(generation_number(P).g == g_naive(P));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<QL> ls;
    while (ls.size() < 7) {
      Vec3<Rational> v{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
      if (is_zero_vec(v)) continue;
      QL l(v);
      if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
    }
    const GeometricLattice L = lattice_of(ls);
    const GenerationReport r = generation_number(L);
    CHECK(r.g == g_naive(L));
    CHECK(generates_naive(L, r.witness));
  }
}

TEST_CASE("moduli ideal export") {
  const auto& igr = gr_incidence_list();
  const ModuliIdeal mi = moduli_ideal_export(21, igr);
  CHECK(mi.listed_before_dedup == 84);
  CHECK(mi.generators.size() == 84);
  CHECK(mi.inequations.size() == 1330 - 84);
  CHECK(mi.text().rfind("# ideal I: 84", 0) == 0);

  const ModuliIdeal t = moduli_ideal_export(3, {});
  CHECK(t.generators.empty());
  REQUIRE(t.inequations.size() == 1);
  CHECK(t.inequations[0] ==
        "x_1_1*x_2_2*x_3_3 - x_1_1*x_2_3*x_3_2 - x_1_2*x_2_1*x_3_3 + x_1_2*x_2_3*x_3_1 + x_1_3*x_2_1*x_3_2 - "
        "x_1_3*x_2_2*x_3_1");

  // identity pins leave a constant nonzero inequation
  std::map<std::pair<int, int>, int> id;
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) id[{r, c}] = r == c ? 1 : 0;
  CHECK(moduli_ideal_export(3, {}, id).inequations[0] == "1");
  CHECK_THROWS(moduli_ideal_export(3, {{1, 2, 3}}, id));
  CHECK_THROWS(moduli_ideal_export(4, {{1, 2, 3}, {1, 2, 4}}));
  CHECK_THROWS(moduli_ideal_export(3, {{1, 2, 5}}));
}
