#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klein/arrangement.hpp"
#include "klein/models.hpp"

using namespace klein;

namespace {

using QP = ProjectivePoint<Rational>;
using QL = ProjectiveLine<Rational>;
using QC = Conic<Rational>;

QL ql(int a, int b, int c) { return QL(Rational(a), Rational(b), Rational(c)); }

std::vector<QL> rational_lines(const KleinModel& m, const std::vector<int>& labels) {
  std::vector<QL> out;
  for (const auto& l : m.lines_by_label(labels))
    out.emplace_back(l.c[0].rational_value(), l.c[1].rational_value(), l.c[2].rational_value());
  return out;
}

QC qconic(std::array<Rational, 6> c) { return QC::from_coeffs(c); }

}  // namespace

TEST_CASE("census of the Klein arrangement and of K'") {
  const KleinModel& m = klein_model();
  const auto c = line_census(m.lines);
  CHECK(c.tvector == TVector{{3, 28}, {4, 21}});
  CHECK(format_tvector(c.tvector) == "t4=21, t3=28");
  CHECK(pair_count(c.tvector) == 21 * 20 / 2);
  for (const auto& pc : c.per_curve) CHECK(pc == std::map<int, int>{{3, 4}, {4, 4}});

  const auto k = line_census(m.lines_by_label(m.kprime));
  CHECK(k.tvector == TVector{{2, 30}, {3, 12}});
  CHECK(jacobian_degree(k.tvector) == 78);
  CHECK(pair_count(k.tvector) == 66);
  for (const auto& p : m.kprime_points) CHECK(k.multiplicity(static_cast<std::size_t>(find_point(k, p))) == 3);
}

TEST_CASE("generic and degenerate line census") {
  const auto c = line_census(std::vector<QL>{ql(1, 0, 0), ql(0, 1, 0), ql(0, 0, 1)});
  CHECK(c.tvector == TVector{{2, 3}});
  CHECK(find_point(c, QP(Rational(1), Rational(0), Rational(0))) >= 0);
  CHECK(find_point(c, QP(Rational(1), Rational(1), Rational(1))) == -1);
  CHECK_THROWS(line_census(std::vector<QL>{ql(1, 2, 3), ql(2, 4, 6)}));
}

TEST_CASE("Plucker counts of smooth plane curves") {
  const auto q = plucker_counts(4);
  CHECK(q.dual_degree == 12);
  CHECK(q.nodes == 28);
  CHECK(q.cusps == 24);
  const auto c = plucker_counts(3);
  CHECK(c.dual_degree == 6);
  CHECK(c.nodes == 0);
  CHECK(c.cusps == 9);
  CHECK_THROWS(plucker_counts(2));
}

TEST_CASE("exact conic search") {
  // six points on y^2 = xz, one off it
  std::vector<QP> pts;
  for (int t : {-2, -1, 0, 1, 2, 3}) pts.emplace_back(Rational(1), Rational(t), Rational(t * t));
  pts.emplace_back(Rational(1), Rational(5), Rational(7));
  const auto hits = conic_search_exact(pts, 6);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].subset == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(hits[0].conic == qconic({Rational(0), Rational(0), Rational(1), Rational(-1), Rational(0), Rational(0)}));
  CHECK(conic_search_exact(pts, 7).empty());
  CHECK_THROWS(conic_search_exact(pts, 5));

  // five generic points carry no conic through six
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<QP> gen;
  while (gen.size() < 5) {
    Vec3<Rational> v{Rational(d(rng)), Rational(d(rng)), Rational(1)};
    if (std::find(gen.begin(), gen.end(), QP(v)) == gen.end()) gen.emplace_back(v);
  }
  CHECK(conic_search_exact(gen, 6).empty());

  // a conic containing a line pair is never reported
  std::vector<QP> pair;
  for (int t = 0; t < 4; ++t) pair.emplace_back(Rational(t), Rational(0), Rational(1));
  for (int t = 0; t < 4; ++t) pair.emplace_back(Rational(0), Rational(t + 1), Rational(1));
  CHECK(conic_search_exact(pair, 6).empty());
}

TEST_CASE("transversality of conic pairs") {
  const QC unit = qconic({Rational(1), Rational(0), Rational(0), Rational(1), Rational(0), Rational(-1)});
  const QC shifted = qconic({Rational(1), Rational(0), Rational(-4), Rational(1), Rational(0), Rational(3)});
  const QC hyper = qconic({Rational(1), Rational(0), Rational(0), Rational(-1), Rational(0), Rational(-1, 4)});
  const auto tangent = transversality_check_exact(std::vector<QC>{unit, shifted});
  CHECK_FALSE(tangent.all_transversal);
  CHECK(tangent.tangent_pairs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(transversality_check_exact(std::vector<QC>{unit, hyper}).all_transversal);
  for (unsigned seed : {1u, 2u, 3u}) CHECK(transversality_check_exact(std::vector<QC>{unit, hyper}, seed).all_transversal);
  // the eliminant of two circles is invariant in degree under congruence
  CHECK(conic_pair_eliminant(unit.m, hyper.m).degree() == 4);
}

TEST_CASE("cells of real arrangements") {
  const KleinModel& m = klein_model();
  const auto real9 = rational_lines(m, m.real9);
  const CellCounts c9 = cell_structure(real9);
  CHECK(c9.vertices == 13);
  CHECK(c9.edges == 36);
  CHECK(c9.faces == 24);
  CHECK(is_simplicial(real9));
  CHECK(euler_counts(real9).faces == c9.faces);

  const std::vector<QL> tri{ql(1, 0, 0), ql(0, 1, 0), ql(0, 0, 1)};
  CHECK(is_simplicial(tri));
  CHECK(cell_structure(tri).faces == 4);

  const std::vector<QL> four{ql(1, 0, 0), ql(0, 1, 0), ql(0, 0, 1), ql(1, 1, 1)};
  const CellCounts c4 = cell_structure(four);
  CHECK_FALSE(is_simplicial(four));
  CHECK(c4.face_sizes == std::map<int, int>{{3, 4}, {4, 3}});
  CHECK(euler_counts(four).faces == c4.faces);

  // exact cells of the real Grünbaum-Rigby arrangement agree with Euler
  const GRModel& g = gr_model();
  const CellCounts cg = cell_structure(g.lines);
  const CellCounts eg = euler_counts(g.lines);
  CHECK(cg.vertices == eg.vertices);
  CHECK(cg.edges == eg.edges);
  CHECK(cg.faces == eg.faces);
  int sides = 0;
  for (auto& [k, n] : cg.face_sizes) sides += k * n;
  CHECK(sides == 2 * cg.edges);
}

TEST_CASE("random arrangements satisfy the Euler relation") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<QL> ls;
    while (ls.size() < 6) {
      Vec3<Rational> v{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
      if (is_zero_vec(v)) continue;
      QL l(v);
      if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
    }
    if (line_census(ls).points.size() == 1) continue;
    const CellCounts c = cell_structure(ls);
    CHECK(c.faces == euler_counts(ls).faces);
    CHECK(c.edges == euler_counts(ls).edges);
  }
}
