#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "klein/models.hpp"

using namespace klein;

TEST_CASE("linear expressions in the generator") {
  const FieldPtr f = field_qa();
  const FieldElement a = FieldElement::generator(f);
  CHECK(parse_linear(f, "-a-1") == FieldElement(0) - a - FieldElement(1));
  CHECK(parse_linear(f, "1-a") == FieldElement(1) - a);
  CHECK(parse_linear(f, "2a+3") == FieldElement(2) * a + FieldElement(3));
  CHECK(parse_linear(f, "1+a") == parse_linear(f, "a+1"));
  CHECK(parse_linear(f, "0") == FieldElement(0));
  CHECK_THROWS(parse_linear(f, ""));
  CHECK_THROWS(parse_linear(f, "a b"));
  // a^2 + a + 2 = 0
  CHECK(is_zero(a * a + a + FieldElement(2)));
}

TEST_CASE("Klein model tables") {
  const KleinModel& m = klein_model();
  CHECK(m.lines.size() == 21);
  CHECK(m.points.size() == 49);
  CHECK(m.flags_checked == 21 * 4 + 28 * 3);
  CHECK(m.real9 == std::vector<int>{1, 2, 5, 12, 15, 18, 19, 20, 21});
  REQUIRE(m.kprime_points.size() == 12);
  const FieldPtr f = m.field;
  CHECK(m.kprime_points[11] == FPoint(parse_linear(f, "-a-1"), parse_linear(f, "a-1"), parse_linear(f, "-a-1")));
  // H4 and H5 are conjugate to l6 and l8
  const FieldElement abar = parse_linear(f, "-1-a");
  CHECK(m.printed_generators[3] == conjugate_object(m.lines[5], abar));
  CHECK(m.printed_generators[4] == conjugate_object(m.lines[7], abar));
  CHECK(std::find(m.lines.begin(), m.lines.end(), m.printed_generators[3]) == m.lines.end());
}

TEST_CASE("Grünbaum-Rigby model") {
  const GRModel& g = gr_model();
  CHECK(g.lines.size() == 21);
  CHECK(g.census.tvector == TVector{{2, 63}, {3, 7}, {4, 21}});
  CHECK(std::abs(approx_double(g.p).real() + 0.356895868) < 1e-8);
  CHECK(std::abs(approx_double(g.q).real() + 0.246979604) < 1e-8);
  const double r[3] = {1.603875472, 1.109916264, 0.396124528};
  for (int k = 0; k < 3; ++k) {
    CHECK(g.point_orbits[static_cast<std::size_t>(k)].size() == 7);
    CHECK(std::abs(std::sqrt(approx_double(g.point_orbit_r2[static_cast<std::size_t>(k)]).real()) - r[k]) < 1e-8);
  }
  // the exact structure matches the printed incidence list and the Klein one
  const auto s = gr_quadruple_structure(g);
  const auto w = isomorphic(s, incidence_from_quadruples(gr_incidence_list(), 21));
  REQUIRE(w);
  CHECK(verify_isomorphism(s, incidence_from_quadruples(gr_incidence_list(), 21), *w));
  CHECK(isomorphic(s, klein_quadruple_structure(klein_model())));

  // D7 symmetry permutes the quadruple points
  const auto pts = g.quadruple_points();
  const auto rot = point_permutation(pts, gr_rotation(g.field));
  const auto ref = point_permutation(pts, gr_reflection(g.field));
  std::vector<int> id(pts.size());
  std::iota(id.begin(), id.end(), 0);
  CHECK(rot != id);
  std::vector<int> r7 = id;
  for (int i = 0; i < 7; ++i)
    for (auto& x : r7) x = rot[static_cast<std::size_t>(x)];
  CHECK(r7 == id);
  std::vector<int> r2 = id;
  for (auto& x : r2) x = ref[static_cast<std::size_t>(ref[static_cast<std::size_t>(x)])];
  CHECK(r2 == id);
}

TEST_CASE("double orbits and derived line configurations") {
  const GRModel& g = gr_model();
  const DoubleOrbits d = gr_double_orbits(g);
  CHECK(d.at_infinity == 0);
  const double r2[3] = {0.48799, 1.01900, 8.0};
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(approx_double(d.orbits[static_cast<std::size_t>(k)].r2).real() - r2[k]) < 1e-4);
  CHECK(d.orbits[2].r2 == FieldElement(8));

  for (int pair : {12, 23, 13}) {
    const DerivedConfig c = gr_pair_config(g, pair);
    CHECK(c.type().text == "(28_3,21_4)");
  }
  CHECK_THROWS(gr_pair_config(g, 11));

  const IncidenceSum s = incidence_sum_49(gr_pair_config(g, 12));
  CHECK(s.config.type().text == "(49_4)");
  CHECK(s.self_reciprocal);
  CHECK(s.valid_k2.size() == 3);
  CHECK(std::abs(approx_double(s.k2).real() - 0.337044565) < 1e-8);
  for (const auto& k2 : s.valid_k2) CHECK(real_sign(k2 - s.k2) >= 0);

  const HalfOrbitResult h = half_orbit_42_config(g);
  CHECK(h.config.type().text == "(42_4,28_6)");
  CHECK(h.successful_choices.size() == 2);

  const auto subs = subconfigs_14_2_7_4(g);
  CHECK(subs[0].name == "S12");
  CHECK(subs[0].star == 2);
  CHECK(subs[1].name == "S13");
  CHECK(subs[1].star == 3);
  CHECK(subs[2].name == "S23");
  CHECK(subs[2].star == 3);
  for (const auto& sc : subs) CHECK(census_type(sc.incidence).text == "(14_2,7_4)");
  CHECK(isomorphic(subs[0].incidence, subs[1].incidence));
  CHECK(isomorphic(subs[1].incidence, subs[2].incidence));
}

TEST_CASE("collinear subsets") {
  const GRModel& g = gr_model();
  const auto pts = g.quadruple_points();
  const auto hits = collinear_ktuples(pts, 4);
  CHECK(hits.size() == 21);
  for (const auto& h : hits) {
    CHECK(h.subset.size() == 4);
    CHECK(std::find(g.lines.begin(), g.lines.end(), h.line) != g.lines.end());
  }
  CHECK_THROWS(collinear_ktuples(pts, 2));
}

TEST_CASE("point-conic configurations") {
  const GRModel& g = gr_model();
  const PointConicCatalog cat = point_conic_configs(g, true);
  CHECK(cat.on21.hits.size() == 45);
  REQUIRE(cat.configs21.size() == 2);
  int resolvable_count = 0;
  for (const auto& c : cat.configs21) {
    CHECK(c.type == "(21_7)");
    if (c.resolution) {
      ++resolvable_count;
      CHECK(verify_resolution(c.incidence, *c.resolution));
    }
  }
  CHECK(resolvable_count == 1);

  CHECK(cat.on28.hits.size() == 28);
  CHECK(cat.config28.type == "(28_8)");
  for (const auto& o : cat.on28.orbits) CHECK(o.two_fold_cover);
  REQUIRE(cat.deletions28.size() == 4);
  for (const auto& c : cat.deletions28) CHECK(c.type == "(28_6,21_8)");
  for (const auto& hit : cat.on28.hits) CHECK(is_smooth(hit.conic));

  REQUIRE(cat.config49);
  CHECK(cat.config49->type == "(49_8)");
  CHECK(cat.solutions49.size() == 18);
  int ellipses = 0;
  for (int o : cat.config49->orbits) ellipses += cat.on49.orbits[static_cast<std::size_t>(o)].kind == ConicKind::Ellipse;
  CHECK(ellipses == 3);
  CHECK(cat.config49->orbits.size() == 7);
  // no radius of the first pair carries a balanced union
  REQUIRE(cat.attempts49.size() == 7);
  for (int i = 0; i < 3; ++i) CHECK(cat.attempts49[static_cast<std::size_t>(i)].find(" 0 balanced unions") != std::string::npos);
  CHECK(cat.source49.rfind("GR_d13", 0) == 0);
  REQUIRE(cat.config28_14);
  CHECK(cat.config28_14->type == "(28_4,14_8)");
}

TEST_CASE("conics through eight Klein triple points") {
  const RoulleauReport r = roulleau_conics(klein_model());
  CHECK(r.conics.size() == 21);
  CHECK(r.type == "(28_6,21_8)");
  for (const auto& h : r.conics) {
    CHECK(h.subset.size() == 8);
    CHECK(is_smooth(h.conic));
  }
  CHECK(r.transversality.all_transversal);
  CHECK(r.pair_intersections == 840);
  CHECK(r.sextuple_points == 28);
  CHECK(r.derived_double_points == 420);
  // five points of a hit determine it and it carries three more
  const auto& h = r.conics.front();
  const KleinModel& m = klein_model();
  std::array<FPoint, 5> five;
  for (std::size_t i = 0; i < 5; ++i) five[i] = m.points[static_cast<std::size_t>(21 + h.subset[i])];
  const FConic c = conic_through_5(five);
  CHECK(c == h.conic);
  int on = 0;
  for (int i = 21; i < 49; ++i) on += on_conic(m.points[static_cast<std::size_t>(i)], c);
  CHECK(on == 8);
}
