#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klein/models.hpp"
#include "klein/realize.hpp"

using namespace klein;

namespace {

template <class P, class L>
Realization from_exact(const std::vector<P>& pts, const std::vector<L>& lines) {
  Realization r;
  for (const auto& p : pts) r.points.emplace_back(approx_double(p.c[0]), approx_double(p.c[1]), approx_double(p.c[2]));
  for (const auto& l : lines) r.lines.emplace_back(approx_double(l.c[0]), approx_double(l.c[1]), approx_double(l.c[2]));
  return r;
}

Eigen::Matrix3cd random_projectivity(std::mt19937& rng, double size) {
  std::normal_distribution<double> g(0.0, size);
  Eigen::Matrix3cd t = Eigen::Matrix3cd::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) += g(rng);
  return t;
}

IncidenceStructure pappus() {
  return IncidenceStructure::from_blocks(
      9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {1, 5, 6}, {2, 4, 6}, {0, 5, 7}, {2, 3, 7}, {0, 4, 8}, {1, 3, 8}});
}

IncidenceStructure complete_quadrilateral(int n) {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n));
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      blocks[static_cast<std::size_t>(i)].push_back(p);
      blocks[static_cast<std::size_t>(j)].push_back(p);
      ++p;
    }
  return IncidenceStructure::from_blocks(p, blocks);
}

}  // namespace

TEST_CASE("realizing small structures") {
  const auto tri = IncidenceStructure::from_blocks(3, {{0, 1}, {1, 2}, {0, 2}});
  const RealizeReport t = realize_structure(tri);
  CHECK(t.success);
  CHECK(t.seed_index == 0);
  CHECK(t.residual < 1e-10);

  const auto fano = IncidenceStructure::from_blocks(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  const RealizeReport f = realize_structure(fano);
  CHECK_FALSE(f.success);
  CHECK(f.residual > 1e-3);
  CHECK(f.seeds_tried == 16);

  const RealizeReport p = realize_structure(pappus());
  CHECK(p.success);
  CHECK(realization_residual(p.best, pappus()) == doctest::Approx(p.residual));

  CHECK_THROWS(realize_structure(IncidenceStructure::from_blocks(3, {{0}, {1, 2}})));
}

TEST_CASE("K' over the reals") {
  const KleinModel& m = klein_model();
  const IncidenceStructure k = kprime_structure(m);
  CHECK(census_type(k).text == "(12_3)");
  const RealizeReport r = realize_structure(k);
  REQUIRE(r.success);
  CHECK(r.residual < 1e-10);

  const IncidenceStructure ext = kprime_extended_structure(m);
  CHECK(census_type(ext).text == "(16_3,12_4)");
  const RealizeReport e = realize_structure(ext);
  REQUIRE(e.success);
  CHECK(e.residual < 1e-10);
  CHECK(e.extra_points.empty());
  CHECK(e.tvector.at(3) >= 16);
  // the same line coordinates realize K' with the four extra concurrences
  Realization sub;
  sub.points.assign(e.best.points.begin(), e.best.points.begin() + 12);
  sub.lines = e.best.lines;
  CHECK(realization_residual(sub, k) < 1e-10);
  int extra = 0;
  for (const auto& q : numeric_intersections(sub.lines, 1e-7)) {
    if (q.lines.size() != 3) continue;
    std::array<int, 3> labels{};
    for (std::size_t i = 0; i < 3; ++i) labels[i] = m.kprime[static_cast<std::size_t>(q.lines[i])];
    for (const auto& t : kprime_extra_triples()) extra += labels == t;
  }
  CHECK(extra == 4);
}

TEST_CASE("residuals survive projective changes") {
  std::mt19937 rng(9);
  const RealizeReport p = realize_structure(pappus());
  REQUIRE(p.success);
  for (int i = 0; i < 5; ++i) {
    const Realization moved = transform(p.best, random_projectivity(rng, 0.3));
    CHECK(realization_residual(moved, pappus()) < 1e-10);
  }
}

TEST_CASE("local dimension of realization spaces") {
  // four general lines, no constraints
  Realization four;
  four.lines = {Eigen::Vector3cd(1, 0, 0), Eigen::Vector3cd(0, 1, 0), Eigen::Vector3cd(0, 0, 1), Eigen::Vector3cd(1, 1, 1)};
  const TangentReport t4 = tangent_dimension(four, IncidenceStructure(0, 4));
  REQUIRE(t4.dimension);
  CHECK(*t4.dimension == 0);

  for (int n : {4, 5}) {
    const auto s = complete_quadrilateral(n);
    const RealizeReport r = realize_structure(s);
    REQUIRE(r.success);
    const TangentReport t = tangent_dimension(r.best, s);
    REQUIRE(t.dimension);
    CHECK(*t.dimension == 2 * n - 8);
  }

  const RealizeReport p = realize_structure(pappus());
  const TangentReport tp = tangent_dimension(p.best, pappus());
  REQUIRE(tp.dimension);
  CHECK(*tp.dimension == 2);
  CHECK(tp.pinned_dimension == tp.dimension);

  // the complex Klein arrangement with its full lattice is rigid
  const KleinModel& m = klein_model();
  IncidenceStructure ks(49, 21);
  for (int i = 0; i < 49; ++i)
    for (int l = 0; l < 21; ++l)
      if (incident(m.points[static_cast<std::size_t>(i)], m.lines[static_cast<std::size_t>(l)])) ks.set(i, l);
  const TangentReport tk = tangent_dimension(from_exact(m.points, m.lines), ks);
  REQUIRE(tk.dimension);
  CHECK(*tk.dimension == 0);
  CHECK(tk.gap > 1e6);

  CHECK_THROWS(tangent_dimension(four, IncidenceStructure::from_blocks(1, {{0}, {0}, {0}, {0}})));
}

TEST_CASE("Grünbaum-Rigby realizations of the incidence list") {
  const IncidenceStructure s = incidence_from_quadruples(gr_incidence_list(), 21);
  RealizeOptions opt;
  opt.seeds = 32;
  const RealizeReport r = realize_structure(s, opt);
  REQUIRE(r.success);
  CHECK(r.tvector == std::map<int, int>{{2, 84}, {4, 21}});
  const TangentReport t = tangent_dimension(r.best, s);
  REQUIRE(t.dimension);
  CHECK(*t.dimension == 2);
  // gauge invariance
  std::mt19937 rng(4);
  for (int i = 0; i < 3; ++i) {
    const TangentReport u = tangent_dimension(transform(r.best, random_projectivity(rng, 0.1)), s);
    CHECK(u.dimension == t.dimension);
  }
  // the symmetric model has extra triple points and the same local dimension
  const GRModel& g = gr_model();
  const TangentReport ts = tangent_dimension(from_exact(g.quadruple_points(), g.lines), gr_quadruple_structure(g));
  CHECK(ts.dimension == t.dimension);
}

TEST_CASE("numeric intersections") {
  const std::vector<Eigen::Vector3cd> lines{Eigen::Vector3cd(1, 0, 0), Eigen::Vector3cd(0, 1, 0), Eigen::Vector3cd(1, 1, 0),
                                            Eigen::Vector3cd(0, 0, 1)};
  const auto pts = numeric_intersections(lines);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].lines == std::vector<int>{0, 1, 2});
}

TEST_CASE("circumconic sweep harness") {
  SweepOptions opt;
  opt.samples = 3;
  opt.steps = 5;
  const SweepReport a = conjecture_sweep(opt);
  CHECK(a.label == "EXPERIMENTAL");
  REQUIRE(a.samples.size() == 3);
  CHECK(a.samples[0].converged);
  CHECK(a.samples[0].constraint_residual < 1e-12);
  CHECK(a.samples[0].third_conic_residual < 1e-12);
  CHECK(a.samples[0].symmetry_residual < 1e-12);
  // reproducible from the stored parameters
  const SweepReport b = conjecture_sweep(opt);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.samples[i].c1 == b.samples[i].c1);
    CHECK(a.samples[i].third_conic_residual == b.samples[i].third_conic_residual);
    const SweepSample again = sweep_sample(a.samples[i].c1, a.samples[i].c2, opt);
    CHECK(again.constraint_residual == a.samples[i].constraint_residual);
    CHECK(again.converged == a.samples[i].converged);
  }
  // dropping one identification decouples the two copies of the inner orbit
  SweepOptions broken = opt;
  broken.break_identification = true;
  const SweepReport c = conjecture_sweep(broken);
  CHECK(c.samples[0].third_conic_residual < 1e-12);
  for (std::size_t i = 1; i < 3; ++i) CHECK(c.samples[i].third_conic_residual > 100 * a.samples[i].third_conic_residual);
  CHECK_THROWS(sweep_sample(a.base_c1, a.base_c2, SweepOptions{0}));
}
