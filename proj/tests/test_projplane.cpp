#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klein/projplane.hpp"

using namespace klein;

namespace {

using QP = ProjectivePoint<Rational>;
using QL = ProjectiveLine<Rational>;
using QC = Conic<Rational>;
using FP = ProjectivePoint<FieldElement>;
using FL = ProjectiveLine<FieldElement>;

FieldPtr qa() { return NumberField::create({Rational(2), Rational(1)}, {-0.5, 1.32}); }

Rational rnd(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

QP random_point(std::mt19937& rng) {
  while (true) {
    Vec3<Rational> v{rnd(rng), rnd(rng), rnd(rng)};
    if (!is_zero_vec(v)) return QP(v);
  }
}

QC random_smooth_conic(std::mt19937& rng) {
  while (true) {
    std::array<Rational, 6> k;
    for (auto& v : k) v = rnd(rng);
    bool all_zero = std::all_of(k.begin(), k.end(), [](const Rational& v) { return is_zero(v); });
    if (all_zero) continue;
    QC c = QC::from_coeffs(k);
    if (is_smooth(c)) return c;
  }
}

}  // namespace

TEST_CASE("join and meet") {
  CHECK(join(QP(1, 0, 0), QP(0, 1, 0)) == QL(0, 0, 1));
  CHECK(join(QP(0, 1, 1), QP(0, 0, 1)) == QL(1, 0, 0));
  CHECK(meet(QL(1, 0, 0), QL(0, 1, 0)) == QP(0, 0, 1));
  CHECK(meet(QL(1, 0, 0), QL(0, -1, 1)) == QP(0, 1, 1));
  CHECK_THROWS_AS(join(QP(1, 2, 3), QP(2, 4, 6)), DegenerateInput);
  CHECK_THROWS_AS(meet(QL(1, 2, 3), QL(-1, -2, -3)), DegenerateInput);

  auto f = qa();
  FieldElement a = FieldElement::generator(f);
  FP p(1, 1, 1), q(1, -1, -1 - a);
  FL l = join(p, q);
  CHECK(incident(p, l));
  CHECK(incident(q, l));

  FL l3(a, 1, -1), l4(a, -1, 1);
  CHECK(meet(l3, l4) == FP(0, 1, 1));
  CHECK(incident(FP(0, 1, a), FL(1, a, -1)));
  CHECK_FALSE(incident(QP(1, 0, 0), QL(1, 0, 0)));
}

TEST_CASE("canonical form is idempotent and scale invariant") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    QP p = random_point(rng);
    CHECK(QP(p.c) == p);
    Rational s = rnd(rng);
    if (is_zero(s)) continue;
    CHECK(QP(p.c[0] * s, p.c[1] * s, p.c[2] * s) == p);
  }
  CHECK_THROWS(QP(0, 0, 0));
}

TEST_CASE("join/meet duality") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    QP p = random_point(rng), q = random_point(rng), r = random_point(rng);
    if (collinear(p, q, r)) continue;
    CHECK(meet(join(p, q), join(p, r)) == p);
  }
}

TEST_CASE("conic through five points") {
  std::array<QP, 5> pts{QP(1, 1, 1), QP(1, -1, 1), QP(1, 2, 4), QP(1, -2, 4), QP(1, 3, 9)};
  QC c = conic_through_5(pts);
  CHECK(c == QC::from_coeffs({0, 0, -1, 1, 0, 0}));
  for (const auto& p : pts) CHECK(on_conic(p, c));

  std::array<QP, 5> bad{QP(1, 0, 0), QP(1, 1, 0), QP(1, 2, 0), QP(0, 1, 0), QP(0, 0, 1)};
  CHECK_THROWS_AS(conic_through_5(bad), DegenerateInput);

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::array<QP, 5> r{random_point(rng), random_point(rng), random_point(rng), random_point(rng), random_point(rng)};
    try {
      QC k = conic_through_5(r);
      for (const auto& p : r) CHECK(on_conic(p, k));
    } catch (const DegenerateInput&) {
    }
  }
}

TEST_CASE("affine classification") {
  CHECK(conic_classify(QC::from_coeffs({1, 0, 0, 1, 0, -1})) == ConicKind::Ellipse);
  CHECK(conic_classify(QC::from_coeffs({1, 0, 0, -1, 0, -1})) == ConicKind::Hyperbola);
  CHECK(conic_classify(QC::from_coeffs({0, 0, -1, 1, 0, 0})) == ConicKind::Parabola);
  CHECK(conic_classify(QC::from_coeffs({1, 0, 0, -1, 0, 0})) == ConicKind::Degenerate);
}

TEST_CASE("pole and polar") {
  QC unit = Circle<Rational>{0, 0, 1}.conic();
  CHECK(polar(QP(1, 0, 1), unit) == QL(1, 0, -1));
  Circle<Rational> g{0, 0, Rational(9, 4)};
  CHECK(polar(QP(2, 3, 1), g.conic()) == QL(2, 3, Rational(-9, 4)));

  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    QC c = random_smooth_conic(rng);
    QP p = random_point(rng), q = random_point(rng);
    CHECK(pole(polar(p, c), c) == p);
    if (p == q) continue;
    QL l = join(p, q);
    QP r = random_point(rng);
    CHECK(incident(pole(l, c), polar(p, c)));
    CHECK(incident(r, l) == incident(pole(l, c), polar(r, c)));
  }
  QC degenerate = QC::from_coeffs({1, 0, 0, -1, 0, 0});
  CHECK_THROWS_AS(polar(QP(1, 2, 3), degenerate), DegenerateInput);
}

TEST_CASE("reciprocal set") {
  std::mt19937 rng(9);
  std::vector<QP> pts;
  std::vector<QL> lines;
  for (int i = 0; i < 6; ++i) pts.push_back(random_point(rng));
  for (int i = 0; i < 5; ++i) lines.push_back(join(random_point(rng), random_point(rng)));
  pts.emplace_back(1, 0, 0);
  lines.push_back(join(pts[0], pts[1]));
  Circle<Rational> g{Rational(1, 2), -1, 3};
  auto r = reciprocal_set(pts, lines, g);
  CHECK(incident(r.points.back(), r.lines[0]));
  CHECK(incident(r.points.back(), r.lines[1]));
  auto back = reciprocal_set(r.points, r.lines, g);
  CHECK(back.lines == lines);
  CHECK(back.points == pts);

  auto c = reciprocal_set(std::vector<QP>{QP(Rational(1, 2), -1, 1)}, {}, g);
  CHECK(c.center_points == std::vector<int>{0});

  // a point at distance R from the center polarises to a line at distance k^2/R
  Circle<Rational> o{0, 0, 4};
  auto t = reciprocal_set(std::vector<QP>{QP(3, 0, 1)}, {}, o);
  CHECK(t.lines[0] == QL(1, 0, Rational(-4, 3)));
}

TEST_CASE("midcircle condition") {
  CHECK(midcircle_condition<Rational>(4, 1, 2, 2));
  CHECK_FALSE(midcircle_condition<Rational>(4, 1, 3, 1));
  CHECK_THROWS(midcircle_condition<Rational>(0, 1, 3, 1));
}
