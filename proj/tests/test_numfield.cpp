#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klein/numfield.hpp"

using namespace klein;

namespace {

FieldPtr qa() { return NumberField::create({Rational(2), Rational(1)}, {-0.5, 1.32}); }

FieldPtr qalpha() {
  return NumberField::create({Rational(-7), Rational(0), Rational(14), Rational(0), Rational(-7), Rational(0)}, {1.95, 0.0});
}

FieldElement random_element(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (int i = 0; i < f->degree(); ++i) c.emplace_back(num(rng), den(rng));
  for (auto& q : c) q.canonicalize();
  return {f, c};
}

}  // namespace

TEST_CASE("field creation") {
  auto f = qa();
  CHECK(f->degree() == 2);
  CHECK_FALSE(f->is_real());
  auto r = f->root_double();
  CHECK(r.real() == doctest::Approx(-0.5));
  CHECK(r.imag() == doctest::Approx(std::sqrt(7.0) / 2));

  auto q = NumberField::rationals();
  CHECK(q->degree() == 1);
  CHECK(q->is_real());
  CHECK(q->root_double() == std::complex<double>(0.0, 0.0));

  auto g = qalpha();
  CHECK(g->is_real());
  CHECK(g->root_double().real() == doctest::Approx(2 * std::cos(M_PI / 14)).epsilon(1e-14));

  CHECK_THROWS_AS(NumberField::create({Rational(1), Rational(2)}, {-1, 0}), std::invalid_argument);  // (t+1)^2
}

TEST_CASE("minimal polynomial of 2cos(pi/14) has no small rational factor") {
  // m vanishes at 2cos(pi/14) to working precision
  auto g = qalpha();
  {
    PrecisionScope ps(60);
    Real c = 2 * boost::multiprecision::cos(boost::math::constants::pi<Real>() / 14);
    Real t2 = c * c;
    Real v = t2 * t2 * t2 - 7 * t2 * t2 + 14 * t2 - 7;
    CHECK(abs(v) < pow10(-50));
    CHECK(abs(approx(FieldElement::generator(g), 50).re - c) < pow10(-48));
  }
  // Exhaustive search for monic integer factors of degree 1..3 with
  // coefficients bounded by the root-product bound: evaluate candidate
  // factors at all six roots; a factor would vanish at deg of them.
  std::vector<double> roots;
  for (int k : {1, 3, 5, 9, 11, 13}) roots.push_back(2 * std::cos(k * M_PI / 14));
  int found = 0;
  for (int deg = 1; deg <= 3; ++deg) {
    const int bound = 8;  // |coeff| <= C(3,k) * 2^k <= 8 for a factor with roots in [-2,2]
    std::vector<int> c(static_cast<std::size_t>(deg), -bound);
    while (true) {
      int zeros = 0;
      for (double r : roots) {
        double v = 1;
        for (int i = deg - 1; i >= 0; --i) v = v * r + c[static_cast<std::size_t>(i)];
        if (std::abs(v) < 1e-9) ++zeros;
      }
      if (zeros >= deg) ++found;
      std::size_t i = 0;
      while (i < c.size() && c[i] == bound) c[i++] = -bound;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  CHECK(found == 0);
}

TEST_CASE("arithmetic in Q(a)") {
  auto f = qa();
  FieldElement a = FieldElement::generator(f);
  CHECK(a * a == -a - 2);
  CHECK(a * 1 == a);
  CHECK((a + 1) * a == FieldElement(-2));
  CHECK(inverse(a) == (FieldElement(-1) - a) / 2);
  CHECK(a * ((FieldElement(-1) - a) / 2) == FieldElement(1));
  CHECK(inverse(FieldElement(1)) == FieldElement(1));
  CHECK(inverse(FieldElement(2)) == FieldElement(Rational(1, 2)));
  CHECK_THROWS(inverse(FieldElement(0)));
  CHECK(to_string(a * a) == "-2 - a");
}

TEST_CASE("field mismatch") {
  auto a = FieldElement::generator(qa());
  auto b = FieldElement::generator(qalpha());
  CHECK_THROWS_AS(a + b, FieldMismatch);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  for (const auto& f : {qa(), qalpha()}) {
    for (int it = 0; it < 30; ++it) {
      auto u = random_element(f, rng), v = random_element(f, rng), w = random_element(f, rng);
      CHECK((u * v) * w == u * (v * w));
      CHECK(u * (v + w) == u * v + u * w);
      CHECK(u * v == v * u);
      if (!is_zero(u)) CHECK(u * inverse(u) == FieldElement(1));
    }
  }
}

TEST_CASE("real sign and approximation") {
  auto g = qalpha();
  auto al = FieldElement::generator(g);
  CHECK(real_sign(al - 1) == 1);
  CHECK(real_sign(FieldElement(0)) == 0);
  CHECK(real_sign(FieldElement(Rational(-3, 2))) == -1);
  CHECK_THROWS(real_sign(FieldElement::generator(qa())));
  CHECK(approx_string(al, 5) == "1.94986");
  CHECK(approx_string(FieldElement(Rational(1, 3)), 5) == "0.33333");
  CHECK(approx_string(FieldElement::generator(qa()), 10) == "-0.5000000000 + 1.3228756555i");

  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto u = random_element(g, rng);
    PrecisionScope ps(50);
    Real v = approx(u, 30).re;
    if (abs(v) > pow10(-20)) CHECK(real_sign(u) == (v > 0 ? 1 : -1));
  }
  // a tiny nonzero element: alpha - closest rational with large denominator
  Rational close("1949855824363647/1000000000000000");
  CHECK(real_sign(al - FieldElement(close)) == (approx(al, 30).re > to_real(close) ? 1 : -1));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1.5"));
}
