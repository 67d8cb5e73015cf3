#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klein/numfield.hpp"
#include "klein/polyalg.hpp"

using namespace klein;

namespace {

using Q = TernaryForm<Rational>;

Q parse(const std::string& s) { return parse_rational_form(s); }

Q random_form(int d, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4);
  Q f(d);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) f.set(i, j, d - i - j, Rational(coef(rng)));
  return f;
}

}  // namespace

TEST_CASE("index layout") {
  for (int d : {0, 1, 4, 9}) {
    for (std::size_t idx = 0; idx < monomial_count(d); ++idx) {
      auto e = monomial_at(d, idx);
      CHECK(e.x + e.y + e.z == d);
      CHECK(monomial_index(d, e.x, e.y) == idx);
    }
  }
}

TEST_CASE("text round trip") {
  Q f = parse("3x^2y + z^3 - (1/2)xyz");
  CHECK(f.degree() == 3);
  CHECK(f.coeff(2, 1, 0) == 3);
  CHECK(f.coeff(1, 1, 1) == Rational(-1, 2));
  CHECK(to_text(f) == "3x^2y - (1/2)xyz + z^3");
  CHECK(parse(to_text(f)) == f);
  CHECK(parse(" x y + 2 * y ^ 2 ") == parse("xy+2y^2"));
  CHECK_THROWS(parse("x^2 + y"));
  CHECK_THROWS(parse("x + +y"));
}

TEST_CASE("field coefficients in text") {
  auto f = NumberField::create({Rational(2), Rational(1)}, {-0.5, 1.32});
  auto a = FieldElement::generator(f);
  auto parse_fe = [&](const std::string& s) {
    // linear combination "p + q*a"
    std::string t = s;
    FieldElement acc(0);
    std::size_t pos = 0;
    while (pos < t.size()) {
      std::size_t next = t.find_first_of("+-", pos + 1);
      std::string tok = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (tok.find('a') != std::string::npos) {
        std::string c = tok.substr(0, tok.find('a'));
        if (!c.empty() && c.back() == '*') c.pop_back();
        Rational q = c.empty() || c == "+" ? Rational(1) : c == "-" ? Rational(-1) : parse_rational(c);
        acc += a * FieldElement(q);
      } else {
        acc += FieldElement(parse_rational(tok));
      }
      pos = next == std::string::npos ? t.size() : next;
    }
    return acc;
  };
  auto g = parse_form<FieldElement>("(1+a)x - (2*a)y + z", parse_fe);
  CHECK(g.coeff(1, 0, 0) == a + 1);
  CHECK(g.coeff(0, 1, 0) == -(a * 2));
}

TEST_CASE("diff") {
  CHECK(diff(parse("x^3y"), 0) == parse("3x^2y"));
  Q phi4 = parse("x^3y + y^3z + z^3x");
  CHECK(diff(phi4, 0) == parse("3x^2y + z^3"));
  CHECK(diff(Q::constant(Rational(5)), 0).is_zero());
}

TEST_CASE("polymat_det") {
  FormMatrix<Rational> m = {{Q::var(0), Q(1), Q(1)}, {Q(1), Q::var(1), Q(1)}, {Q(1), Q(1), Q::var(2)}};
  CHECK(polymat_det(m) == parse("xyz"));
  // 2x2 oracle: det [[x, y],[z, x]] = x^2 - yz
  FormMatrix<Rational> m2 = {{Q::var(0), Q::var(1)}, {Q::var(2), Q::var(0)}};
  CHECK(polymat_det(m2) == parse("x^2 - yz"));
}

TEST_CASE("compose") {
  PolyMap<Rational> m = {parse("x^2 + yz"), parse("y^2"), parse("xz - z^2")};
  CHECK(compose(Q::var(0), m) == m[0]);
  PolyMap<Rational> id = {Q::var(0), Q::var(1), Q::var(2)};
  CHECK(compose(parse("x + y + z"), id) == parse("x + y + z"));
  Q f = parse("x^2 - 3yz");
  CHECK(compose(f, m) == m[0] * m[0] - Rational(3) * m[1] * m[2]);
  CHECK(compose(f, m).degree() == 4);
}

TEST_CASE("divide_exact") {
  CHECK(divide_exact(parse("x^2 - y^2"), parse("x - y")) == parse("x + y"));
  CHECK_THROWS_AS(divide_exact(parse("x^2"), parse("x + y")), InexactDivision);
  std::mt19937 rng(3);
  for (int it = 0; it < 20; ++it) {
    Q f = random_form(1 + it % 4, rng), g = random_form(1 + it % 3, rng);
    if (g.is_zero()) continue;
    CHECK(divide_exact(f * g, g) == f);
  }
}

TEST_CASE("Euler identity on random forms") {
  std::mt19937 rng(5);
  for (int d = 1; d <= 6; ++d) {
    Q f = random_form(d, rng);
    Q lhs = Q::var(0) * diff(f, 0) + Q::var(1) * diff(f, 1) + Q::var(2) * diff(f, 2);
    CHECK(lhs == f * Rational(d));
  }
}

TEST_CASE("restrict_to_line") {
  auto b = restrict_to_line(parse("x^2 + y^2 + z^2"), {Rational(0), Rational(0), Rational(1)});
  CHECK(b.c == std::vector<Rational>{1, 0, 1});
  auto c = restrict_to_line(parse("x^3y + y^3z + z^3x"), {Rational(0), Rational(0), Rational(1)});
  CHECK(c.c == std::vector<Rational>{0, 1, 0, 0, 0});
  // a form containing the line as a factor restricts to zero
  Q prod = parse("x - 2y + z") * parse("x^2 + y z");
  CHECK(restrict_to_line(prod, {Rational(1), Rational(-2), Rational(1)}).is_zero());
  CHECK_FALSE(restrict_to_line(prod, {Rational(1), Rational(2), Rational(1)}).is_zero());
}

TEST_CASE("resultant_squarefree") {
  using P = UPoly<Rational>;
  CHECK(resultant_squarefree(P({Rational(-1), Rational(0), Rational(1)})));
  CHECK_FALSE(resultant_squarefree(P({Rational(0), Rational(0), Rational(1)})));
}
