#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "klein/io.hpp"
#include "klein/svg.hpp"
#include "klein/verify.hpp"

using namespace klein;

namespace {

FieldElement random_element(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> c;
  for (int i = 0; i < f->degree(); ++i) c.push_back(Rational(d(rng)) / Rational(1 + (d(rng) + 9) % 4));
  return FieldElement(f, c);
}

double conic_value(const std::array<double, 6>& k, double x, double y) {
  return k[0] * x * x + k[1] * x * y + k[2] * x + k[3] * y * y + k[4] * y + k[5];
}

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("field elements survive printing and parsing") {
  std::mt19937 rng(11);
  for (const auto& [f, sym] : {std::pair{field_qa(), std::string("a")}, std::pair{field_gr(), std::string("t")}})
    for (int i = 0; i < 20; ++i) {
      const FieldElement u = random_element(f, rng);
      CHECK(parse_field_element(f, to_string(u, sym), sym) == u);
    }
  const FieldPtr qa = field_qa();
  CHECK(parse_field_element(qa, "-a-1") == parse_linear(qa, "-a-1"));
  CHECK(parse_field_element(qa, " 3/2 * a^2 ") == FieldElement::constant(qa, Rational(3, 2)) * FieldElement::generator(qa) *
                                                      FieldElement::generator(qa));
  CHECK(parse_field_element(nullptr, "-7/3", "") == FieldElement(Rational(-7, 3)));
  CHECK_THROWS(parse_field_element(qa, ""));
  CHECK_THROWS(parse_field_element(qa, "a^"));
  CHECK_THROWS(parse_field_element(qa, "2b"));
  CHECK_THROWS(parse_field_element(nullptr, "a", "a"));
}

TEST_CASE("configurations round-trip through JSON") {
  for (const char* name : {"gr-d12", "kprime"}) {
    const DerivedConfig c = named_config(name);
    const Json j = config_to_json(c);
    const DerivedConfig back = arrangement_from_json(Json::parse(j.dump()));
    CHECK(back.points == c.points);
    CHECK(back.lines == c.lines);
    CHECK(back.incidence == c.incidence);
    CHECK(config_to_json(back).at("type") == j.at("type"));
  }
  // conic coefficients keep their order
  const Json cj = Json::parse(R"({"field": "Q", "conics": [["1", "2", "0", "3", "0", "-5"]]})");
  const DerivedConfig c = arrangement_from_json(cj);
  REQUIRE(c.conics.size() == 1);
  CHECK(config_to_json(c).at("conics").at(0) == Json::array({"1", "2", "0", "3", "0", "-5"}));
  CHECK_THROWS(arrangement_from_json(Json::parse(R"({"lines": [["1", "0"]]})")));
  CHECK_THROWS(arrangement_from_json(Json::parse(R"({"field": "Z"})")));
  CHECK_THROWS(named_config("nothing"));

  const Json custom = Json::parse(R"({"name": "custom", "minpoly": ["-2", "0"], "root": [1.4, 0], "symbol": "r"})");
  const FieldSpec fs = field_from_json(custom);
  const FieldElement r = parse_field_element(fs.field, "r", fs.symbol);
  CHECK(r * r == FieldElement::constant(fs.field, Rational(2)));
  CHECK(real_sign(r) > 0);
}

TEST_CASE("incidence structures round-trip through JSON") {
  for (const auto& name : structure_names()) {
    const IncidenceStructure s = named_structure(name);
    CHECK(incidence_from_json(Json::parse(incidence_to_json(s).dump())) == s);
  }
  CHECK_THROWS(incidence_from_json(Json::parse(R"({"points": 3})")));
  CHECK_THROWS(incidence_from_json(Json::parse(R"({"points": 2, "blocks": [[0, 5]]})")));
}

TEST_CASE("line clipping") {
  const Viewport v;
  const auto h = clip_line(0, 1, 0, v);
  REQUIRE(h);
  CHECK(std::abs((*h)[0] - v.xmin) < 1e-12);
  CHECK(std::abs((*h)[2] - v.xmax) < 1e-12);
  CHECK_FALSE(clip_line(0, 1, -10, v));
  CHECK_FALSE(clip_line(0, 0, 1, v));
  // through a corner and beyond
  const auto d = clip_line(1, -1, 0, v);
  REQUIRE(d);
  CHECK(std::hypot((*d)[0] - (*d)[2], (*d)[1] - (*d)[3]) == doctest::Approx(std::hypot(6.4, 6.4)));
}

TEST_CASE("conic sampling") {
  const Viewport v;
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    // random ellipses, hyperbolas and parabolas through a rotation and shift
    const double th = u(rng) * M_PI, cx = u(rng), cy = u(rng);
    const double c = std::cos(th), s = std::sin(th);
    const int kind = trial % 3;
    // in rotated coordinates X = c(x-cx) + s(y-cy), Y = -s(x-cx) + c(y-cy)
    const double A = 1 + std::abs(u(rng)), B = kind == 0 ? 1 + std::abs(u(rng)) : (kind == 1 ? -1 - std::abs(u(rng)) : 0);
    // A X^2 + B Y^2 + E Y - 1 = 0
    const double E = kind == 2 ? 1 : 0;
    std::array<double, 6> k{};
    // expand with x' = x - cx, y' = y - cy
    const double a11 = A * c * c + B * s * s, a12 = (A - B) * c * s, a22 = A * s * s + B * c * c;
    const double e1 = -E * s, e2 = E * c;
    k[0] = a11;
    k[1] = 2 * a12;
    k[3] = a22;
    k[2] = -2 * a11 * cx - 2 * a12 * cy + e1;
    k[4] = -2 * a22 * cy - 2 * a12 * cx + e2;
    k[5] = a11 * cx * cx + 2 * a12 * cx * cy + a22 * cy * cy - e1 * cx - e2 * cy - 1;
    const auto arcs = sample_conic(k, v);
    std::size_t total = 0;
    for (const auto& arc : arcs) {
      total += arc.size();
      for (const auto& p : arc) CHECK(std::abs(conic_value(k, p[0], p[1])) < 1e-6 * (1 + p[0] * p[0] + p[1] * p[1]));
    }
    if (kind == 0) {
      REQUIRE(arcs.size() == 1);
      CHECK(arcs[0].size() == 129);
      CHECK(arcs[0].front() == arcs[0].back());
    } else {
      CHECK(arcs.size() == (kind == 1 ? 2u : 1u));
      CHECK(total == 128);
    }
  }
  CHECK(sample_conic({1, 0, 0, 1, 0, 1}, v).empty());
  CHECK(sample_conic({0, 0, 0, 0, 0, 0}, v).empty());
}

TEST_CASE("SVG output") {
  const DerivedConfig empty = make_config("empty", "", {}, {});
  const std::string e = render_svg(empty);
  CHECK(e.rfind("<?xml", 0) == 0);
  CHECK(count(e, "<line") == 2);
  CHECK(count(e, "<circle") == 0);
  CHECK(e.find("</svg>") != std::string::npos);

  const DerivedConfig gr = named_config("gr");
  const std::string a = render_svg(gr), b = render_svg(gr);
  CHECK(a == b);
  CHECK(count(a, "<circle") == 21);
  CHECK(count(a, "<line") == 2 + 21);
  CHECK_THROWS_AS(render_svg(named_config("klein")), std::invalid_argument);
  Viewport bad;
  bad.xmax = bad.xmin;
  CHECK_THROWS(render_svg(empty, bad));
}

TEST_CASE("golden table and digests") {
  std::set<std::string> keys;
  for (const auto& g : golden_values()) {
    CHECK(keys.insert(g.key).second);
    CHECK_FALSE(g.expected.empty());
    CHECK_FALSE(g.source.empty());
  }
  CHECK_THROWS(golden("no.such.key"));
  CHECK(suite_keys().size() == 12);
  CHECK_THROWS(run_suite("13"));
  const SuiteResult p = run_suite("6");
  CHECK(p.key == "plucker");
  CHECK(p.pass());
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
