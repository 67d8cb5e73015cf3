#include "klein/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace klein {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

FieldElement parse_term(const FieldPtr& f, const std::string& term, const std::string& symbol) {
  const auto at = symbol.empty() ? std::string::npos : term.find(symbol);
  if (at == std::string::npos) return FieldElement(parse_rational(term));
  if (!f || f->degree() == 1) throw std::invalid_argument("generator symbol in a rational field: " + term);
  std::string coef = term.substr(0, at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  const Rational c = coef.empty() ? Rational(1) : parse_rational(coef);
  std::string rest = term.substr(at + symbol.size());
  int power = 1;
  if (!rest.empty()) {
    if (rest[0] != '^' || rest.size() < 2) throw std::invalid_argument("bad term " + term);
    rest = rest.substr(1);
    for (char ch : rest)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad exponent in " + term);
    power = std::stoi(rest);
  }
  FieldElement g = FieldElement::generator(f), v = FieldElement::constant(f, c);
  for (int i = 0; i < power; ++i) v *= g;
  return v;
}

std::string coeff_string(const FieldElement& u, const std::string& symbol) { return to_string(u, symbol); }

FieldPtr field_of(const DerivedConfig& c) {
  auto scan = [](const auto& objs) -> FieldPtr {
    for (const auto& o : objs)
      for (const auto& v : o.c)
        if (v.field()) return v.field();
    return nullptr;
  };
  if (auto f = scan(c.points)) return f;
  if (auto f = scan(c.lines)) return f;
  for (const auto& q : c.conics)
    for (const auto& row : q.m)
      for (const auto& v : row)
        if (v.field()) return v.field();
  return nullptr;
}

template <class V>
Json vec_to_json(const V& v, const std::string& symbol) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(coeff_string(e, symbol));
  return a;
}

std::string element_text(const Json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw std::invalid_argument("coefficients must be strings or integers");
}

template <std::size_t N>
std::array<FieldElement, N> elements(const Json& row, const FieldSpec& fs) {
  if (!row.is_array() || row.size() != N) throw std::invalid_argument("expected " + std::to_string(N) + " coefficients");
  std::array<FieldElement, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = parse_field_element(fs.field, element_text(row[i]), fs.symbol);
  return out;
}

Json cd_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json cvec_json(const Eigen::Vector3cd& v) {
  Json a = Json::array();
  for (int i = 0; i < 3; ++i) a.push_back(cd_json(v(i)));
  return a;
}

Json map_json(const std::map<int, int>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

}  // namespace

FieldElement parse_field_element(const FieldPtr& f, const std::string& text, const std::string& symbol) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty field element");
  FieldElement sum = f ? FieldElement::constant(f, Rational(0)) : FieldElement(0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (pos > 0) {
      throw std::invalid_argument("bad field element " + text);
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && !(s[end] == '-' && s[end - 1] != '^')) ++end;
    if (end == pos) throw std::invalid_argument("bad field element " + text);
    const FieldElement t = parse_term(f, s.substr(pos, end - pos), symbol);
    sum = neg ? sum - t : sum + t;
    pos = end;
  }
  return sum;
}

FieldSpec field_from_json(const Json& j) {
  const std::string name = j.is_string() ? j.get<std::string>() : j.value("name", std::string("custom"));
  if (name == "Q") return {"Q", "", NumberField::rationals()};
  if (name == "Q(a)") return {"Q(a)", j.is_object() ? j.value("symbol", std::string("a")) : "a", field_qa()};
  if (name == "F") return {"F", j.is_object() ? j.value("symbol", std::string("t")) : "t", field_gr()};
  if (!j.is_object() || !j.contains("minpoly") || !j.contains("root"))
    throw std::invalid_argument("field header needs a known name or minpoly and root");
  std::vector<Rational> mp;
  for (const auto& c : j.at("minpoly")) mp.push_back(parse_rational(element_text(c)));
  const auto& r = j.at("root");
  return {"custom", j.value("symbol", std::string("a")),
          NumberField::create(mp, {r.at(0).get<double>(), r.at(1).get<double>()})};
}

Json field_to_json(const FieldSpec& f) {
  Json j;
  j["name"] = f.name;
  j["symbol"] = f.symbol;
  Json mp = Json::array();
  for (const auto& c : f.field->minpoly()) mp.push_back(to_string(c));
  j["minpoly"] = mp;
  const auto r = f.field->root_double();
  j["root"] = Json::array({r.real(), r.imag()});
  return j;
}

FieldSpec field_spec_of(const FieldPtr& f) {
  if (!f || f->degree() == 1) return {"Q", "", NumberField::rationals()};
  if (f->same_as(*field_qa())) return {"Q(a)", "a", f};
  if (f->same_as(*field_gr())) return {"F", "t", f};
  return {"custom", "a", f};
}

DerivedConfig arrangement_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("arrangement must be a JSON object");
  const FieldSpec fs = field_from_json(j.contains("field") ? j.at("field") : Json("Q"));
  std::vector<FPoint> pts;
  std::vector<FLine> lines;
  std::vector<FConic> conics;
  for (const auto& row : j.value("points", Json::array())) {
    const auto e = elements<3>(row, fs);
    pts.emplace_back(e[0], e[1], e[2]);
  }
  for (const auto& row : j.value("lines", Json::array())) {
    const auto e = elements<3>(row, fs);
    lines.emplace_back(e[0], e[1], e[2]);
  }
  for (const auto& row : j.value("conics", Json::array())) conics.push_back(FConic::from_coeffs(elements<6>(row, fs)));
  return make_config(j.value("name", std::string("input")), "read from JSON", std::move(pts), std::move(lines),
                     std::move(conics));
}

Json config_to_json(const DerivedConfig& c) {
  const FieldSpec fs = field_spec_of(field_of(c));
  Json j;
  j["name"] = c.name;
  j["construction"] = c.construction;
  j["field"] = field_to_json(fs);
  j["type"] = c.type().text;
  j["points"] = Json::array();
  for (const auto& p : c.points) j["points"].push_back(vec_to_json(p.c, fs.symbol));
  j["lines"] = Json::array();
  for (const auto& l : c.lines) j["lines"].push_back(vec_to_json(l.c, fs.symbol));
  j["conics"] = Json::array();
  for (const auto& q : c.conics) {
    const auto u = q.upper();
    const std::array<FieldElement, 6> k{u[0], u[1] * FieldElement(2), u[2] * FieldElement(2), u[3],
                                        u[4] * FieldElement(2), u[5]};
    j["conics"].push_back(vec_to_json(k, fs.symbol));
  }
  j["incidence"] = incidence_to_json(c.incidence);
  return j;
}

Json incidence_to_json(const IncidenceStructure& s) {
  Json blocks = Json::array();
  for (int b = 0; b < s.n_blocks(); ++b) {
    Json blk = Json::array();
    for (int p = 0; p < s.n_points(); ++p)
      if (s.has(p, b)) blk.push_back(p);
    blocks.push_back(blk);
  }
  return Json{{"points", s.n_points()}, {"blocks", blocks}};
}

IncidenceStructure incidence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("blocks"))
    throw std::invalid_argument("incidence structure needs \"points\" and \"blocks\"");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j.at("blocks")) blocks.push_back(b.get<std::vector<int>>());
  return IncidenceStructure::from_blocks(j.at("points").get<int>(), blocks);
}

Json census_to_json(const Census<FieldElement>& c, const std::string& symbol) {
  Json j;
  j["tvector"] = map_json(c.tvector);
  j["points"] = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i)
    j["points"].push_back({{"coords", vec_to_json(c.points[i].c, symbol)}, {"curves", c.curves[i]}});
  j["per_curve"] = Json::array();
  for (const auto& m : c.per_curve) j["per_curve"].push_back(map_json(m));
  return j;
}

Json numeric_census_to_json(const NumericCensus& c, int digits) {
  Json j;
  j["tvector"] = map_json(c.tvector);
  j["tangencies"] = c.tangencies;
  j["points"] = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    Json coords = Json::array();
    for (const auto& z : c.points[i])
      coords.push_back(Json::array({Json(format_real(z.re, digits)), Json(format_real(z.im, digits))}));
    j["points"].push_back(Json{{"coords", coords}, {"curves", c.incident[i]}});
  }
  j["per_curve"] = Json::array();
  for (const auto& m : c.per_curve) j["per_curve"].push_back(map_json(m));
  return j;
}

Json realization_to_json(const Realization& r) {
  Json j;
  j["points"] = Json::array();
  for (const auto& p : r.points) j["points"].push_back(cvec_json(p));
  j["lines"] = Json::array();
  for (const auto& l : r.lines) j["lines"].push_back(cvec_json(l));
  return j;
}

Json sweep_to_json(const SweepReport& r) {
  Json j;
  j["label"] = r.label;
  j["options"] = {{"steps", r.options.steps},
                  {"samples", r.options.samples},
                  {"base_seed", r.options.base_seed},
                  {"perturbation", r.options.perturbation},
                  {"break_identification", r.options.break_identification}};
  j["base_c1"] = r.base_c1;
  j["base_c2"] = r.base_c2;
  j["samples"] = Json::array();
  for (const auto& s : r.samples)
    j["samples"].push_back({{"index", s.index},
                            {"seed", s.seed},
                            {"c1", s.c1},
                            {"c2", s.c2},
                            {"converged", s.converged},
                            {"divergent", !s.converged},
                            {"steps_done", s.steps_done},
                            {"constraint_residual", s.constraint_residual},
                            {"third_conic_residual", s.third_conic_residual},
                            {"symmetry_residual", s.symmetry_residual}});
  return j;
}

const std::vector<std::string>& config_names() {
  static const std::vector<std::string> names = {"klein",     "kprime",    "gr",        "gr-d12", "gr-d23", "gr-d13",
                                                 "gr-d12-49", "gr-d23-49", "gr-d13-49", "gr-42"};
  return names;
}

DerivedConfig named_config(const std::string& name) {
  if (name == "klein") {
    const KleinModel& m = klein_model();
    return make_config("klein", "tabulated Klein arrangement", m.points, m.lines);
  }
  if (name == "kprime") {
    const KleinModel& m = klein_model();
    return make_config("kprime", "twelve Klein lines through the K' triple points", m.kprime_points,
                       m.lines_by_label(m.kprime));
  }
  const GRModel& g = gr_model();
  if (name == "gr") return make_config("gr", "Grünbaum-Rigby lines and quadruple points", g.quadruple_points(), g.lines);
  if (name == "gr-42") return half_orbit_42_config(g).config;
  for (int pair : {12, 23, 13}) {
    const std::string base = "gr-d" + std::to_string(pair);
    if (name == base) return gr_pair_config(g, pair);
    if (name == base + "-49") return incidence_sum_49(gr_pair_config(g, pair)).config;
  }
  throw std::invalid_argument("unknown configuration " + name);
}

const std::vector<std::string>& structure_names() {
  static const std::vector<std::string> names = {"fano", "kprime", "kprime-extended", "gr-list", "klein-quadruple"};
  return names;
}

IncidenceStructure named_structure(const std::string& name) {
  if (name == "fano")
    return IncidenceStructure::from_blocks(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  if (name == "kprime") return kprime_structure(klein_model());
  if (name == "kprime-extended") return kprime_extended_structure(klein_model());
  if (name == "gr-list") return incidence_from_quadruples(gr_incidence_list(), 21);
  if (name == "klein-quadruple") return klein_quadruple_structure(klein_model());
  throw std::invalid_argument("unknown structure " + name);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace klein
