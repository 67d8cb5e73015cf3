// klein-forge: verification suites, builders, searches and exports for the
// Klein and Grünbaum-Rigby arrangements.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "klein/invariants.hpp"
#include "klein/io.hpp"
#include "klein/svg.hpp"
#include "klein/verify.hpp"

using namespace klein;

namespace {

struct Report {
  std::string command;
  std::string digest_input;
  std::vector<Check> checks;
  Json result = Json::object();
  std::map<std::string, double> timings;

  void check(const std::string& name, const std::string& expected, const std::string& found, bool pass) {
    checks.push_back({name, expected, found, pass, ""});
  }
  [[nodiscard]] bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts bare documents and reports written by `build`.
Json read_json(const std::string& path, Report& rep) {
  const std::string text = read_file(path);
  rep.digest_input += "\n" + text;
  Json j = Json::parse(text);
  if (j.is_object() && j.contains("result") && j.contains("command")) j = j.at("result");
  if (j.is_object() && j.contains("config")) j = j.at("config");
  return j;
}

template <class T>
double seconds_since(T t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> parse_doubles(const std::string& s, std::size_t n, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.size() != n) throw std::invalid_argument(what + " needs " + std::to_string(n) + " comma-separated numbers");
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

DerivedConfig load_config(const std::string& input, const std::string& model, Report& rep) {
  if (!input.empty()) return arrangement_from_json(read_json(input, rep));
  return named_config(model);
}

IncidenceStructure load_structure(const std::string& spec, Report& rep) {
  if (spec.rfind("model:", 0) == 0) return named_structure(spec.substr(6));
  const Json j = read_json(spec, rep);
  if (j.contains("blocks")) return incidence_from_json(j);
  if (j.contains("incidence")) return incidence_from_json(j.at("incidence"));
  return arrangement_from_json(j).incidence;
}

std::string conic_kind_name(const FConic& c) { return to_string(conic_classify(c)); }

Json hits_json(const std::vector<ConicHit<FieldElement>>& hits) {
  Json a = Json::array();
  for (const auto& h : hits) {
    DerivedConfig one = make_config("hit", "", {}, {}, {h.conic});
    a.push_back({{"subset", h.subset}, {"conic", config_to_json(one).at("conics").at(0)}, {"kind", conic_kind_name(h.conic)}});
  }
  return a;
}

// ---------------------------------------------------------------------------

void cmd_verify(Report& rep, const std::vector<std::string>& suites) {
  std::vector<std::string> keys = suites;
  if (keys.empty() || (keys.size() == 1 && keys[0] == "all")) keys = suite_keys();
  Json arr = Json::array();
  for (const auto& k : keys) {
    const SuiteResult r = run_suite(k);
    for (const auto& c : r.checks)
      rep.checks.push_back({"[" + std::to_string(r.criterion) + " " + r.key + "] " + c.name, c.expected, c.found, c.pass,
                            c.source});
    arr.push_back({{"criterion", r.criterion},
                   {"key", r.key},
                   {"title", r.title},
                   {"status", r.pass() ? "PASS" : "FAIL"},
                   {"completed", r.completed},
                   {"notes", r.notes}});
    rep.timings[r.key] = r.seconds;
  }
  rep.result["suites"] = arr;
}

void cmd_census(Report& rep, const std::string& input, const std::string& model, int digits) {
  const DerivedConfig cfg = load_config(input, model, rep);
  if (!cfg.lines.empty() && !cfg.conics.empty())
    throw std::invalid_argument("census of mixed line and conic arrangements is not supported");
  if (!cfg.lines.empty()) {
    const Census<FieldElement> c = line_census(cfg.lines);
    const Json cj = config_to_json(cfg);
    rep.result = census_to_json(c, cj.at("field").at("symbol").get<std::string>());
    rep.result["field"] = cj.at("field");
    rep.result["jacobian_degree"] = jacobian_degree(c.tvector);
    rep.result["exact"] = true;
    return;
  }
  if (cfg.conics.empty()) throw std::invalid_argument("arrangement has no curves");
  PrecisionScope ps(static_cast<unsigned>(digits) + 10);
  std::vector<CMat3> conics;
  for (const auto& q : cfg.conics) {
    CMat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m[i][j] = approx(q.m[i][j], static_cast<unsigned>(digits) + 10);
    conics.push_back(m);
  }
  rep.result = numeric_census_to_json(conic_census_numeric(conics, static_cast<unsigned>(digits)), 12);
  rep.result["exact"] = false;
  rep.result["digits"] = digits;
}

void cmd_build(Report& rep, const std::string& target, int pair, const std::string& what, const std::string& svg) {
  DerivedConfig cfg;
  if (target != "gr-derived") {
    cfg = named_config(target);
    rep.result["config"] = config_to_json(cfg);
  } else {
    const GRModel& g = gr_model();
    if (what == "42") {
      const HalfOrbitResult h = half_orbit_42_config(g);
      cfg = h.config;
      rep.result["choice"] = h.choice;
      rep.result["successful_choices"] = h.successful_choices;
    } else {
      const DerivedConfig base = gr_pair_config(g, pair);
      if (what == "28") {
        cfg = base;
      } else if (what == "49") {
        const IncidenceSum s = incidence_sum_49(base);
        cfg = s.config;
        rep.result["k2"] = approx_string(s.k2, 12);
        Json valid = Json::array();
        for (const auto& k : s.valid_k2) valid.push_back(approx_string(k, 12));
        rep.result["valid_k2"] = valid;
        rep.result["self_reciprocal"] = s.self_reciprocal;
        rep.check("self-reciprocal", "yes", s.self_reciprocal ? "yes" : "no", s.self_reciprocal);
      } else if (what == "conics") {
        const ConicFamily fam = gr_conic_family(g, base.name, base.points, 8);
        Json orbits = Json::array();
        for (const auto& o : fam.orbits)
          orbits.push_back({{"conics", o.conics}, {"kind", to_string(o.kind)}, {"two_fold_cover", o.two_fold_cover}});
        const auto unions = balanced_orbit_unions(fam, static_cast<int>(fam.points.size()), 8);
        rep.result["hits"] = hits_json(fam.hits);
        rep.result["orbits"] = orbits;
        rep.result["balanced_unions"] = unions;
        std::vector<FConic> conics;
        if (!unions.empty()) {
          const PointConicConfig pc = point_conic_config(base.name + " conics", fam, unions.front());
          rep.result["union_type"] = pc.type;
          for (int o : unions.front())
            for (int c : fam.orbits[static_cast<std::size_t>(o)].conics) conics.push_back(fam.hits[static_cast<std::size_t>(c)].conic);
        }
        cfg = make_config(base.name + " conics", "conics through eight points", base.points, {}, conics);
      } else {
        throw std::invalid_argument("--what must be 28, 49, 42 or conics");
      }
    }
    rep.result["config"] = config_to_json(cfg);
  }
  if (!svg.empty()) rep.result["svg"] = {{"path", svg}, {"bytes", export_svg(cfg, svg)}};
}

void cmd_search(Report& rep, const std::string& kind, const std::string& input, const std::string& model, int k) {
  const DerivedConfig cfg = load_config(input, model, rep);
  if (kind == "conics") {
    const auto hits = conic_search_exact(cfg.points, k < 0 ? 6 : k);
    rep.result["hits"] = hits_json(hits);
    rep.result["count"] = hits.size();
  } else if (kind == "collinear") {
    const auto hits = collinear_ktuples(cfg.points, k < 0 ? 3 : k);
    const Json cj = config_to_json(make_config("", "", {}, [&] {
      std::vector<FLine> ls;
      for (const auto& h : hits) ls.push_back(h.line);
      return ls;
    }()));
    Json a = Json::array();
    for (std::size_t i = 0; i < hits.size(); ++i) a.push_back({{"subset", hits[i].subset}, {"line", cj.at("lines").at(i)}});
    rep.result["hits"] = a;
    rep.result["count"] = hits.size();
  } else {
    throw std::invalid_argument("search kind must be conics or collinear");
  }
  rep.result["points"] = cfg.points.size();
}

void cmd_iso(Report& rep, const std::string& a_spec, const std::string& b_spec) {
  const IncidenceStructure a = load_structure(a_spec, rep), b = load_structure(b_spec, rep);
  const auto w = isomorphic(a, b);
  rep.result["type_a"] = census_type(a).text;
  rep.result["type_b"] = census_type(b).text;
  rep.result["isomorphic"] = w.has_value();
  if (w) {
    rep.result["witness"] = {{"point_map", w->point_map}, {"block_map", w->block_map}};
    const bool ok = verify_isomorphism(a, b, *w);
    rep.check("witness flags", "all preserved", ok ? "all preserved" : "mismatch", ok);
  }
}

void cmd_genlines(Report& rep, const std::string& input, const std::string& model, const std::string& seed) {
  const DerivedConfig cfg = load_config(input, model, rep);
  const GeometricLattice L(static_cast<int>(cfg.lines.size()), line_census(cfg.lines).curves);
  rep.result["lines"] = L.n_lines();
  rep.result["lattice_points"] = L.n_points();
  if (!seed.empty()) {
    std::vector<int> s;
    for (int l : parse_ints(seed)) {
      if (l < 1 || l > L.n_lines()) throw std::invalid_argument("seed labels are 1-based line numbers");
      s.push_back(l - 1);
    }
    const ClosureReport c = generation_closure(L, s);
    std::vector<int> got;
    for (int l : c.lines) got.push_back(l + 1);
    rep.result["seed"] = parse_ints(seed);
    rep.result["generates"] = c.generates;
    rep.result["obtained_lines"] = got;
    rep.result["obtained_points"] = c.points.size();
    return;
  }
  const GenerationReport g = generation_number(L);
  std::vector<int> w;
  for (int l : g.witness) w.push_back(l + 1);
  rep.result["g"] = g.g;
  rep.result["witness"] = w;
  Json tested = Json::object(), failed = Json::object();
  for (const auto& [k, n] : g.subsets_tested) tested[std::to_string(k)] = n;
  for (const auto& [k, n] : g.subsets_failed) failed[std::to_string(k)] = n;
  rep.result["subsets_tested"] = tested;
  rep.result["subsets_failed"] = failed;
}

void cmd_realize(Report& rep, const std::string& spec, const RealizeOptions& opt, bool tangent) {
  const IncidenceStructure s = load_structure(spec, rep);
  const RealizeReport r = realize_structure(s, opt);
  Json& j = rep.result;
  j["type"] = census_type(s).text;
  j["success"] = r.success;
  j["seed_index"] = r.seed_index;
  j["seeds_tried"] = r.seeds_tried;
  j["residual"] = r.residual;
  j["frame"] = r.frame;
  Json tv = Json::object();
  for (const auto& [k, n] : r.tvector) tv[std::to_string(k)] = n;
  j["tvector"] = tv;
  j["extra_points"] = r.extra_points;
  j["message"] = r.message;
  j["realization"] = realization_to_json(r.best);
  if (tangent && r.success) {
    const TangentReport t = tangent_dimension(r.best, s);
    j["tangent"] = {{"dimension", t.dimension ? Json(*t.dimension) : Json()},
                    {"unknowns", t.unknowns},
                    {"equations", t.equations},
                    {"rank", t.rank},
                    {"nullity", t.nullity},
                    {"gap", t.gap},
                    {"gauge", t.gauge},
                    {"pinned_dimension", t.pinned_dimension ? Json(*t.pinned_dimension) : Json()},
                    {"pinned_gap", t.pinned_gap},
                    {"verdict", t.verdict}};
  }
}

void cmd_conjecture(Report& rep, const std::string& c1, const std::string& c2, const SweepOptions& opt) {
  if (c1.empty() != c2.empty()) throw std::invalid_argument("--c1 and --c2 go together");
  SweepReport r;
  if (c1.empty()) {
    r = conjecture_sweep(opt);
  } else {
    ConicCoeffs a{}, b{};
    const auto va = parse_doubles(c1, 6, "--c1"), vb = parse_doubles(c2, 6, "--c2");
    std::copy(va.begin(), va.end(), a.begin());
    std::copy(vb.begin(), vb.end(), b.begin());
    r = conjecture_sweep(a, b, opt);
  }
  rep.result = sweep_to_json(r);
}

void cmd_export(Report& rep, const std::string& svg, const std::string& moduli, const std::string& input,
                const std::string& model, const std::string& structure, const std::string& viewport) {
  if (svg.empty() && moduli.empty()) throw std::invalid_argument("export needs --svg or --moduli");
  if (!svg.empty()) {
    Viewport v;
    if (!viewport.empty()) {
      const auto d = parse_doubles(viewport, 4, "--viewport");
      v.xmin = d[0];
      v.xmax = d[1];
      v.ymin = d[2];
      v.ymax = d[3];
    }
    const DerivedConfig cfg = load_config(input, model.empty() ? "gr" : model, rep);
    rep.result["svg"] = {{"path", svg}, {"bytes", export_svg(cfg, svg, v)}, {"name", cfg.name}};
  }
  if (!moduli.empty()) {
    const IncidenceStructure s = load_structure(structure.empty() ? "model:gr-list" : structure, rep);
    std::vector<std::vector<int>> sets;
    for (int p = 0; p < s.n_points(); ++p) {
      std::vector<int> ls;
      for (int b = 0; b < s.n_blocks(); ++b)
        if (s.has(p, b)) ls.push_back(b + 1);
      if (ls.size() >= 3) sets.push_back(ls);
    }
    const ModuliIdeal mi = moduli_ideal_export(s.n_blocks(), sets);
    std::ofstream out(moduli, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + moduli);
    out << mi.text();
    rep.result["moduli"] = {{"path", moduli},
                            {"generators", mi.generators.size()},
                            {"inequations", mi.inequations.size()},
                            {"concurrent_triples", mi.listed_before_dedup}};
  }
}

void cmd_invariants(Report& rep, bool verify, const std::string& emit) {
  const KleinInvariants inv = build_invariants(true);
  const std::vector<std::pair<std::string, const QForm*>> forms = {
      {"phi4", &inv.phi4},   {"phi6", &inv.phi6},   {"phi14", &inv.phi14},
      {"phi21", &inv.phi21}, {"steinerian", &inv.steinerian}, {"phi42", &inv.phi42}};
  Json info = Json::object();
  for (const auto& [name, f] : forms) info[name] = {{"degree", f->degree()}, {"terms", f->term_count()}};
  rep.result["forms"] = info;
  if (verify) {
    const SuiteResult r = run_suite("invariants");
    for (const auto& c : r.checks) rep.checks.push_back(c);
    const KleinPipelineReport p = run_klein_pipeline(inv, 50);
    PrecisionScope ps(60);
    rep.check("Steinerian at quadruple points", "< 1e-40", format_real(p.steinerian_residual, 3),
              p.steinerian_residual < pow10(-40));
    rep.check("conic product against phi42", "< 1e-40", format_real(p.product_spread, 3), p.product_spread < pow10(-40));
  }
  if (!emit.empty()) {
    std::ofstream out(emit, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + emit);
    for (const auto& [name, f] : forms) out << name << " = " << to_text(*f) << "\n";
    rep.result["emitted"] = emit;
  }
}

// ---------------------------------------------------------------------------

Json report_json(const Report& rep, bool timings) {
  Json j;
  j["command"] = rep.command;
  j["inputs_digest"] = fnv1a_hex(rep.command + rep.digest_input);
  j["status"] = rep.pass() ? "PASS" : "FAIL";
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json cj{{"name", c.name}, {"expected", c.expected}, {"found", c.found}, {"status", c.pass ? "PASS" : "FAIL"}};
    if (!c.source.empty()) cj["source"] = c.source;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["result"] = rep.result;
  if (timings) j["timings"] = rep.timings;
  return j;
}

void print_pretty(const Report& rep, bool timings) {
  std::cout << "command: " << rep.command << "\n"
            << "inputs digest: " << fnv1a_hex(rep.command + rep.digest_input) << "\n";
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": expected " << c.expected << ", found " << c.found << "\n";
  if (!rep.checks.empty()) std::cout << "status: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  if (timings)
    for (const auto& [k, s] : rep.timings) std::cout << "time " << k << ": " << s << " s\n";
  if (!rep.result.empty()) std::cout << rep.result.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein arrangement toolkit: verification, construction, search and export"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false, timings = false;
  int threads = 1;
  app.add_flag("--pretty", pretty, "human-readable text instead of JSON");
  app.add_flag("--timings", timings, "include wall-clock timings");
  app.add_option("--threads", threads, "worker cap")->check(CLI::PositiveNumber);

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "run verification suites (all by default)");
  verify->add_option("suites", suites, "suite keys or criterion numbers");

  std::string input, model, svg, what = "28", seed, kind, a_spec, b_spec, c1, c2, moduli, structure, viewport, emit;
  int digits = 50, pair = 12, k = -1;
  auto* census = app.add_subcommand("census", "t-vector and singular points of an arrangement");
  census->add_option("--input", input, "arrangement JSON")->check(CLI::ExistingFile);
  census->add_option("--model", model, "built-in configuration");
  census->add_option("--digits", digits, "working digits for conic arrangements")->check(CLI::Range(20, 400));

  std::string target;
  auto* build = app.add_subcommand("build", "construct a model or derived configuration");
  build->add_option("target", target, "klein, kprime, gr, gr-derived, or another built-in name")->required();
  build->add_option("--pair", pair, "double-orbit pair")->check(CLI::IsMember({12, 23, 13}));
  build->add_option("--what", what, "28, 49, 42 or conics")->check(CLI::IsMember({"28", "49", "42", "conics"}));
  build->add_option("--svg", svg, "write a figure");

  auto* search = app.add_subcommand("search", "exact searches for conics or lines through points");
  search->add_option("kind", kind, "conics or collinear")->required()->check(CLI::IsMember({"conics", "collinear"}));
  search->add_option("--input", input, "arrangement JSON")->check(CLI::ExistingFile);
  search->add_option("--model", model, "built-in configuration");
  search->add_option("--min", k, "minimum number of incident points");

  auto* iso = app.add_subcommand("iso", "isomorphism of two incidence structures");
  iso->add_option("--a", a_spec, "JSON file or model:NAME")->required();
  iso->add_option("--b", b_spec, "JSON file or model:NAME")->required();

  auto* genlines = app.add_subcommand("genlines", "generation closure and generation number of a line arrangement");
  genlines->add_option("--input", input, "arrangement JSON")->check(CLI::ExistingFile);
  genlines->add_option("--model", model, "built-in configuration");
  genlines->add_option("--seed", seed, "comma-separated 1-based line labels");

  RealizeOptions ropt;
  bool tangent = false;
  std::string rspec;
  auto* realize = app.add_subcommand("realize", "numeric realization of an incidence structure");
  realize->add_option("--input", rspec, "structure JSON or model:NAME")->required();
  realize->add_option("--seeds", ropt.seeds, "random restarts")->check(CLI::PositiveNumber);
  realize->add_option("--base-seed", ropt.base_seed, "first seed");
  realize->add_option("--max-iterations", ropt.max_iterations, "iterations per restart")->check(CLI::PositiveNumber);
  realize->add_flag("--tangent", tangent, "local dimension of the realization space");

  SweepOptions sopt;
  auto* conj = app.add_subcommand("conjecture", "circumconic sweep (experimental)");
  conj->add_option("--c1", c1, "outer conic: six coefficients x^2,xy,xz,y^2,yz,z^2");
  conj->add_option("--c2", c2, "middle conic: six coefficients");
  conj->add_option("--steps", sopt.steps, "continuation steps")->check(CLI::PositiveNumber);
  conj->add_option("--samples", sopt.samples, "samples including the unperturbed one")->check(CLI::PositiveNumber);
  conj->add_option("--seed", sopt.base_seed, "base seed");
  conj->add_option("--perturbation", sopt.perturbation, "noise size");
  conj->add_flag("--break-identification", sopt.break_identification, "keep two copies of the inner orbit");

  auto* exp = app.add_subcommand("export", "SVG figures and moduli ideals");
  exp->add_option("--svg", svg, "SVG output path");
  exp->add_option("--moduli", moduli, "moduli ideal output path");
  exp->add_option("--input", input, "arrangement JSON for --svg")->check(CLI::ExistingFile);
  exp->add_option("--model", model, "built-in configuration for --svg (default gr)");
  exp->add_option("--structure", structure, "structure JSON or model:NAME for --moduli (default model:gr-list)");
  exp->add_option("--viewport", viewport, "xmin,xmax,ymin,ymax");

  bool inv_verify = false;
  auto* invariants = app.add_subcommand("invariants", "invariant forms of the Klein quartic");
  invariants->add_flag("--verify", inv_verify, "check the identities");
  invariants->add_option("--emit-forms", emit, "write the forms in text format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report rep;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--pretty" || a == "--timings") continue;
    rep.command += (rep.command.empty() ? "" : " ") + a;
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*verify) cmd_verify(rep, suites);
    if (*census || *search || *genlines) {
      if (input.empty() == model.empty()) throw std::invalid_argument("give exactly one of --input and --model");
    }
    if (*census) cmd_census(rep, input, model, digits);
    if (*build) cmd_build(rep, target, pair, what, svg);
    if (*search) cmd_search(rep, kind, input, model, k);
    if (*iso) cmd_iso(rep, a_spec, b_spec);
    if (*genlines) cmd_genlines(rep, input, model, seed);
    if (*realize) cmd_realize(rep, rspec, ropt, tangent);
    if (*conj) cmd_conjecture(rep, c1, c2, sopt);
    if (*exp) cmd_export(rep, svg, moduli, input, model, structure, viewport);
    if (*invariants) cmd_invariants(rep, inv_verify, emit);
  } catch (const std::exception& e) {
    std::cerr << "klein-forge: " << e.what() << "\n";
    return 2;
  }
  rep.timings["total"] = seconds_since(t0);
  if (pretty)
    print_pretty(rep, timings);
  else
    std::cout << report_json(rep, timings).dump(2) << "\n";
  return rep.pass() ? 0 : 1;
}
