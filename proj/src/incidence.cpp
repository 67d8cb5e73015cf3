#include "klein/incidence.hpp"

#include <algorithm>
#include <bitset>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace klein {

IncidenceStructure::IncidenceStructure(int n_points, int n_blocks)
    : np_(n_points), nb_(n_blocks), f_(static_cast<std::size_t>(n_points * n_blocks), 0) {
  if (n_points < 0 || n_blocks < 0) throw std::invalid_argument("IncidenceStructure: negative size");
}

IncidenceStructure IncidenceStructure::from_blocks(int n_points, const std::vector<std::vector<int>>& blocks) {
  IncidenceStructure s(n_points, static_cast<int>(blocks.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int p : blocks[b]) {
      if (p < 0 || p >= n_points) throw std::out_of_range("IncidenceStructure: point index out of range");
      s.set(p, static_cast<int>(b));
    }
  return s;
}

std::vector<int> IncidenceStructure::block(int b) const {
  std::vector<int> out;
  for (int p = 0; p < np_; ++p)
    if (has(p, b)) out.push_back(p);
  return out;
}

std::vector<int> IncidenceStructure::blocks_through(int p) const {
  std::vector<int> out;
  for (int b = 0; b < nb_; ++b)
    if (has(p, b)) out.push_back(b);
  return out;
}

std::vector<std::vector<int>> IncidenceStructure::blocks() const {
  std::vector<std::vector<int>> out;
  for (int b = 0; b < nb_; ++b) out.push_back(block(b));
  return out;
}

int IncidenceStructure::flag_count() const {
  return static_cast<int>(std::count(f_.begin(), f_.end(), std::uint8_t{1}));
}

bool IncidenceStructure::has_repeated_blocks() const {
  auto bl = blocks();
  std::sort(bl.begin(), bl.end());
  return std::adjacent_find(bl.begin(), bl.end()) != bl.end();
}

std::vector<std::string> IncidenceStructure::rows() const {
  std::vector<std::string> out;
  for (int p = 0; p < np_; ++p) {
    std::string r(static_cast<std::size_t>(nb_), '0');
    for (int b = 0; b < nb_; ++b)
      if (has(p, b)) r[static_cast<std::size_t>(b)] = '1';
    out.push_back(r);
  }
  return out;
}

namespace {

std::string histogram(const std::map<int, int>& h) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : h) {
    if (!first) os << ",";
    first = false;
    os << k << ":" << v;
  }
  os << "}";
  return os.str();
}

}  // namespace

TypeSignature census_type(const IncidenceStructure& s) {
  TypeSignature t;
  t.n_points = s.n_points();
  t.n_blocks = s.n_blocks();
  for (int p = 0; p < s.n_points(); ++p) ++t.point_degrees[static_cast<int>(s.blocks_through(p).size())];
  for (int b = 0; b < s.n_blocks(); ++b) ++t.block_sizes[static_cast<int>(s.block(b).size())];
  t.regular = t.point_degrees.size() == 1 && t.block_sizes.size() == 1;
  std::ostringstream os;
  if (t.regular) {
    const int g = t.point_degrees.begin()->first, k = t.block_sizes.begin()->first;
    t.balanced = t.n_points == t.n_blocks && g == k;
    if (t.balanced)
      os << "(" << t.n_points << "_" << g << ")";
    else
      os << "(" << t.n_points << "_" << g << "," << t.n_blocks << "_" << k << ")";
  } else {
    os << "(points " << t.n_points << histogram(t.point_degrees) << ", blocks " << t.n_blocks
       << histogram(t.block_sizes) << ")";
  }
  t.text = os.str();
  return t;
}

IncidenceStructure dual(const IncidenceStructure& s) {
  IncidenceStructure d(s.n_blocks(), s.n_points());
  for (int p = 0; p < s.n_points(); ++p)
    for (int b = 0; b < s.n_blocks(); ++b)
      if (s.has(p, b)) d.set(b, p);
  return d;
}

// ---------------------------------------------------------------------------
// Isomorphism by joint colour refinement and individualisation

namespace {

struct Graph {
  int np, nb;
  std::vector<std::vector<int>> adj;  // vertices: points then blocks
};

Graph as_graph(const IncidenceStructure& s) {
  Graph g{s.n_points(), s.n_blocks(), std::vector<std::vector<int>>(static_cast<std::size_t>(s.n_points() + s.n_blocks()))};
  for (int p = 0; p < s.n_points(); ++p)
    for (int b = 0; b < s.n_blocks(); ++b)
      if (s.has(p, b)) {
        g.adj[static_cast<std::size_t>(p)].push_back(s.n_points() + b);
        g.adj[static_cast<std::size_t>(s.n_points() + b)].push_back(p);
      }
  return g;
}

int class_count(const std::vector<int>& c) { return static_cast<int>(std::set<int>(c.begin(), c.end()).size()); }

/// Refines both colourings with a shared signature table until stable;
/// false when the colour histograms diverge.
bool refine(const Graph& ga, const Graph& gb, std::vector<int>& ca, std::vector<int>& cb) {
  int classes = class_count(ca);
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> table;
    auto recolour = [&](const Graph& g, const std::vector<int>& c) {
      std::vector<std::pair<int, std::vector<int>>> sig(c.size());
      for (std::size_t v = 0; v < c.size(); ++v) {
        std::vector<int> nc;
        for (int u : g.adj[v]) nc.push_back(c[static_cast<std::size_t>(u)]);
        std::sort(nc.begin(), nc.end());
        sig[v] = {c[v], std::move(nc)};
        table.emplace(sig[v], 0);
      }
      return sig;
    };
    auto sa = recolour(ga, ca);
    auto sb = recolour(gb, cb);
    int id = 0;
    for (auto& [k, v] : table) v = id++;
    for (std::size_t v = 0; v < ca.size(); ++v) ca[v] = table[sa[v]];
    for (std::size_t v = 0; v < cb.size(); ++v) cb[v] = table[sb[v]];
    std::vector<int> ha(ca), hb(cb);
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
    const int now = class_count(ca);
    if (now == classes) return true;
    classes = now;
  }
}

bool search(const Graph& ga, const Graph& gb, const IncidenceStructure& a, const IncidenceStructure& b,
            std::vector<int> ca, std::vector<int> cb, Isomorphism& out) {
  if (!refine(ga, gb, ca, cb)) return false;
  const std::size_t n = ca.size();
  std::map<int, int> size;
  for (int c : ca) ++size[c];
  int pick = -1, best = 0;
  for (auto& [c, k] : size)
    if (k > 1 && (pick < 0 || k < best)) {
      pick = c;
      best = k;
    }
  if (pick < 0) {
    Isomorphism w;
    for (std::size_t v = 0; v < n; ++v) {
      const int target = static_cast<int>(std::find(cb.begin(), cb.end(), ca[v]) - cb.begin());
      if (static_cast<int>(v) < ga.np)
        w.point_map.push_back(target);
      else
        w.block_map.push_back(target - gb.np);
    }
    if (!verify_isomorphism(a, b, w)) return false;
    out = std::move(w);
    return true;
  }
  const int fresh = *std::max_element(ca.begin(), ca.end()) + 1;
  const std::size_t v = static_cast<std::size_t>(std::find(ca.begin(), ca.end(), pick) - ca.begin());
  for (std::size_t w = 0; w < n; ++w) {
    if (cb[w] != pick) continue;
    auto na = ca, nb = cb;
    na[v] = fresh;
    nb[w] = fresh;
    if (search(ga, gb, a, b, std::move(na), std::move(nb), out)) return true;
  }
  return false;
}

}  // namespace

bool verify_isomorphism(const IncidenceStructure& a, const IncidenceStructure& b, const Isomorphism& w) {
  if (a.n_points() != b.n_points() || a.n_blocks() != b.n_blocks()) return false;
  if (static_cast<int>(w.point_map.size()) != a.n_points() || static_cast<int>(w.block_map.size()) != a.n_blocks())
    return false;
  std::vector<int> pm(w.point_map), bm(w.block_map);
  std::sort(pm.begin(), pm.end());
  std::sort(bm.begin(), bm.end());
  for (int i = 0; i < a.n_points(); ++i)
    if (pm[static_cast<std::size_t>(i)] != i) return false;
  for (int i = 0; i < a.n_blocks(); ++i)
    if (bm[static_cast<std::size_t>(i)] != i) return false;
  for (int p = 0; p < a.n_points(); ++p)
    for (int q = 0; q < a.n_blocks(); ++q)
      if (a.has(p, q) != b.has(w.point_map[static_cast<std::size_t>(p)], w.block_map[static_cast<std::size_t>(q)]))
        return false;
  return true;
}

std::optional<Isomorphism> isomorphic(const IncidenceStructure& a, const IncidenceStructure& b) {
  if (a.n_points() != b.n_points() || a.n_blocks() != b.n_blocks() || a.flag_count() != b.flag_count())
    return std::nullopt;
  const Graph ga = as_graph(a), gb = as_graph(b);
  std::vector<int> ca(static_cast<std::size_t>(a.n_points() + a.n_blocks()), 0);
  std::vector<int> cb(ca.size(), 0);
  for (std::size_t v = static_cast<std::size_t>(a.n_points()); v < ca.size(); ++v) ca[v] = cb[v] = 1;
  Isomorphism w;
  if (search(ga, gb, a, b, ca, cb, w)) return w;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Resolvability

namespace {

using Bits = std::bitset<512>;

struct Resolver {
  const std::vector<Bits>& blocks;
  Bits all;
  int classes;
  std::vector<char> used;
  std::vector<std::vector<int>> found;

  bool run() {
    int b = 0;
    while (b < static_cast<int>(blocks.size()) && used[static_cast<std::size_t>(b)]) ++b;
    if (b == static_cast<int>(blocks.size())) return static_cast<int>(found.size()) == classes;
    if (static_cast<int>(found.size()) >= classes) return false;
    std::vector<int> chosen{b};
    used[static_cast<std::size_t>(b)] = 1;
    const bool ok = extend(blocks[static_cast<std::size_t>(b)], chosen);
    used[static_cast<std::size_t>(b)] = 0;
    return ok;
  }

  bool extend(const Bits& covered, std::vector<int>& chosen) {
    if (covered == all) {
      found.push_back(chosen);
      if (run()) return true;
      found.pop_back();
      return false;
    }
    std::size_t p = 0;
    while (covered.test(p)) ++p;
    for (std::size_t c = 0; c < blocks.size(); ++c) {
      if (used[c] || !blocks[c].test(p) || (blocks[c] & covered).any()) continue;
      used[c] = 1;
      chosen.push_back(static_cast<int>(c));
      if (extend(covered | blocks[c], chosen)) return true;
      chosen.pop_back();
      used[c] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::vector<int>>> resolvable(const IncidenceStructure& s, int classes) {
  if (s.n_points() > static_cast<int>(Bits().size())) throw std::invalid_argument("resolvable: too many points");
  if (s.n_blocks() == 0 || classes <= 0) return std::nullopt;
  std::vector<Bits> blocks;
  for (int b = 0; b < s.n_blocks(); ++b) {
    Bits m;
    for (int p : s.block(b)) m.set(static_cast<std::size_t>(p));
    if (m.none()) return std::nullopt;
    blocks.push_back(m);
  }
  Bits all;
  for (int p = 0; p < s.n_points(); ++p) all.set(static_cast<std::size_t>(p));
  Resolver r{blocks, all, classes, std::vector<char>(blocks.size(), 0), {}};
  if (!r.run()) return std::nullopt;
  for (auto& c : r.found) std::sort(c.begin(), c.end());
  std::sort(r.found.begin(), r.found.end());
  return r.found;
}

bool verify_resolution(const IncidenceStructure& s, const std::vector<std::vector<int>>& classes) {
  std::vector<int> seen_block(static_cast<std::size_t>(s.n_blocks()), 0);
  for (const auto& cls : classes) {
    std::vector<int> cover(static_cast<std::size_t>(s.n_points()), 0);
    for (int b : cls) {
      if (b < 0 || b >= s.n_blocks()) return false;
      ++seen_block[static_cast<std::size_t>(b)];
      for (int p : s.block(b)) ++cover[static_cast<std::size_t>(p)];
    }
    if (std::any_of(cover.begin(), cover.end(), [](int c) { return c != 1; })) return false;
  }
  return std::all_of(seen_block.begin(), seen_block.end(), [](int c) { return c == 1; });
}

// ---------------------------------------------------------------------------
// Lattice generation

GeometricLattice::GeometricLattice(int n_lines, std::vector<std::vector<int>> points)
    : n_(n_lines), pts_(std::move(points)) {
  meet_.assign(static_cast<std::size_t>(n_ * n_), -1);
  const int np = n_points();
  join_.assign(static_cast<std::size_t>(np * np), -1);
  std::vector<std::vector<int>> on_line(static_cast<std::size_t>(n_));
  for (int p = 0; p < np; ++p) {
    auto& ls = pts_[static_cast<std::size_t>(p)];
    std::sort(ls.begin(), ls.end());
    if (ls.size() < 2) throw std::invalid_argument("GeometricLattice: a lattice point needs two lines");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (ls[i] < 0 || ls[i] >= n_) throw std::out_of_range("GeometricLattice: line index out of range");
      on_line[static_cast<std::size_t>(ls[i])].push_back(p);
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        auto& m = meet_[static_cast<std::size_t>(ls[i] * n_ + ls[j])];
        if (m >= 0) throw std::invalid_argument("GeometricLattice: two lines meet twice");
        m = p;
        meet_[static_cast<std::size_t>(ls[j] * n_ + ls[i])] = p;
      }
    }
  }
  for (int l = 0; l < n_; ++l)
    for (int m = 0; m < n_; ++m)
      if (l != m && meet(l, m) < 0) throw std::invalid_argument("GeometricLattice: two lines do not meet");
  for (int l = 0; l < n_; ++l) {
    const auto& on = on_line[static_cast<std::size_t>(l)];
    for (int p : on)
      for (int q : on)
        if (p != q) join_[static_cast<std::size_t>(p * np + q)] = l;
  }
}

ClosureReport generation_closure(const GeometricLattice& L, const std::vector<int>& seed) {
  if (seed.empty()) throw std::invalid_argument("generation_closure: empty seed");
  std::vector<char> have_l(static_cast<std::size_t>(L.n_lines()), 0), have_p(static_cast<std::size_t>(L.n_points()), 0);
  std::vector<int> lines, points;
  std::deque<std::pair<bool, int>> queue;  // (is_line, index)
  auto push_line = [&](int l) {
    if (l < 0 || have_l[static_cast<std::size_t>(l)]) return;
    have_l[static_cast<std::size_t>(l)] = 1;
    queue.emplace_back(true, l);
  };
  auto push_point = [&](int p) {
    if (p < 0 || have_p[static_cast<std::size_t>(p)]) return;
    have_p[static_cast<std::size_t>(p)] = 1;
    queue.emplace_back(false, p);
  };
  for (int l : seed) {
    if (l < 0 || l >= L.n_lines()) throw std::out_of_range("generation_closure: seed line out of range");
    push_line(l);
  }
  while (!queue.empty()) {
    auto [is_line, i] = queue.front();
    queue.pop_front();
    if (is_line) {
      for (int m : lines) push_point(L.meet(i, m));
      lines.push_back(i);
    } else {
      for (int q : points) push_line(L.join(i, q));
      points.push_back(i);
    }
  }
  std::sort(lines.begin(), lines.end());
  std::sort(points.begin(), points.end());
  ClosureReport r;
  r.generates = static_cast<int>(lines.size()) == L.n_lines();
  r.lines = std::move(lines);
  r.points = std::move(points);
  return r;
}

GenerationReport generation_number(const GeometricLattice& L, int max_size) {
  const int n = L.n_lines();
  if (max_size < 0 || max_size > n) max_size = n;
  // lines ordered by their multiplicity sequence, then index
  std::vector<std::vector<int>> degseq(static_cast<std::size_t>(n));
  for (int p = 0; p < L.n_points(); ++p)
    for (int l : L.lines_through(p)) degseq[static_cast<std::size_t>(l)].push_back(static_cast<int>(L.lines_through(p).size()));
  for (auto& d : degseq) std::sort(d.rbegin(), d.rend());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degseq[static_cast<std::size_t>(a)] > degseq[static_cast<std::size_t>(b)]; });
  GenerationReport rep;
  for (int k = 1; k <= max_size; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<int> seed;
      for (int i : idx) seed.push_back(order[static_cast<std::size_t>(i)]);
      ++rep.subsets_tested[k];
      if (generation_closure(L, seed).generates) {
        std::sort(seed.begin(), seed.end());
        rep.g = k;
        rep.witness = seed;
        return rep;
      }
      ++rep.subsets_failed[k];
      int p = k - 1;
      while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - k + p) --p;
      if (p < 0) break;
      ++idx[static_cast<std::size_t>(p)];
      for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Moduli ideal export

namespace {

using Monomial = std::vector<std::string>;

std::map<Monomial, int> minor_terms(const std::array<int, 3>& cols, const std::map<std::pair<int, int>, int>& pins) {
  static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  static const std::array<int, 6> sign{1, 1, 1, -1, -1, -1};
  std::map<Monomial, int> terms;
  for (std::size_t k = 0; k < 6; ++k) {
    Monomial m;
    bool zero = false;
    for (std::size_t c = 0; c < 3; ++c) {
      const int row = perms[k][c] + 1, col = cols[c];
      auto it = pins.find({row, col});
      if (it != pins.end()) {
        if (it->second == 0) zero = true;
        continue;
      }
      m.push_back("x_" + std::to_string(row) + "_" + std::to_string(col));
    }
    if (zero) continue;
    std::sort(m.begin(), m.end());
    terms[m] += sign[k];
  }
  for (auto it = terms.begin(); it != terms.end();) it = it->second == 0 ? terms.erase(it) : std::next(it);
  return terms;
}

std::string render(const std::map<Monomial, int>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const int a = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (a != 1 || m.empty()) {
      os << a;
      need_star = true;
    }
    for (const auto& v : m) {
      if (need_star) os << "*";
      os << v;
      need_star = true;
    }
  }
  return os.str();
}

bool is_constant(const std::map<Monomial, int>& t) { return t.size() == 1 && t.begin()->first.empty(); }

}  // namespace

ModuliIdeal moduli_ideal_export(int n_lines, const std::vector<std::vector<int>>& concurrency,
                                const std::map<std::pair<int, int>, int>& pins) {
  for (const auto& [rc, v] : pins) {
    if (rc.first < 1 || rc.first > 3 || rc.second < 1 || rc.second > n_lines)
      throw std::invalid_argument("moduli_ideal_export: pinned entry outside the matrix");
    if (v != 0 && v != 1) throw std::invalid_argument("moduli_ideal_export: pins must be 0 or 1");
  }
  std::vector<std::set<int>> sets;
  for (const auto& c : concurrency) {
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size() || s.size() < 3) throw std::invalid_argument("moduli_ideal_export: malformed concurrency set");
    for (int l : s)
      if (l < 1 || l > n_lines) throw std::invalid_argument("moduli_ideal_export: line label out of range");
    for (const auto& t : sets) {
      std::vector<int> common;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
      if (common.size() >= 2) throw std::invalid_argument("moduli_ideal_export: two concurrency sets share two lines");
    }
    sets.push_back(std::move(s));
  }
  ModuliIdeal out;
  std::set<std::array<int, 3>> conc;
  for (const auto& s : sets) {
    std::vector<int> v(s.begin(), s.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        for (std::size_t k = j + 1; k < v.size(); ++k) {
          ++out.listed_before_dedup;
          conc.insert({v[i], v[j], v[k]});
        }
  }
  for (const auto& t : conc) {
    auto terms = minor_terms(t, pins);
    if (is_constant(terms)) throw std::invalid_argument("moduli_ideal_export: pins force a concurrent minor to be nonzero");
    out.concurrent.push_back(t);
    out.generators.push_back(render(terms));
  }
  for (int i = 1; i <= n_lines; ++i)
    for (int j = i + 1; j <= n_lines; ++j)
      for (int k = j + 1; k <= n_lines; ++k) {
        std::array<int, 3> t{i, j, k};
        if (conc.count(t)) continue;
        auto terms = minor_terms(t, pins);
        if (terms.empty()) throw std::invalid_argument("moduli_ideal_export: pins force a non-concurrent minor to vanish");
        out.nonconcurrent.push_back(t);
        out.inequations.push_back(render(terms));
      }
  return out;
}

std::string ModuliIdeal::text() const {
  std::ostringstream os;
  os << "# ideal I: " << generators.size() << " minors of concurrent triples\n";
  for (const auto& g : generators) os << g << "\n";
  os << "# inequations J: " << inequations.size() << " minors of non-concurrent triples\n";
  for (const auto& g : inequations) os << g << "\n";
  return os.str();
}

}  // namespace klein
