#include "klein/realize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "klein/models.hpp"

namespace klein {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Problem {
  int n_vars = 0;
  // fills residuals and Jacobian at x
  std::function<void(const Vec&, Vec&, Mat&)> eval;
  // rescales blocks after an accepted step
  std::function<void(Vec&)> normalize;
};

struct LMResult {
  Vec x;
  double max_residual = 0;
  int iterations = 0;
};

LMResult levenberg_marquardt(const Problem& pb, Vec x, int max_iter, double tol) {
  Vec r;
  Mat j;
  pb.eval(x, r, j);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int it = 0;
  for (; it < max_iter && r.cwiseAbs().maxCoeff() >= tol; ++it) {
    const Mat jtj = j.transpose() * j;
    const Vec g = j.transpose() * r;
    bool accepted = false;
    while (lambda < 1e14) {
      Mat a = jtj;
      a.diagonal().array() += lambda;
      const Vec step = a.ldlt().solve(-g);
      Vec xn = x + step;
      if (pb.normalize) pb.normalize(xn);
      Vec rn;
      Mat jn;
      pb.eval(xn, rn, jn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = std::move(xn);
        r = std::move(rn);
        j = std::move(jn);
        cost = cn;
        lambda = std::max(lambda / 3, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 4;
    }
    if (!accepted) break;
  }
  return {x, r.size() ? r.cwiseAbs().maxCoeff() : 0.0, it};
}

Eigen::Vector3d block3(const Vec& x, int i) { return x.segment<3>(3 * i); }

/// r = <p, l>/(|p||l|) with its gradients.
double flag_residual(const Eigen::Vector3d& p, const Eigen::Vector3d& l, Eigen::Vector3d& dp, Eigen::Vector3d& dl) {
  const double np = p.norm(), nl = l.norm();
  const double r = p.dot(l) / (np * nl);
  dp = l / (np * nl) - r * p / (np * np);
  dl = p / (np * nl) - r * l / (nl * nl);
  return r;
}

Eigen::Matrix3d conic_matrix(const ConicCoeffs& c) {
  Eigen::Matrix3d m;
  m << c[0], c[1] / 2, c[2] / 2, c[1] / 2, c[3], c[4] / 2, c[2] / 2, c[4] / 2, c[5];
  return m / m.norm();
}

double conic_residual(const Eigen::Matrix3d& c, const Eigen::Vector3d& p, Eigen::Vector3d& dp) {
  const double n2 = p.squaredNorm();
  const double r = p.dot(c * p) / n2;
  dp = 2 * (c * p) / n2 - 2 * r * p / n2;
  return r;
}

double unit_distance(Eigen::Vector3cd a, Eigen::Vector3cd b) {
  a.normalize();
  b.normalize();
  return a.cross(b).norm();
}

// rank from a singular value list padded to `cols`; returns (rank, gap)
std::pair<int, double> numeric_rank(const Eigen::VectorXd& sv, int rows, int cols) {
  const int k = std::min(rows, cols);
  if (k == 0 || sv.size() == 0 || sv(0) < 1e-300) return {0, std::numeric_limits<double>::infinity()};
  int best = 0;
  double gap = 0;
  for (int r = 1; r <= k; ++r) {
    const double below = r < sv.size() ? std::max(sv(r), 1e-16 * sv(0)) : 1e-16 * sv(0);
    const double ratio = sv(r - 1) / below;
    if (ratio > gap) {
      gap = ratio;
      best = r;
    }
  }
  return {best, gap};
}

bool general_position(const std::vector<Eigen::Vector3cd>& v, const std::array<int, 4>& idx) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        Eigen::Matrix3cd m;
        m.col(0) = v[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])].normalized();
        m.col(1) = v[static_cast<std::size_t>(idx[static_cast<std::size_t>(b)])].normalized();
        m.col(2) = v[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])].normalized();
        if (std::abs(m.determinant()) < 1e-3) return false;
      }
  return true;
}

std::optional<std::array<int, 4>> find_general_four(const std::vector<Eigen::Vector3cd>& v) {
  const int n = static_cast<int>(v.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const std::array<int, 4> idx{a, b, c, d};
          if (general_position(v, idx)) return idx;
        }
  return std::nullopt;
}

/// Points no three of which share a block, greedily by index, up to four.
std::vector<int> combinatorial_frame(const IncidenceStructure& s) {
  const int n = s.n_points();
  auto ok = [&](const std::vector<int>& f) {
    for (int b = 0; b < s.n_blocks(); ++b) {
      int on = 0;
      for (int p : f) on += s.has(p, b);
      if (on >= 3) return false;
    }
    return true;
  };
  std::vector<int> best;
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int from) {
    if (cur.size() > best.size()) best = cur;
    if (best.size() == 4) return;
    for (int p = from; p < n && best.size() < 4; ++p) {
      cur.push_back(p);
      if (ok(cur)) rec(cur, p + 1);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(cur, 0);
  return best;
}

}  // namespace

double realization_residual(const Realization& r, const IncidenceStructure& s) {
  if (static_cast<int>(r.points.size()) != s.n_points() || static_cast<int>(r.lines.size()) != s.n_blocks())
    throw std::invalid_argument("realization_residual: size mismatch");
  double worst = 0;
  for (int p = 0; p < s.n_points(); ++p)
    for (int b = 0; b < s.n_blocks(); ++b)
      if (s.has(p, b)) {
        const auto& x = r.points[static_cast<std::size_t>(p)];
        const auto& l = r.lines[static_cast<std::size_t>(b)];
        worst = std::max(worst, std::abs((x.array() * l.array()).sum()) / (x.norm() * l.norm()));
      }
  return worst;
}

Realization transform(const Realization& r, const Eigen::Matrix3cd& t) {
  Realization out;
  const Eigen::Matrix3cd tinv = t.inverse().transpose();
  for (const auto& p : r.points) out.points.push_back(t * p);
  for (const auto& l : r.lines) out.lines.push_back(tinv * l);
  return out;
}

std::vector<NumericPoint> numeric_intersections(const std::vector<Eigen::Vector3cd>& lines, double tol) {
  std::vector<NumericPoint> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Eigen::Vector3cd x = lines[i].normalized().cross(lines[j].normalized());
      if (x.norm() < tol) continue;  // coincident lines
      x.normalize();
      auto it = std::find_if(pts.begin(), pts.end(), [&](const NumericPoint& q) { return unit_distance(q.coords, x) < tol; });
      if (it == pts.end()) {
        pts.push_back({x, {static_cast<int>(i), static_cast<int>(j)}});
      } else {
        for (int l : {static_cast<int>(i), static_cast<int>(j)})
          if (std::find(it->lines.begin(), it->lines.end(), l) == it->lines.end()) it->lines.push_back(l);
      }
    }
  for (auto& p : pts) std::sort(p.lines.begin(), p.lines.end());
  return pts;
}

RealizeReport realize_structure(const IncidenceStructure& s, const RealizeOptions& opt) {
  for (int b = 0; b < s.n_blocks(); ++b)
    if (s.block(b).size() < 2) throw std::invalid_argument("realize_structure: every block needs two points");
  RealizeReport rep;
  rep.frame = combinatorial_frame(s);
  const int np = s.n_points(), nb = s.n_blocks();
  std::vector<int> var_of(static_cast<std::size_t>(np), -1);
  std::vector<Eigen::Vector3d> pinned(static_cast<std::size_t>(np));
  const Eigen::Vector3d frame_coords[4] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  for (std::size_t k = 0; k < rep.frame.size(); ++k)
    pinned[static_cast<std::size_t>(rep.frame[k])] = frame_coords[k];
  int nv = 0;
  for (int p = 0; p < np; ++p)
    if (std::find(rep.frame.begin(), rep.frame.end(), p) == rep.frame.end()) var_of[static_cast<std::size_t>(p)] = nv++;
  const int free_points = nv;
  std::vector<std::pair<int, int>> flags;
  for (int p = 0; p < np; ++p)
    for (int b = 0; b < nb; ++b)
      if (s.has(p, b)) flags.emplace_back(p, b);

  auto point_at = [&](const Vec& x, int p) {
    const int v = var_of[static_cast<std::size_t>(p)];
    return v < 0 ? pinned[static_cast<std::size_t>(p)] : block3(x, v);
  };
  Problem pb;
  pb.n_vars = 3 * (free_points + nb);
  pb.eval = [&](const Vec& x, Vec& r, Mat& j) {
    r.setZero(static_cast<Eigen::Index>(flags.size()));
    j.setZero(static_cast<Eigen::Index>(flags.size()), pb.n_vars);
    for (std::size_t f = 0; f < flags.size(); ++f) {
      const auto [p, b] = flags[f];
      Eigen::Vector3d dp, dl;
      r(static_cast<Eigen::Index>(f)) = flag_residual(point_at(x, p), block3(x, free_points + b), dp, dl);
      const int v = var_of[static_cast<std::size_t>(p)];
      if (v >= 0) j.block<1, 3>(static_cast<Eigen::Index>(f), 3 * v) = dp.transpose();
      j.block<1, 3>(static_cast<Eigen::Index>(f), 3 * (free_points + b)) = dl.transpose();
    }
  };
  pb.normalize = [&](Vec& x) {
    for (int i = 0; i < free_points + nb; ++i) x.segment<3>(3 * i).normalize();
  };

  auto to_realization = [&](const Vec& x) {
    Realization out;
    for (int p = 0; p < np; ++p) out.points.push_back(point_at(x, p).cast<std::complex<double>>());
    for (int b = 0; b < nb; ++b) out.lines.push_back(block3(x, free_points + b).cast<std::complex<double>>());
    return out;
  };
  auto degenerate = [&](const Realization& r) {
    for (std::size_t a = 0; a < r.points.size(); ++a)
      for (std::size_t b = a + 1; b < r.points.size(); ++b)
        if (unit_distance(r.points[a], r.points[b]) < 1e-6) return true;
    for (std::size_t a = 0; a < r.lines.size(); ++a)
      for (std::size_t b = a + 1; b < r.lines.size(); ++b)
        if (unit_distance(r.lines[a], r.lines[b]) < 1e-6) return true;
    return false;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opt.seeds; ++i) {
    ++rep.seeds_tried;
    std::mt19937 rng(opt.base_seed + static_cast<unsigned>(i));
    std::normal_distribution<double> gauss;
    Vec x(pb.n_vars);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = gauss(rng);
    pb.normalize(x);
    const LMResult res = levenberg_marquardt(pb, x, opt.max_iterations, opt.tolerance * 1e-2);
    Realization cand = to_realization(res.x);
    if (degenerate(cand)) continue;
    const double resid = realization_residual(cand, s);
    if (resid < best) {
      best = resid;
      rep.best = std::move(cand);
      rep.seed_index = i;
    }
    if (best < opt.tolerance) break;
  }
  rep.residual = best;
  rep.success = best < opt.tolerance;
  if (rep.seed_index < 0) {
    rep.message = "every seed collapsed to a degenerate configuration";
    return rep;
  }
  rep.message = rep.success ? "realized" : "no seed reached the tolerance";
  for (const auto& q : numeric_intersections(rep.best.lines, 1e-7)) {
    ++rep.tvector[static_cast<int>(q.lines.size())];
    if (q.lines.size() < 3) continue;
    bool known = false;
    for (int p = 0; p < np && !known; ++p) {
      const auto through = s.blocks_through(p);
      known = std::includes(through.begin(), through.end(), q.lines.begin(), q.lines.end());
    }
    if (!known) rep.extra_points.push_back(q.lines);
  }
  std::sort(rep.extra_points.begin(), rep.extra_points.end());
  return rep;
}

TangentReport tangent_dimension(const Realization& r, const IncidenceStructure& s) {
  const double resid = realization_residual(r, s);
  if (resid > 1e-10) throw std::invalid_argument("tangent_dimension: realization residual above 1e-10");
  const int np = s.n_points(), nb = s.n_blocks();
  std::vector<Eigen::Vector3cd> P, L;
  for (const auto& p : r.points) P.push_back(p.normalized());
  for (const auto& l : r.lines) L.push_back(l.normalized());
  std::vector<std::pair<int, int>> flags;
  for (int p = 0; p < np; ++p)
    for (int b = 0; b < nb; ++b)
      if (s.has(p, b)) flags.emplace_back(p, b);
  const int cols = 3 * (np + nb);
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(flags.size()), cols);
  for (std::size_t f = 0; f < flags.size(); ++f) {
    const auto [p, b] = flags[f];
    j.block<1, 3>(static_cast<Eigen::Index>(f), 3 * p) = L[static_cast<std::size_t>(b)].transpose();
    j.block<1, 3>(static_cast<Eigen::Index>(f), 3 * (np + b)) = P[static_cast<std::size_t>(p)].transpose();
  }
  TangentReport rep;
  rep.unknowns = cols;
  rep.equations = static_cast<int>(flags.size());
  rep.gauge = 8 + np + nb;
  Eigen::VectorXd sv;
  if (j.rows() > 0) sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(j).singularValues();
  auto [rank, gap] = numeric_rank(sv, static_cast<int>(j.rows()), cols);
  rep.rank = rank;
  rep.gap = gap;
  rep.nullity = cols - rank;
  const int by_gauge = rep.nullity - rep.gauge;

  // pin four elements in general position and one coordinate of every other element
  std::vector<int> removed;
  if (auto four = find_general_four(P)) {
    for (int p : *four)
      for (int k = 0; k < 3; ++k) removed.push_back(3 * p + k);
  } else if (auto fourl = find_general_four(L)) {
    for (int l : *fourl)
      for (int k = 0; k < 3; ++k) removed.push_back(3 * (np + l) + k);
  }
  if (!removed.empty()) {
    std::set<int> elems;
    for (int c : removed) elems.insert(c / 3);
    for (int e = 0; e < np + nb; ++e) {
      if (elems.count(e)) continue;
      const Eigen::Vector3cd& v = e < np ? P[static_cast<std::size_t>(e)] : L[static_cast<std::size_t>(e - np)];
      int big = 0;
      for (int k = 1; k < 3; ++k)
        if (std::abs(v(k)) > std::abs(v(big))) big = k;
      removed.push_back(3 * e + big);
    }
    std::sort(removed.begin(), removed.end());
    std::vector<int> keep;
    for (int c = 0; c < cols; ++c)
      if (!std::binary_search(removed.begin(), removed.end(), c)) keep.push_back(c);
    Eigen::MatrixXcd jr(j.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) jr.col(static_cast<Eigen::Index>(k)) = j.col(keep[k]);
    Eigen::VectorXd svr;
    if (jr.rows() > 0 && jr.cols() > 0) svr = Eigen::JacobiSVD<Eigen::MatrixXcd>(jr).singularValues();
    auto [rr, gr] = numeric_rank(svr, static_cast<int>(jr.rows()), static_cast<int>(jr.cols()));
    rep.pinned_dimension = static_cast<int>(jr.cols()) - rr;
    rep.pinned_gap = gr;
  }

  if (rep.gap < 1e6 || (rep.pinned_dimension && rep.pinned_gap < 1e6)) {
    rep.verdict = rep.gap < 1e2 ? "indeterminate: ill-conditioned singular value gap" : "indeterminate: singular value gap below 1e6";
  } else if (by_gauge < 0) {
    rep.verdict = "indeterminate: the configuration has a positive-dimensional stabilizer";
  } else if (rep.pinned_dimension && *rep.pinned_dimension != by_gauge) {
    rep.verdict = "indeterminate: gauge subtraction and frame pinning disagree";
  } else {
    rep.dimension = by_gauge;
    rep.verdict = rep.pinned_dimension ? "determined (both gauge fixings agree)" : "determined (gauge subtraction only)";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Circumconic sweep

namespace {

struct SweepSetup {
  std::vector<Eigen::Vector3d> points;  // P1, P2, P3 (and copies of P3 when broken)
  std::vector<Eigen::Vector3d> lines;
  std::vector<std::pair<int, int>> flags;
  std::array<std::vector<int>, 2> conic_points;  // P1, P2
  std::vector<int> third;                       // seven points of the third orbit used for the fit
};

Eigen::Vector3d to_real(const FPoint& p) {
  return {approx_double(p.c[0]).real(), approx_double(p.c[1]).real(), approx_double(p.c[2]).real()};
}

Eigen::Vector3d to_real(const FLine& l) {
  return {approx_double(l.c[0]).real(), approx_double(l.c[1]).real(), approx_double(l.c[2]).real()};
}

SweepSetup sweep_setup(bool broken) {
  const GRModel& g = gr_model();
  SweepSetup st;
  std::map<int, int> index;  // census index -> point index
  for (int k = 0; k < 3; ++k)
    for (int c : g.point_orbits[static_cast<std::size_t>(k)]) {
      index[c] = static_cast<int>(st.points.size());
      st.points.push_back(to_real(g.census.points[static_cast<std::size_t>(c)]).normalized());
    }
  for (const auto& l : g.lines) st.lines.push_back(to_real(l).normalized());
  // the line orbit spanning P2 and P3 gets its own copy of P3 when broken
  int orbit23 = -1;
  for (const auto& sc : subconfigs_14_2_7_4(g))
    if (sc.point_orbits == std::array<int, 2>{2, 3}) orbit23 = sc.line_orbit;
  std::map<int, int> copy;
  if (broken)
    for (int c : g.point_orbits[2]) {
      copy[c] = static_cast<int>(st.points.size());
      st.points.push_back(st.points[static_cast<std::size_t>(index[c])]);
    }
  for (int c : g.quadruple)
    for (int l : g.census.curves[static_cast<std::size_t>(c)]) {
      int p = index[c];
      if (broken && copy.count(c) && GRModel::orbit_of_line(l) == orbit23) p = copy[c];
      st.flags.emplace_back(p, l);
    }
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 7; ++i) st.conic_points[static_cast<std::size_t>(k)].push_back(7 * k + i);
  for (int i = 0; i < 7; ++i) st.third.push_back(broken && i >= 4 ? 21 + i : 14 + i);
  return st;
}

double third_conic_residual(const std::vector<Eigen::Vector3d>& pts) {
  auto row = [](Eigen::Vector3d p) {
    p.normalize();
    Eigen::Matrix<double, 1, 6> r;
    r << p(0) * p(0), p(0) * p(1), p(0) * p(2), p(1) * p(1), p(1) * p(2), p(2) * p(2);
    return r;
  };
  Eigen::Matrix<double, 5, 6> a;
  for (int i = 0; i < 5; ++i) a.row(i) = row(pts[static_cast<std::size_t>(i)]);
  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 6>> svd(a, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 6, 1> c = svd.matrixV().col(5);
  double worst = 0;
  for (std::size_t i = 5; i < pts.size(); ++i) worst = std::max(worst, std::abs(row(pts[i]) * c));
  return worst;
}

}  // namespace

std::pair<ConicCoeffs, ConicCoeffs> symmetric_circumconics() {
  const GRModel& g = gr_model();
  const double r1 = approx_double(g.point_orbit_r2[0]).real(), r2 = approx_double(g.point_orbit_r2[1]).real();
  return {ConicCoeffs{1, 0, 0, 1, 0, -r1}, ConicCoeffs{1, 0, 0, 1, 0, -r2}};
}

SweepSample sweep_sample(const ConicCoeffs& c1, const ConicCoeffs& c2, const SweepOptions& opt) {
  if (opt.steps < 1) throw std::invalid_argument("sweep_sample: steps must be positive");
  const SweepSetup st = sweep_setup(opt.break_identification);
  const auto [b1, b2] = symmetric_circumconics();
  const int npts = static_cast<int>(st.points.size()), nl = static_cast<int>(st.lines.size());
  Vec x(3 * (npts + nl));
  for (int i = 0; i < npts; ++i) x.segment<3>(3 * i) = st.points[static_cast<std::size_t>(i)];
  for (int i = 0; i < nl; ++i) x.segment<3>(3 * (npts + i)) = st.lines[static_cast<std::size_t>(i)];
  const Vec x0 = x;

  std::array<Eigen::Matrix3d, 2> cm;
  Problem pb;
  pb.n_vars = static_cast<int>(x.size());
  const int nflags = static_cast<int>(st.flags.size());
  pb.eval = [&](const Vec& v, Vec& r, Mat& j) {
    r.setZero(nflags + 14);
    j.setZero(nflags + 14, pb.n_vars);
    for (int f = 0; f < nflags; ++f) {
      const auto [p, l] = st.flags[static_cast<std::size_t>(f)];
      Eigen::Vector3d dp, dl;
      r(f) = flag_residual(block3(v, p), block3(v, npts + l), dp, dl);
      j.block<1, 3>(f, 3 * p) = dp.transpose();
      j.block<1, 3>(f, 3 * (npts + l)) = dl.transpose();
    }
    int row = nflags;
    for (int k = 0; k < 2; ++k)
      for (int p : st.conic_points[static_cast<std::size_t>(k)]) {
        Eigen::Vector3d dp;
        r(row) = conic_residual(cm[static_cast<std::size_t>(k)], block3(v, p), dp);
        j.block<1, 3>(row, 3 * p) = dp.transpose();
        ++row;
      }
  };
  pb.normalize = [&](Vec& v) {
    for (int i = 0; i < npts + nl; ++i) v.segment<3>(3 * i).normalize();
  };

  SweepSample out;
  out.c1 = c1;
  out.c2 = c2;
  out.converged = true;
  for (int step = 1; step <= opt.steps; ++step) {
    const double t = static_cast<double>(step) / opt.steps;
    ConicCoeffs a{}, b{};
    for (std::size_t k = 0; k < 6; ++k) {
      a[k] = (1 - t) * b1[k] + t * c1[k];
      b[k] = (1 - t) * b2[k] + t * c2[k];
    }
    cm[0] = conic_matrix(a);
    cm[1] = conic_matrix(b);
    const LMResult res = levenberg_marquardt(pb, x, 200, 1e-14);
    x = res.x;
    out.constraint_residual = res.max_residual;
    out.steps_done = step;
    if (!(res.max_residual < 1e-10)) {
      out.converged = false;
      break;
    }
  }
  std::vector<Eigen::Vector3d> third;
  for (int p : st.third) third.push_back(block3(x, p));
  out.third_conic_residual = third_conic_residual(third);
  double sym = 0;
  for (int i = 0; i < npts + nl; ++i) {
    const Eigen::Vector3d a = x0.segment<3>(3 * i), b = x.segment<3>(3 * i);
    sym = std::max(sym, std::min((a - b).norm(), (a + b).norm()));
  }
  out.symmetry_residual = sym;
  return out;
}

SweepReport conjecture_sweep(const SweepOptions& opt) {
  SweepReport rep;
  rep.options = opt;
  std::tie(rep.base_c1, rep.base_c2) = symmetric_circumconics();
  for (int i = 0; i < opt.samples; ++i) {
    const unsigned seed = opt.base_seed + static_cast<unsigned>(i);
    ConicCoeffs c1 = rep.base_c1, c2 = rep.base_c2;
    if (i > 0) {
      std::mt19937 rng(seed);
      std::normal_distribution<double> gauss(0.0, opt.perturbation);
      for (auto& v : c1) v += gauss(rng);
      for (auto& v : c2) v += gauss(rng);
    }
    SweepSample s = sweep_sample(c1, c2, opt);
    s.index = i;
    s.seed = seed;
    rep.samples.push_back(s);
  }
  return rep;
}

SweepReport conjecture_sweep(const ConicCoeffs& c1, const ConicCoeffs& c2, const SweepOptions& opt) {
  SweepReport rep;
  rep.options = opt;
  std::tie(rep.base_c1, rep.base_c2) = symmetric_circumconics();
  SweepSample base = sweep_sample(rep.base_c1, rep.base_c2, opt);
  base.seed = opt.base_seed;
  rep.samples.push_back(base);
  SweepSample s = sweep_sample(c1, c2, opt);
  s.index = 1;
  s.seed = opt.base_seed;
  rep.samples.push_back(s);
  return rep;
}

}  // namespace klein
