#include "klein/svg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace klein {

namespace {

constexpr int kConicSamples = 128;

double real_value(const FieldElement& u) {
  if (u.field() && !u.field()->is_real()) throw std::invalid_argument("SVG export needs real coordinates");
  return approx_double(u).real();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return std::string(buf) == "-0.000" ? "0.000" : buf;
}

struct Canvas {
  const Viewport& v;
  double height() const { return v.width * (v.ymax - v.ymin) / (v.xmax - v.xmin); }
  double px(double x) const { return (x - v.xmin) / (v.xmax - v.xmin) * v.width; }
  double py(double y) const { return (v.ymax - y) / (v.ymax - v.ymin) * height(); }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '&') out += "&amp;";
    else if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else out += ch;
  }
  return out;
}

double view_span(const Viewport& v) { return std::hypot(v.xmax - v.xmin, v.ymax - v.ymin); }

}  // namespace

std::optional<std::array<double, 4>> clip_line(double a, double b, double c, const Viewport& v) {
  std::vector<std::array<double, 2>> hits;
  if (std::abs(b) > 1e-300)
    for (double x : {v.xmin, v.xmax}) {
      const double y = -(a * x + c) / b;
      if (y >= v.ymin && y <= v.ymax) hits.push_back({x, y});
    }
  if (std::abs(a) > 1e-300)
    for (double y : {v.ymin, v.ymax}) {
      const double x = -(b * y + c) / a;
      if (x >= v.xmin && x <= v.xmax) hits.push_back({x, y});
    }
  double best = 0;
  std::optional<std::array<double, 4>> seg;
  for (std::size_t i = 0; i < hits.size(); ++i)
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double d = std::hypot(hits[i][0] - hits[j][0], hits[i][1] - hits[j][1]);
      if (d > best) {
        best = d;
        seg = std::array<double, 4>{hits[i][0], hits[i][1], hits[j][0], hits[j][1]};
      }
    }
  return seg;
}

std::vector<std::vector<std::array<double, 2>>> sample_conic(const std::array<double, 6>& k, const Viewport& v) {
  Eigen::Matrix2d a;
  a << k[0], k[1] / 2, k[1] / 2, k[3];
  const Eigen::Vector2d b(k[2] / 2, k[4] / 2);
  const double f = k[5];
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), std::abs(f)});
  std::vector<std::vector<std::array<double, 2>>> out;
  if (scale == 0) return out;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a / scale);
  const Eigen::Vector2d lam = es.eigenvalues();
  const Eigen::Matrix2d r = es.eigenvectors();
  const double span = view_span(v);
  auto at = [&](const Eigen::Vector2d& c, double u1, double u2) {
    const Eigen::Vector2d p = c + u1 * r.col(0) + u2 * r.col(1);
    return std::array<double, 2>{p(0), p(1)};
  };
  if (std::abs(lam(0) * lam(1)) > 1e-12) {
    const Eigen::Vector2d c = -(a.inverse() * b);
    const double h = -(f + b.dot(c)) / scale;  // lam1 u1^2 + lam2 u2^2 = h
    if (std::abs(h) < 1e-14) return out;
    if (lam(0) * lam(1) > 0) {
      if (lam(0) * h < 0) return out;
      const double s1 = std::sqrt(h / lam(0)), s2 = std::sqrt(h / lam(1));
      std::vector<std::array<double, 2>> ring;
      for (int i = 0; i <= kConicSamples; ++i) {
        const double t = 2 * M_PI * (i % kConicSamples) / kConicSamples;
        ring.push_back(at(c, s1 * std::cos(t), s2 * std::sin(t)));
      }
      out.push_back(ring);
      return out;
    }
    // hyperbola: the axis whose eigenvalue has the sign of h is transverse
    const int tr = lam(0) * h > 0 ? 0 : 1;
    const double st = std::sqrt(h / lam(tr)), sc = std::sqrt(-h / lam(1 - tr));
    const double smax = std::asinh((span + c.norm()) / sc);
    for (int branch : {1, -1}) {
      std::vector<std::array<double, 2>> arc;
      for (int i = 0; i < kConicSamples / 2; ++i) {
        const double s = -smax + 2 * smax * i / (kConicSamples / 2 - 1);
        const double ut = branch * st * std::cosh(s), uc = sc * std::sinh(s);
        arc.push_back(tr == 0 ? at(c, ut, uc) : at(c, uc, ut));
      }
      out.push_back(arc);
    }
    return out;
  }
  // parabola: one eigenvalue vanishes
  const int q = std::abs(lam(0)) > std::abs(lam(1)) ? 0 : 1;
  const double l = lam(q) * scale;
  const double b1 = b.dot(r.col(q)), b2 = b.dot(r.col(1 - q));
  if (std::abs(l) < 1e-14 * scale || std::abs(b2) < 1e-12 * scale) return out;
  const double u0 = -b1 / l;
  std::vector<std::array<double, 2>> arc;
  for (int i = 0; i < kConicSamples; ++i) {
    const double u = u0 - span + 2 * span * i / (kConicSamples - 1);
    const double w = -(l * u * u + 2 * b1 * u + f) / (2 * b2);
    const Eigen::Vector2d p = u * r.col(q) + w * r.col(1 - q);
    arc.push_back({p(0), p(1)});
  }
  out.push_back(arc);
  return out;
}

std::string render_svg(const DerivedConfig& cfg, const Viewport& v) {
  if (!(v.xmax > v.xmin) || !(v.ymax > v.ymin) || v.width <= 0) throw std::invalid_argument("empty viewport");
  const Canvas cv{v};
  std::ostringstream os;
  const std::string w = std::to_string(v.width), h = num(cv.height());
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
     << "<title>" << escape(cfg.name) << "</title>\n"
     << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
     << "\"/></clipPath></defs>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<g stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  if (v.ymin <= 0 && v.ymax >= 0)
    os << "<line x1=\"0.000\" y1=\"" << num(cv.py(0)) << "\" x2=\"" << w << ".000\" y2=\"" << num(cv.py(0)) << "\"/>\n";
  if (v.xmin <= 0 && v.xmax >= 0)
    os << "<line x1=\"" << num(cv.px(0)) << "\" y1=\"0.000\" x2=\"" << num(cv.px(0)) << "\" y2=\"" << h << "\"/>\n";
  os << "</g>\n<g clip-path=\"url(#view)\" fill=\"none\" stroke-width=\"1\">\n";
  for (const auto& l : cfg.lines) {
    const auto seg = clip_line(real_value(l.c[0]), real_value(l.c[1]), real_value(l.c[2]), v);
    if (!seg) continue;
    os << "<line stroke=\"#1f4e99\" x1=\"" << num(cv.px((*seg)[0])) << "\" y1=\"" << num(cv.py((*seg)[1])) << "\" x2=\""
       << num(cv.px((*seg)[2])) << "\" y2=\"" << num(cv.py((*seg)[3])) << "\"/>\n";
  }
  for (const auto& q : cfg.conics) {
    const auto u = q.upper();
    const std::array<double, 6> k{real_value(u[0]), 2 * real_value(u[1]), 2 * real_value(u[2]),
                                  real_value(u[3]), 2 * real_value(u[4]), real_value(u[5])};
    for (const auto& arc : sample_conic(k, v)) {
      os << "<polyline stroke=\"#b03a2e\" points=\"";
      for (std::size_t i = 0; i < arc.size(); ++i)
        os << (i ? " " : "") << num(cv.px(arc[i][0])) << "," << num(cv.py(arc[i][1]));
      os << "\"/>\n";
    }
  }
  os << "</g>\n<g fill=\"black\">\n";
  for (const auto& p : cfg.points) {
    const double z = real_value(p.c[2]);
    if (z == 0) continue;
    const double x = real_value(p.c[0]) / z, y = real_value(p.c[1]) / z;
    if (x < v.xmin || x > v.xmax || y < v.ymin || y > v.ymax) continue;
    os << "<circle cx=\"" << num(cv.px(x)) << "\" cy=\"" << num(cv.py(y)) << "\" r=\"2.5\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::size_t export_svg(const DerivedConfig& cfg, const std::string& path, const Viewport& v) {
  const std::string s = render_svg(cfg, v);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << s;
  if (!out) throw std::runtime_error("write failed for " + path);
  return s.size();
}

}  // namespace klein
