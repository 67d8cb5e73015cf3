#pragma once

// Homogeneous ternary forms over a scalar type S and the operations needed to
// build and manipulate invariants of plane curves.
//
// Coefficients are stored densely in lexicographic order x > y > z, so the
// first nonzero slot is the leading term. Zero slots are skipped by every
// product loop, which keeps the sparse binomial-heavy inputs cheap.

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klein/numeric.hpp"
#include "klein/rational.hpp"
#include "klein/upoly.hpp"

namespace klein {

class InexactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Exponent {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Position of x^i y^j z^(d-i-j) in the dense lexicographic layout.
inline std::size_t monomial_index(int d, int i, int j) {
  const int u = d - i;
  return static_cast<std::size_t>(u * (u + 1) / 2 + (u - j));
}

inline std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

inline Exponent monomial_at(int d, std::size_t idx) {
  int u = 0;
  while (static_cast<std::size_t>((u + 1) * (u + 2) / 2) <= idx) ++u;
  const int j = u - static_cast<int>(idx - static_cast<std::size_t>(u * (u + 1) / 2));
  return {d - u, j, u - j};
}

template <class S>
class TernaryForm {
 public:
  TernaryForm() : d_(0), c_(1, S(0)) {}
  explicit TernaryForm(int degree) : d_(degree), c_(monomial_count(degree), S(0)) {
    if (degree < 0) throw std::invalid_argument("negative degree");
  }

  static TernaryForm monomial(S coeff, int i, int j, int k) {
    TernaryForm f(i + j + k);
    f.c_[monomial_index(f.d_, i, j)] = std::move(coeff);
    return f;
  }
  static TernaryForm constant(S c) { return monomial(std::move(c), 0, 0, 0); }
  static TernaryForm linear(S a, S b, S c) {
    TernaryForm f(1);
    f.c_[0] = std::move(a);
    f.c_[1] = std::move(b);
    f.c_[2] = std::move(c);
    return f;
  }
  static TernaryForm var(int v) { return monomial(S(1), v == 0, v == 1, v == 2); }

  [[nodiscard]] int degree() const { return d_; }
  [[nodiscard]] const std::vector<S>& dense() const { return c_; }
  [[nodiscard]] const S& coeff(int i, int j, int k) const {
    if (i + j + k != d_ || i < 0 || j < 0 || k < 0) throw std::out_of_range("exponent does not match degree");
    return c_[monomial_index(d_, i, j)];
  }
  void set(int i, int j, int k, S v) {
    if (i + j + k != d_ || i < 0 || j < 0 || k < 0) throw std::out_of_range("exponent does not match degree");
    c_[monomial_index(d_, i, j)] = std::move(v);
  }
  [[nodiscard]] bool is_zero() const {
    for (const auto& s : c_)
      if (!detail::coeff_is_zero(s)) return false;
    return true;
  }
  /// Nonzero terms in lexicographic order.
  [[nodiscard]] std::vector<std::pair<Exponent, S>> terms() const {
    std::vector<std::pair<Exponent, S>> t;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!detail::coeff_is_zero(c_[i])) t.emplace_back(monomial_at(d_, i), c_[i]);
    return t;
  }
  [[nodiscard]] std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& s : c_) n += detail::coeff_is_zero(s) ? 0 : 1;
    return n;
  }

  TernaryForm& operator+=(const TernaryForm& o) {
    if (o.d_ != d_) {
      if (o.is_zero()) return *this;
      if (!is_zero()) throw std::invalid_argument("adding forms of different degree");
      *this = o;
      return *this;
    }
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!detail::coeff_is_zero(o.c_[i])) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  TernaryForm& operator-=(const TernaryForm& o) { return *this += -o; }
  TernaryForm& operator*=(const S& s) {
    for (auto& v : c_)
      if (!detail::coeff_is_zero(v)) v = v * s;
    return *this;
  }
  friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }
  friend TernaryForm operator-(TernaryForm a, const TernaryForm& b) { return a -= b; }
  friend TernaryForm operator-(TernaryForm a) {
    for (auto& v : a.c_)
      if (!detail::coeff_is_zero(v)) v = S(0) - v;
    return a;
  }
  friend TernaryForm operator*(TernaryForm a, const S& s) { return a *= s; }
  friend TernaryForm operator*(const S& s, TernaryForm a) { return a *= s; }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
    TernaryForm r(a.d_ + b.d_);
    std::vector<std::pair<Exponent, const S*>> tb;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!detail::coeff_is_zero(b.c_[j])) tb.emplace_back(monomial_at(b.d_, j), &b.c_[j]);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      const Exponent ea = monomial_at(a.d_, i);
      for (const auto& [eb, cb] : tb) {
        auto& slot = r.c_[monomial_index(r.d_, ea.x + eb.x, ea.y + eb.y)];
        slot = slot + a.c_[i] * *cb;
      }
    }
    return r;
  }
  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    if (a.d_ != b.d_) return a.is_zero() && b.is_zero();
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  template <class T, class Conv>
  [[nodiscard]] TernaryForm<T> map(Conv conv) const {
    TernaryForm<T> r(d_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!detail::coeff_is_zero(c_[i])) {
        Exponent e = monomial_at(d_, i);
        r.set(e.x, e.y, e.z, conv(c_[i]));
      }
    return r;
  }

  /// Value at (x, y, z); T must be constructible from S via `conv`.
  template <class T, class Conv>
  [[nodiscard]] T evaluate(const T& x, const T& y, const T& z, Conv conv) const {
    std::vector<T> px(static_cast<std::size_t>(d_) + 1), py(px.size()), pz(px.size());
    px[0] = py[0] = pz[0] = T(1);
    for (std::size_t k = 1; k < px.size(); ++k) {
      px[k] = px[k - 1] * x;
      py[k] = py[k - 1] * y;
      pz[k] = pz[k - 1] * z;
    }
    T acc(0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (detail::coeff_is_zero(c_[i])) continue;
      Exponent e = monomial_at(d_, i);
      acc = acc + conv(c_[i]) * px[static_cast<std::size_t>(e.x)] * py[static_cast<std::size_t>(e.y)] *
                      pz[static_cast<std::size_t>(e.z)];
    }
    return acc;
  }
  [[nodiscard]] S operator()(const S& x, const S& y, const S& z) const {
    return evaluate<S>(x, y, z, [](const S& s) { return s; });
  }

 private:
  int d_;
  std::vector<S> c_;
};

template <class S>
using PolyMap = std::array<TernaryForm<S>, 3>;

template <class S>
TernaryForm<S> pow(const TernaryForm<S>& f, int n) {
  TernaryForm<S> r = TernaryForm<S>::constant(S(1));
  TernaryForm<S> b = f;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

/// Partial derivative with respect to variable v (0 = x, 1 = y, 2 = z).
template <class S>
TernaryForm<S> diff(const TernaryForm<S>& f, int v) {
  if (v < 0 || v > 2) throw std::invalid_argument("variable index must be 0, 1 or 2");
  if (f.degree() == 0) return TernaryForm<S>(0);
  TernaryForm<S> r(f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    int ex[3] = {e.x, e.y, e.z};
    if (ex[v] == 0) continue;
    S k = c * S(ex[v]);
    ex[v] -= 1;
    r.set(ex[0], ex[1], ex[2], r.coeff(ex[0], ex[1], ex[2]) + k);
  }
  return r;
}

template <class S>
PolyMap<S> gradient(const TernaryForm<S>& f) {
  return {diff(f, 0), diff(f, 1), diff(f, 2)};
}

template <class S>
using FormMatrix = std::vector<std::vector<TernaryForm<S>>>;

template <class S>
FormMatrix<S> hessian(const TernaryForm<S>& f) {
  FormMatrix<S> h(3, std::vector<TernaryForm<S>>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = diff(diff(f, i), j);
  return h;
}

/// Jacobian matrix rows = gradients of the given forms.
template <class S>
FormMatrix<S> jacobian(const std::vector<TernaryForm<S>>& fs) {
  FormMatrix<S> m;
  for (const auto& f : fs) {
    auto g = gradient(f);
    m.push_back({g[0], g[1], g[2]});
  }
  return m;
}

/// Determinant of a square matrix of forms by cofactor expansion along the
/// first row.
template <class S>
TernaryForm<S> polymat_det(const FormMatrix<S>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("polymat_det: matrix is not square");
  if (n == 0) return TernaryForm<S>::constant(S(1));
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  TernaryForm<S> acc;
  bool first = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    FormMatrix<S> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<TernaryForm<S>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    TernaryForm<S> term = m[0][c] * polymat_det(minor);
    if (c % 2 == 1) term = -term;
    if (first) {
      acc = std::move(term);
      first = false;
    } else {
      acc += term;
    }
  }
  return acc;
}

/// f(m0, m1, m2).
template <class S>
TernaryForm<S> compose(const TernaryForm<S>& f, const PolyMap<S>& m) {
  const int e = m[0].degree();
  if (m[1].degree() != e || m[2].degree() != e) throw std::invalid_argument("compose: map components differ in degree");
  const auto n = static_cast<std::size_t>(f.degree()) + 1;
  std::array<std::vector<TernaryForm<S>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    auto& p = pw[static_cast<std::size_t>(v)];
    p.reserve(n);
    p.push_back(TernaryForm<S>::constant(S(1)));
    for (std::size_t k = 1; k < n; ++k) p.push_back(p.back() * m[static_cast<std::size_t>(v)]);
  }
  TernaryForm<S> acc(f.degree() * e);
  for (const auto& [ex, c] : f.terms()) {
    TernaryForm<S> t = pw[0][static_cast<std::size_t>(ex.x)] * pw[1][static_cast<std::size_t>(ex.y)];
    t = t * pw[2][static_cast<std::size_t>(ex.z)];
    acc += t * c;
  }
  return acc;
}

/// Exact quotient f / g by lexicographic leading-term division. Throws
/// InexactDivision if a remainder survives.
template <class S>
TernaryForm<S> divide_exact(const TernaryForm<S>& f, const TernaryForm<S>& g) {
  if (g.is_zero()) throw std::invalid_argument("divide_exact: division by zero form");
  if (f.is_zero()) return TernaryForm<S>(std::max(0, f.degree() - g.degree()));
  if (f.degree() < g.degree()) throw InexactDivision("divide_exact: divisor has larger degree");
  const auto gt = g.terms();
  const Exponent lg = gt.front().first;
  const S inv_lead = S(1) / gt.front().second;
  TernaryForm<S> r = f;
  TernaryForm<S> q(f.degree() - g.degree());
  const auto& rd = r.dense();
  for (std::size_t idx = 0; idx < rd.size(); ++idx) {
    if (detail::coeff_is_zero(rd[idx])) continue;
    const Exponent lr = monomial_at(r.degree(), idx);
    const Exponent qe{lr.x - lg.x, lr.y - lg.y, lr.z - lg.z};
    if (qe.x < 0 || qe.y < 0 || qe.z < 0) throw InexactDivision("divide_exact: nonzero remainder");
    const S qc = rd[idx] * inv_lead;
    q.set(qe.x, qe.y, qe.z, qc);
    for (const auto& [eg, cg] : gt) {
      const int i = qe.x + eg.x, j = qe.y + eg.y, k = qe.z + eg.z;
      r.set(i, j, k, r.coeff(i, j, k) - qc * cg);
    }
  }
  return q;
}

/// Binary form c[0] s^d + c[1] s^(d-1) t + ... + c[d] t^d.
template <class S>
struct BinaryForm {
  int degree = 0;
  std::vector<S> c;

  [[nodiscard]] bool is_zero() const {
    for (const auto& v : c)
      if (!detail::coeff_is_zero(v)) return false;
    return true;
  }
  /// Dehomogenized at s = 1 as a polynomial in t (ascending powers).
  [[nodiscard]] std::vector<S> in_t() const { return c; }
};

/// f restricted to the line L: substitutes P(s,t) = s P0 + t P1 where P0, P1
/// are the points of L obtained by solving for its last nonzero coordinate.
template <class S>
BinaryForm<S> restrict_to_line(const TernaryForm<S>& f, const std::array<S, 3>& L) {
  int p = 2;
  while (p >= 0 && detail::coeff_is_zero(L[static_cast<std::size_t>(p)])) --p;
  if (p < 0) throw std::invalid_argument("restrict_to_line: zero line");
  int others[2], n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != p) others[n++] = i;
  std::array<S, 3> P0{S(0), S(0), S(0)}, P1{S(0), S(0), S(0)};
  const S lp = L[static_cast<std::size_t>(p)];
  P0[static_cast<std::size_t>(others[0])] = S(1);
  P0[static_cast<std::size_t>(p)] = S(0) - L[static_cast<std::size_t>(others[0])] / lp;
  P1[static_cast<std::size_t>(others[1])] = S(1);
  P1[static_cast<std::size_t>(p)] = S(0) - L[static_cast<std::size_t>(others[1])] / lp;

  // Each coordinate is the linear binary form P0[v] s + P1[v] t; as a
  // polynomial in t (s = 1) it is P0[v] + P1[v] t.
  const int d = f.degree();
  std::array<std::vector<UPoly<S>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    auto& pv = pw[static_cast<std::size_t>(v)];
    UPoly<S> lin(std::vector<S>{P0[static_cast<std::size_t>(v)], P1[static_cast<std::size_t>(v)]});
    pv.push_back(UPoly<S>::constant(S(1)));
    for (int k = 1; k <= d; ++k) pv.push_back(pv.back() * lin);
  }
  UPoly<S> acc;
  for (const auto& [e, c] : f.terms()) {
    acc = acc + UPoly<S>::constant(c) * pw[0][static_cast<std::size_t>(e.x)] * pw[1][static_cast<std::size_t>(e.y)] *
                    pw[2][static_cast<std::size_t>(e.z)];
  }
  BinaryForm<S> b;
  b.degree = d;
  b.c.assign(static_cast<std::size_t>(d) + 1, S(0));
  // coefficient of t^k is the coefficient of s^(d-k) t^k
  for (std::size_t k = 0; k < acc.coeffs().size(); ++k) b.c[static_cast<std::size_t>(k)] = acc.coeffs()[k];
  return b;
}

/// True iff gcd(f, f') is constant.
template <class S>
bool resultant_squarefree(const UPoly<S>& f) {
  return is_squarefree(f);
}

// ---------------------------------------------------------------------------
// Text format: "3x^2y + z^3", "(1/2)x^2 - (1 + a)yz". Coefficients other than
// integers are written in parentheses.

template <class S>
std::string to_text(const TernaryForm<S>& f, const std::function<std::string(const S&)>& coeff_str,
                    const std::function<bool(const S&)>& is_negative) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    const bool neg = is_negative(c);
    const S mag = neg ? S(0) - c : c;
    std::string cs = coeff_str(mag);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    const bool unit = cs == "1";
    const bool has_vars = e.x + e.y + e.z > 0;
    if (!unit || !has_vars) os << cs;
    const char* names = "xyz";
    const int ex[3] = {e.x, e.y, e.z};
    for (int v = 0; v < 3; ++v) {
      if (ex[v] == 0) continue;
      os << names[v];
      if (ex[v] > 1) os << '^' << ex[v];
    }
  }
  if (first) return "0";
  return os.str();
}

inline std::string to_text(const TernaryForm<Rational>& f) {
  return to_text<Rational>(
      f,
      [](const Rational& q) { return q.get_den() == 1 ? q.get_str() : "(" + q.get_str() + ")"; },
      [](const Rational& q) { return sgn(q) < 0; });
}

/// Parses the text format. `parse_coeff` receives the contents of a
/// parenthesized coefficient or an unsigned integer literal.
template <class S>
TernaryForm<S> parse_form(const std::string& text, const std::function<S(const std::string&)>& parse_coeff) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("parse_form: empty input");
  struct Term {
    S c;
    int e[3];
  };
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_form: " + why + " at position " + std::to_string(pos));
  };
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (!terms.empty()) {
      fail("expected + or -");
    }
    S c(1);
    bool have_coeff = false;
    if (pos < s.size() && s[pos] == '(') {
      int depth = 0;
      std::size_t start = pos + 1;
      for (; pos < s.size(); ++pos) {
        if (s[pos] == '(') ++depth;
        if (s[pos] == ')' && --depth == 0) break;
      }
      if (pos >= s.size()) fail("unbalanced parenthesis");
      c = parse_coeff(s.substr(start, pos - start));
      ++pos;
      have_coeff = true;
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
      c = parse_coeff(s.substr(start, pos - start));
      have_coeff = true;
    }
    if (pos < s.size() && s[pos] == '*') ++pos;
    Term t{c, {0, 0, 0}};
    bool have_var = false;
    while (pos < s.size() && (s[pos] == 'x' || s[pos] == 'y' || s[pos] == 'z')) {
      int v = s[pos] - 'x';
      ++pos;
      int ex = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("missing exponent");
        ex = std::stoi(s.substr(start, pos - start));
      }
      t.e[v] += ex;
      have_var = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (!have_coeff && !have_var) fail("empty term");
    if (neg) t.c = S(0) - t.c;
    terms.push_back(std::move(t));
  }
  const int d = terms.front().e[0] + terms.front().e[1] + terms.front().e[2];
  TernaryForm<S> f(d);
  for (const auto& t : terms) {
    if (t.e[0] + t.e[1] + t.e[2] != d) throw std::invalid_argument("parse_form: form is not homogeneous");
    f.set(t.e[0], t.e[1], t.e[2], f.coeff(t.e[0], t.e[1], t.e[2]) + t.c);
  }
  return f;
}

inline TernaryForm<Rational> parse_rational_form(const std::string& text) {
  return parse_form<Rational>(text, [](const std::string& c) {
    std::string t;
    for (char ch : c)
      if (ch != ' ') t.push_back(ch);
    Rational q(t, 10);
    q.canonicalize();
    return q;
  });
}

}  // namespace klein
