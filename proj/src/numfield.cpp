#include "klein/numfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "klein/upoly.hpp"

namespace klein {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < t.size(); ++i) {
    if (t[i] == '/' && !slash && i > start && i + 1 < t.size()) {
      slash = true;
      continue;
    }
    if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad rational: " + s);
  }
  if (t[0] == '+') t.erase(0, 1);
  Rational q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

using QPoly = UPoly<Rational>;

QPoly full_minpoly(const std::vector<Rational>& m) {
  std::vector<Rational> v(m);
  v.emplace_back(1);
  return QPoly(std::move(v));
}

template <class T>
T eval_minpoly(const std::vector<Rational>& m, const T& z) {
  T acc(1);
  for (auto it = m.rbegin(); it != m.rend(); ++it) acc = acc * z + T(to_real(*it));
  return acc;
}

template <class T>
T eval_minpoly_deriv(const std::vector<Rational>& m, const T& z) {
  const auto d = static_cast<long>(m.size());
  T acc{Real(d)};
  for (long i = d - 1; i >= 1; --i) acc = acc * z + T(to_real(m[static_cast<std::size_t>(i)]) * Real(i));
  return acc;
}

std::complex<double> newton_double(const std::vector<Rational>& m, std::complex<double> z, bool& ok) {
  ok = false;
  const auto d = m.size();
  for (int it = 0; it < 200; ++it) {
    std::complex<double> p(1.0), dp(static_cast<double>(d));
    for (std::size_t i = d; i-- > 0;) p = p * z + m[i].get_d();
    for (std::size_t i = d; i-- > 1;) dp = dp * z + m[i].get_d() * static_cast<double>(i);
    if (std::abs(dp) == 0.0) return z;
    std::complex<double> step = p / dp;
    z -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) {
      ok = true;
      return z;
    }
  }
  return z;
}

}  // namespace

FieldPtr NumberField::create(std::vector<Rational> minpoly, std::complex<double> root_hint) {
  if (minpoly.empty()) throw std::invalid_argument("minimal polynomial must have degree >= 1");
  QPoly m = full_minpoly(minpoly);
  if (!is_squarefree(m)) throw std::invalid_argument("minimal polynomial is not squarefree");

  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->minpoly_ = minpoly;
  const int d = static_cast<int>(minpoly.size());

  // t^k mod m for k = 0 .. 2d-2
  f->red_.assign(static_cast<std::size_t>(2 * d - 1), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
  for (int k = 0; k < d; ++k) f->red_[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
  for (int k = d; k < 2 * d - 1; ++k) {
    const auto& prev = f->red_[static_cast<std::size_t>(k - 1)];
    auto& cur = f->red_[static_cast<std::size_t>(k)];
    const Rational top = prev[static_cast<std::size_t>(d - 1)];
    for (int i = d - 1; i >= 1; --i) cur[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] -= top * minpoly[static_cast<std::size_t>(i)];
  }

  // Locate all roots; the hint must Newton-converge to its nearest root.
  std::complex<double> chosen;
  {
    PrecisionScope ps(40);
    std::vector<ComplexR> c;
    for (const auto& q : minpoly) c.emplace_back(to_real(q));
    c.emplace_back(1);
    auto roots = polynomial_roots(std::span<const ComplexR>(c), pow10(-30));
    std::size_t best = 0;
    double bestd = 1e300;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double dd = std::abs(to_std(roots[i]) - root_hint);
      if (dd < bestd) {
        bestd = dd;
        best = i;
      }
    }
    chosen = to_std(roots[best]);
    bool ok = false;
    std::complex<double> z = newton_double(minpoly, root_hint, ok);
    if (!ok || std::abs(z - chosen) > 1e-8 * std::max(1.0, std::abs(chosen)))
      throw std::invalid_argument("root hint does not converge to a root of the minimal polynomial");
    f->is_real_ = abs(roots[best].im) < Real(1e-25) * std::max(Real(1), abs(roots[best]));
    if (f->is_real_) chosen = {chosen.real(), 0.0};
    f->roots_[40] = {format_real(roots[best].re, 45),
                     f->is_real_ ? std::string("0") : format_real(roots[best].im, 45)};
  }
  (void)f->root_at(80);
  return f;
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = create({Rational(0)}, {0.0, 0.0});
  return q;
}

ComplexR NumberField::root_at(unsigned digits10) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = roots_.lower_bound(digits10);
  if (it != roots_.end()) return {Real(it->second.first), Real(it->second.second)};
  const auto& [re, im] = std::prev(roots_.end())->second;
  std::pair<std::string, std::string> stored;
  {
    PrecisionScope ps(digits10 + 20);
    ComplexR z{Real(re), Real(im)};
    const Real tol = pow10(-static_cast<int>(digits10) - 12);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
      ComplexR step = eval_minpoly(minpoly_, z) / eval_minpoly_deriv(minpoly_, z);
      if (is_real_) step.im = 0;
      z -= step;
      converged = abs(step) < tol * std::max(Real(1), abs(z));
    }
    if (!converged) throw PrecisionError("root refinement did not converge");
    stored = {format_real(z.re, static_cast<int>(digits10) + 15),
              is_real_ ? std::string("0") : format_real(z.im, static_cast<int>(digits10) + 15)};
  }
  roots_[digits10] = stored;
  return {Real(stored.first), Real(stored.second)};
}

bool NumberField::same_as(const NumberField& o) const {
  if (this == &o) return true;
  if (minpoly_ != o.minpoly_) return false;
  return std::abs(root_double() - o.root_double()) < 1e-12;
}

// ---------------------------------------------------------------------------

class FieldOps {
 public:
  static const FieldPtr& common(const FieldElement& a, const FieldElement& b) {
    if (!a.f_) return b.f_;
    if (!b.f_) return a.f_;
    if (a.f_ != b.f_ && !a.f_->same_as(*b.f_)) throw FieldMismatch("elements of different number fields");
    return a.f_;
  }
  static std::vector<Rational> promoted(const FieldElement& u, const FieldPtr& f) {
    if (!f || u.f_) return u.c_;
    std::vector<Rational> v(static_cast<std::size_t>(f->degree()), Rational(0));
    v[0] = u.c_[0];
    return v;
  }
  static void adopt(FieldElement& a, const FieldPtr& f) {
    if (f && !a.f_) {
      a.c_ = promoted(a, f);
      a.f_ = f;
    }
  }
};

FieldElement::FieldElement(FieldPtr f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  if (!f_) {
    if (c_.size() != 1) throw std::invalid_argument("rational element needs exactly one coefficient");
    return;
  }
  const auto d = static_cast<std::size_t>(f_->degree());
  if (c_.size() > d) {
    // reduce a longer coefficient vector modulo m
    std::vector<Rational> r(d, Rational(0));
    const auto& tab = f_->reduction_table();
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (is_zero(c_[k])) continue;
      if (k >= tab.size()) throw std::invalid_argument("coefficient vector too long");
      for (std::size_t i = 0; i < d; ++i)
        if (!is_zero(tab[k][i])) r[i] += c_[k] * tab[k][i];
    }
    c_ = std::move(r);
  }
  c_.resize(d, Rational(0));
}

FieldElement FieldElement::generator(const FieldPtr& f) {
  std::vector<Rational> v(static_cast<std::size_t>(f->degree()), Rational(0));
  if (f->degree() == 1)
    v[0] = -f->minpoly()[0];
  else
    v[1] = 1;
  return {f, std::move(v)};
}

FieldElement FieldElement::constant(const FieldPtr& f, const Rational& v) {
  std::vector<Rational> c(static_cast<std::size_t>(f->degree()), Rational(0));
  c[0] = v;
  return {f, std::move(c)};
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return is_zero(q); });
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw std::domain_error("field element is not rational");
  return c_[0];
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  FieldOps::adopt(*this, FieldOps::common(*this, o));
  if (o.f_ || !f_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    c_[0] += o.c_[0];
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  FieldOps::adopt(*this, FieldOps::common(*this, o));
  if (o.f_ || !f_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  } else {
    c_[0] -= o.c_[0];
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  const FieldPtr& f = FieldOps::common(*this, o);
  if (!o.f_ || o.is_rational()) {
    const Rational s = o.c_[0];
    FieldOps::adopt(*this, f);
    for (auto& q : c_) q *= s;
    return *this;
  }
  if (!f_ || is_rational()) {
    const Rational s = c_[0];
    f_ = f;
    c_ = o.c_;
    for (auto& q : c_) q *= s;
    return *this;
  }
  const auto d = c_.size();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (!is_zero(o.c_[j])) prod[i + j] += c_[i] * o.c_[j];
  }
  const auto& tab = f->reduction_table();
  std::vector<Rational> r(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t k = d; k < prod.size(); ++k) {
    if (is_zero(prod[k])) continue;
    for (std::size_t i = 0; i < d; ++i)
      if (!is_zero(tab[k][i])) r[i] += prod[k] * tab[k][i];
  }
  c_ = std::move(r);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= inverse(o); }

FieldElement operator-(FieldElement a) {
  for (auto& q : a.c_) q = -q;
  return a;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.f_ || !b.f_) {
    const FieldElement& r = a.f_ ? b : a;
    const FieldElement& e = a.f_ ? a : b;
    return e.is_rational() && e.c_[0] == r.c_[0];
  }
  FieldOps::common(a, b);
  return a.c_ == b.c_;
}

bool is_zero(const FieldElement& u) {
  return std::all_of(u.coeffs().begin(), u.coeffs().end(), [](const Rational& q) { return is_zero(q); });
}

FieldElement inverse(const FieldElement& u) {
  if (is_zero(u)) throw std::domain_error("inverse of zero field element");
  if (u.is_rational()) {
    Rational inv = 1 / u.coeffs()[0];
    if (!u.field()) return {inv};
    return FieldElement::constant(u.field(), inv);
  }
  const auto& f = u.field();
  QPoly a(u.coeffs());
  QPoly m = full_minpoly(f->minpoly());
  auto [g, s, t] = ext_gcd(a, m);
  if (g.degree() != 0) throw std::domain_error("element is a zero divisor (reducible minimal polynomial)");
  auto r = divmod(s, m).second;
  std::vector<Rational> v(r.coeffs());
  return {f, std::move(v)};
}

int compare(const FieldElement& a, const FieldElement& b) {
  const FieldPtr& f = FieldOps::common(a, b);
  auto va = FieldOps::promoted(a, f);
  auto vb = FieldOps::promoted(b, f);
  for (std::size_t i = 0; i < va.size(); ++i) {
    int c = cmp(va[i], vb[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

namespace {

ComplexR eval_embedding(const FieldElement& u, unsigned digits) {
  if (!u.field()) return {to_real(u.coeffs()[0])};
  ComplexR z = u.field()->root_at(digits);
  ComplexR acc{};
  const auto& c = u.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + ComplexR(to_real(*it));
  return acc;
}

}  // namespace

int real_sign(const FieldElement& u) {
  if (u.field() && !u.field()->is_real()) throw std::domain_error("real_sign on a non-real field");
  if (is_zero(u)) return 0;
  if (u.is_rational()) return sgn(u.coeffs()[0]) < 0 ? -1 : 1;
  for (unsigned digits = 40; digits <= 6400; digits *= 2) {
    PrecisionScope ps(digits + 10);
    Real r = u.field()->root_at(digits + 10).re;
    Real v = 0, bound = 0, pw = 1;
    for (const auto& q : u.coeffs()) {
      Real cq = to_real(q);
      v += cq * pw;
      bound += abs(cq) * abs(pw);
      pw *= r;
    }
    Real err = bound * pow10(-static_cast<int>(digits)) * Real(static_cast<long>(u.coeffs().size() + 2));
    if (abs(v) > err) return v > 0 ? 1 : -1;
  }
  throw PrecisionError("real_sign: could not separate value from zero");
}

ComplexR approx(const FieldElement& u, unsigned digits) {
  PrecisionScope ps(digits + 15);
  return eval_embedding(u, digits + 15);
}

std::complex<double> approx_double(const FieldElement& u) {
  if (!u.field() || u.is_rational()) return {u.coeffs()[0].get_d(), 0.0};
  std::complex<double> z = u.field()->root_double();
  std::complex<double> acc{};
  const auto& c = u.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

std::string approx_string(const FieldElement& u, unsigned digits) {
  PrecisionScope ps(digits + 15);
  ComplexR z = eval_embedding(u, digits + 15);
  auto fixed = [&](const Real& r) { return r.str(static_cast<std::streamsize>(digits), std::ios_base::fixed); };
  std::string s = fixed(z.re);
  if (u.field() && !u.field()->is_real()) {
    std::string im = fixed(abs(z.im));
    s += (z.im < 0 ? " - " : " + ") + im + "i";
  }
  return s;
}

FieldElement apply_automorphism(const FieldElement& u, const FieldElement& image) {
  if (!u.field()) return u;
  FieldElement acc = FieldElement::constant(u.field(), Rational(0));
  const auto& c = u.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * image + FieldElement(*it);
  return acc;
}

std::string to_string(const FieldElement& u, const std::string& symbol) {
  const auto& c = u.coeffs();
  if (!u.field() || u.field()->degree() == 1) return to_string(c[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    Rational q = c[i];
    bool neg = sgn(q) < 0;
    if (neg) q = -q;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << q.get_str();
      continue;
    }
    if (q != 1) os << q.get_str() << "*";
    os << symbol;
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace klein
