#pragma once

// Dense univariate polynomials over an exact coefficient field S.
// S must provide + - * /, construction from int, and a free is_zero(S).

#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "klein/numeric.hpp"
#include "klein/rational.hpp"

namespace klein {

namespace detail {
template <class S>
bool coeff_is_zero(const S& s) {
  return is_zero(s);
}
}  // namespace detail

template <class S>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(S c) { return UPoly(std::vector<S>{std::move(c)}); }
  static UPoly monomial(S c, std::size_t power) {
    std::vector<S> v(power + 1, S(0));
    v[power] = std::move(c);
    return UPoly(std::move(v));
  }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<S>& coeffs() const { return c_; }
  [[nodiscard]] const S& lead() const { return c_.back(); }
  [[nodiscard]] S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }

  template <class T>
  [[nodiscard]] T eval(const T& t) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + T(*it);
    return acc;
  }

  [[nodiscard]] UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * S(static_cast<int>(i));
    return UPoly(std::move(d));
  }

  [[nodiscard]] UPoly monic() const {
    if (is_zero()) return {};
    S inv = S(1) / lead();
    std::vector<S> v(c_);
    for (auto& x : v) x = x * inv;
    return UPoly(std::move(v));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<S> v(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<S> v(a.c_);
    for (auto& x : v) x = S(0) - x;
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> v(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  /// Euclidean division: returns (q, r) with a = q b + r, deg r < deg b.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    std::vector<S> r(a.c_);
    const int db = b.degree();
    if (a.degree() < db) return {UPoly{}, a};
    std::vector<S> q(static_cast<std::size_t>(a.degree() - db + 1), S(0));
    const S inv = S(1) / b.lead();
    for (int k = a.degree(); k >= db; --k) {
      const S& top = r[static_cast<std::size_t>(k)];
      if (detail::coeff_is_zero(top)) continue;
      S f = top * inv;
      for (int j = 0; j <= db; ++j) {
        auto idx = static_cast<std::size_t>(k - db + j);
        r[idx] = r[idx] - f * b.c_[static_cast<std::size_t>(j)];
      }
      q[static_cast<std::size_t>(k - db)] = f;
    }
    r.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

/// Monic gcd (zero if both inputs are zero).
template <class S>
UPoly<S> gcd(UPoly<S> a, UPoly<S> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s a + t b = g and g monic.
template <class S>
std::tuple<UPoly<S>, UPoly<S>, UPoly<S>> ext_gcd(const UPoly<S>& a, const UPoly<S>& b) {
  UPoly<S> r0 = a, r1 = b;
  UPoly<S> s0 = UPoly<S>::constant(S(1)), s1;
  UPoly<S> t0, t1 = UPoly<S>::constant(S(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly<S> s2 = s0 - q * s1;
    UPoly<S> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const S inv = S(1) / r0.lead();
  auto scale = UPoly<S>::constant(inv);
  return {r0 * scale, s0 * scale, t0 * scale};
}

/// True iff gcd(f, f') is constant.
template <class S>
bool is_squarefree(const UPoly<S>& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  return gcd(f, f.derivative()).degree() <= 0;
}

}  // namespace klein
