#pragma once

// Exact arithmetic in Q and in simple extensions Q(alpha) = Q[t]/(m(t)),
// each carrying a fixed complex embedding of alpha.

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "klein/numeric.hpp"
#include "klein/rational.hpp"

namespace klein {

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  /// `minpoly` holds c_0..c_{d-1} of the monic m(t) = t^d + sum c_i t^i.
  /// The hint selects the embedded root; it must lie in that root's Newton
  /// basin. Throws std::invalid_argument for non-squarefree m or a hint that
  /// does not converge to its nearest root.
  static FieldPtr create(std::vector<Rational> minpoly, std::complex<double> root_hint);
  /// Q itself, presented as Q[t]/(t).
  static FieldPtr rationals();

  [[nodiscard]] int degree() const { return static_cast<int>(minpoly_.size()); }
  [[nodiscard]] const std::vector<Rational>& minpoly() const { return minpoly_; }
  [[nodiscard]] bool is_real() const { return is_real_; }
  [[nodiscard]] std::complex<double> root_double() const { return to_std(root_at(20)); }

  /// The embedded root at (at least) `digits10` significant digits, computed
  /// in the current MPFR precision context of the caller.
  [[nodiscard]] ComplexR root_at(unsigned digits10) const;

  /// Powers t^k mod m for k < 2d-1, as coefficient vectors of length d.
  [[nodiscard]] const std::vector<std::vector<Rational>>& reduction_table() const { return red_; }

  [[nodiscard]] bool same_as(const NumberField& o) const;

 private:
  NumberField() = default;
  std::vector<Rational> minpoly_;
  bool is_real_ = true;
  std::vector<std::vector<Rational>> red_;
  mutable std::mutex mu_;
  mutable std::map<unsigned, std::pair<std::string, std::string>> roots_;  // digits -> (re, im)
};

/// An element of a NumberField, or a bare rational (field() == nullptr) that
/// is promoted into the other operand's field by mixed arithmetic.
class FieldElement {
 public:
  FieldElement() : c_{Rational(0)} {}
  FieldElement(int v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  FieldElement(long v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  FieldElement(Rational v) : c_{std::move(v)} {}  // NOLINT(google-explicit-constructor)
  FieldElement(FieldPtr f, std::vector<Rational> coeffs);

  /// The generator alpha of `f`.
  static FieldElement generator(const FieldPtr& f);
  /// `v` viewed as an element of `f`.
  static FieldElement constant(const FieldPtr& f, const Rational& v);

  [[nodiscard]] const FieldPtr& field() const { return f_; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
  [[nodiscard]] bool is_rational() const;
  /// The value as a rational; throws if it is not rational.
  [[nodiscard]] Rational rational_value() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator-(FieldElement a);

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  friend class FieldOps;
  FieldPtr f_;
  std::vector<Rational> c_;
};

bool is_zero(const FieldElement& u);
/// Multiplicative inverse via extended Euclid against the minimal polynomial.
FieldElement inverse(const FieldElement& u);
/// Total order on coefficient vectors (after promotion); used for sorting and
/// canonical deduplication, not a field ordering.
int compare(const FieldElement& a, const FieldElement& b);

/// Sign of the embedded real value. Requires a real field.
int real_sign(const FieldElement& u);
/// Embedded value with at least `digits` correct decimals.
ComplexR approx(const FieldElement& u, unsigned digits);
std::complex<double> approx_double(const FieldElement& u);
/// Decimal rendering "re" or "re+imi" rounded to `digits` decimals.
std::string approx_string(const FieldElement& u, unsigned digits);

/// Image of u under the automorphism sending alpha to `image` (an element of
/// the same field that is also a root of m).
FieldElement apply_automorphism(const FieldElement& u, const FieldElement& image);

/// "(1/2 + 3*a)"-style rendering with the given generator symbol.
std::string to_string(const FieldElement& u, const std::string& symbol = "a");

}  // namespace klein
