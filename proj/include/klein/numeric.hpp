#pragma once

// Multiprecision real/complex scalars and a univariate root finder.
//
// Real is an MPFR float whose precision is taken from the current default at
// construction time; PrecisionScope changes that default for a block.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace klein {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const std::complex<double>& v) { return v == 0.0; }
inline bool is_zero(const Real& v) { return v == 0; }

/// Raised when a numeric certificate cannot be established at the current
/// working precision. Callers are expected to retry with more digits.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets the default MPFR precision (decimal digits) for the lifetime of the
/// object and restores the previous value afterwards.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

inline double to_double(const Real& r) { return r.convert_to<double>(); }

template <class R>
struct Complex {
  R re{0};
  R im{0};

  Complex() = default;
  Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    R d = o.re * o.re + o.im * o.im;
    R r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
R norm(const Complex<R>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Complex<R>& z) {
  using std::sqrt;
  using boost::multiprecision::sqrt;
  return sqrt(norm(z));
}

template <class R>
Complex<R> conj(const Complex<R>& z) {
  return {z.re, -z.im};
}

template <class R>
bool is_zero(const Complex<R>& z) {
  return z.re == 0 && z.im == 0;
}

using ComplexR = Complex<Real>;

inline std::complex<double> to_std(const ComplexR& z) { return {to_double(z.re), to_double(z.im)}; }

/// Formats a real with the requested number of significant decimal digits.
inline std::string format_real(const Real& r, int digits) {
  return r.str(digits, std::ios_base::fmtflags(0));
}

/// Evaluates a polynomial given by coefficients c[0] + c[1] t + ... at z.
template <class R>
Complex<R> horner(std::span<const Complex<R>> c, const Complex<R>& z) {
  Complex<R> acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// All complex roots of c[0] + ... + c[n] t^n (c[n] != 0) by the Aberth-Ehrlich
/// iteration, followed by Newton polishing. Roots are returned in order of
/// increasing real part, then imaginary part. Throws PrecisionError when the
/// iteration does not settle below `tol` (relative to max(1, |root|)), unless
/// `strict` is false, in which case the current approximations are returned
/// (clusters of approximations then mark multiple roots).
inline std::vector<ComplexR> polynomial_roots(std::span<const ComplexR> coeffs, const Real& tol,
                                              bool strict = true, int max_iter = 2000) {
  using boost::multiprecision::cos;
  using boost::multiprecision::pow;
  using boost::multiprecision::sin;
  std::size_t n = coeffs.size();
  while (n > 0 && is_zero(coeffs[n - 1])) --n;
  if (n == 0) throw std::invalid_argument("polynomial_roots: zero polynomial");
  const std::size_t deg = n - 1;
  if (deg == 0) return {};
  std::vector<ComplexR> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));
  const ComplexR lead = c[deg];
  for (auto& v : c) v /= lead;
  std::vector<ComplexR> dc(deg);
  for (std::size_t i = 1; i <= deg; ++i) dc[i - 1] = c[i] * ComplexR(Real(static_cast<long>(i)));

  // Fujiwara bound for the initial circle.
  Real bound = 0;
  for (std::size_t i = 0; i < deg; ++i) {
    Real a = abs(c[i]);
    if (a == 0) continue;
    Real r = pow(a, Real(1) / Real(static_cast<long>(deg - i)));
    if (i == 0) r = pow(a / 2, Real(1) / Real(static_cast<long>(deg)));
    bound = std::max(bound, r);
  }
  bound *= 2;
  if (bound == 0) bound = 1;

  const Real pi = boost::math::constants::pi<Real>();
  std::vector<ComplexR> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    Real ang = 2 * pi * Real(static_cast<long>(k)) / Real(static_cast<long>(deg)) + Real(0.4);
    Real rad = bound * Real(0.5 + 0.5 * static_cast<double>(k + 1) / static_cast<double>(deg));
    z[k] = ComplexR(rad * cos(ang), rad * sin(ang));
  }

  std::span<const ComplexR> cs(c), dcs(dc);
  bool done = false;
  for (int it = 0; it < max_iter && !done; ++it) {
    done = true;
    for (std::size_t k = 0; k < deg; ++k) {
      ComplexR p = horner(cs, z[k]);
      if (is_zero(p)) continue;
      ComplexR dp = horner(dcs, z[k]);
      ComplexR w = p / dp;
      ComplexR s{};
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) s += ComplexR(1) / (z[k] - z[j]);
      ComplexR corr = w / (ComplexR(1) - w * s);
      z[k] -= corr;
      Real scale = std::max(Real(1), abs(z[k]));
      if (abs(corr) > tol * scale) done = false;
    }
  }
  if (!done && strict) throw PrecisionError("polynomial_roots: Aberth iteration did not converge");
  for (auto& r : z) {
    for (int it = 0; done && it < 3; ++it) {
      ComplexR dp = horner(dcs, r);
      if (is_zero(dp)) break;
      r -= horner(cs, r) / dp;
    }
  }
  std::sort(z.begin(), z.end(), [](const ComplexR& a, const ComplexR& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return z;
}

}  // namespace klein
