#pragma once

// Invariant forms of the Klein quartic x^3y + y^3z + z^3x and the numeric
// pipeline that recovers the 21 lines and 21 polar conics from them.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "klein/numgeom.hpp"
#include "klein/polyalg.hpp"

namespace klein {

using QForm = TernaryForm<Rational>;
using CForm = TernaryForm<ComplexR>;

struct KleinInvariants {
  QForm phi4, phi6, phi14, phi21, steinerian, phi42;
  PolyMap<Rational> gradmap;
};

/// Builds all forms; `with_phi42` controls the degree-63 composition and the
/// exact division producing phi42.
KleinInvariants build_invariants(bool with_phi42 = true);

class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact solution c of target = sum c_i basis_i; throws NoSolution.
std::vector<Rational> solve_in_span(const QForm& target, const std::vector<QForm>& basis);

struct SpanMembership {
  std::vector<std::array<int, 3>> exponents;  // (i, j, k) for phi4^i phi6^j phi14^k
  std::vector<Rational> coeffs;
};

/// Expresses phi21^2 in the monomials phi4^i phi6^j phi14^k of degree 42.
SpanMembership verify_phi21_square_membership(const KleinInvariants& inv);

/// Monomials (i, j, k) with 4i + 6j + 14k = degree.
std::vector<std::array<int, 3>> invariant_monomials(int degree);

CForm to_complex(const QForm& f);

/// |f(p)| / sum |c_m| at the unit-normalized point p.
Real relative_value(const CForm& f, const CVec3& p);

struct NumericLines {
  std::vector<CVec3> lines;  // unit-normalized coefficient vectors
  Real max_residual;         // max relative |phi21| at sample points
};

/// Recovers the linear factors of a completely reducible form by restricting
/// to two generic lines and matching the joins of the root points. Throws
/// PrecisionError on ambiguous matching.
NumericLines extract_lines_numeric(const QForm& f, unsigned digits);

struct NumericCensus {
  std::vector<CVec3> points;
  std::vector<std::vector<int>> incident;  // curve indices per point (sorted)
  std::map<int, int> tvector;
  std::vector<std::map<int, int>> per_curve;  // multiplicity -> count
  int tangencies = 0;
};

/// Census of pairwise meets of numeric lines at clustering tolerance
/// 10^(-digits/2).
NumericCensus numeric_line_census(const std::vector<CVec3>& lines, unsigned digits);

/// Quotient and normalized remainder of f divided by a linear form.
std::pair<CForm, Real> divide_linear(const CForm& f, const CVec3& l);

struct PolarSplit {
  int line_index = -1;
  CMat3 conic{};
  Real division_residual;
  Real det_ratio;  // |det C| / |C|^3
  int line_conic_meets = 0;
};

/// Splits the polar cubic of phi4 at p into one of `lines` times a conic.
/// Throws std::runtime_error if no line divides it.
PolarSplit split_reducible_polar(const CVec3& p, const KleinInvariants& inv, const std::vector<CVec3>& lines,
                                 unsigned digits);

/// max |4 phi4^3 + phi6^2| at unit-normalized points.
Real steinerian_vanishing(const KleinInvariants& inv, const std::vector<CVec3>& points);

/// The ratio alpha/beta solving alpha phi4^3(p) + beta phi6^2(p) = 0 at each
/// point, returned per point.
std::vector<ComplexR> steinerian_ratios(const KleinInvariants& inv, const std::vector<CVec3>& points);

CMat3 conic_from_form(const CForm& q);
CForm form_from_conic(const CMat3& c);

/// Census of a numeric conic arrangement: each pair is eliminated to a
/// quartic after a fixed generic projective change; repeated roots count as
/// tangencies.
NumericCensus conic_census_numeric(const std::vector<CMat3>& conics, unsigned digits);

/// Relative spread of prod C_i(p) / phi42(p) over pseudo-random points.
Real conic_product_spread(const std::vector<CMat3>& conics, const QForm& phi42, unsigned digits, int samples = 5);

struct KleinPipelineReport {
  unsigned digits_used = 0;
  NumericLines lines;
  NumericCensus line_census;
  std::vector<CVec3> quad_points;
  Real steinerian_residual;
  std::vector<ComplexR> steinerian_ratio;
  std::vector<PolarSplit> splits;
  NumericCensus conic_census;
  Real product_spread;
};

/// Full numeric pipeline at `digits`, doubling the precision on
/// PrecisionError up to `max_digits`.
KleinPipelineReport run_klein_pipeline(const KleinInvariants& inv, unsigned digits, unsigned max_digits = 400);

}  // namespace klein
