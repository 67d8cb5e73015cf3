#pragma once

// Exact models: the Klein arrangement over Q(a) with a^2 + a + 2 = 0, the
// real Grünbaum-Rigby arrangement over F = Q(2cos(pi/14)), and the point-line
// and point-conic configurations built from them.

#include <optional>
#include <string>
#include <vector>

#include "klein/arrangement.hpp"
#include "klein/incidence.hpp"
#include "klein/projplane.hpp"

namespace klein {

using FPoint = ProjectivePoint<FieldElement>;
using FLine = ProjectiveLine<FieldElement>;
using FConic = Conic<FieldElement>;

/// Q(a), a the root of t^2 + t + 2 with positive imaginary part.
FieldPtr field_qa();
/// F = Q(alpha), alpha = 2cos(pi/14), minimal polynomial t^6 - 7t^4 + 14t^2 - 7.
FieldPtr field_gr();

/// Parses "c0 + c1*sym" style expressions linear in the generator, e.g.
/// "-a-1", "1-a", "a-3", "2a".
FieldElement parse_linear(const FieldPtr& f, const std::string& text, char symbol = 'a');

struct KleinModel {
  FieldPtr field;
  std::vector<FLine> lines;    // l1..l21 at indices 0..20
  std::vector<FPoint> points;  // tabulated points 1..49; 1..21 quadruple, 22..49 triple
  std::vector<int> kprime;     // labels of the twelve lines of K'
  std::vector<int> real9;      // labels of the lines with rational coefficients
  std::vector<FLine> printed_generators;  // H1..H5 as printed
  std::vector<int> generator_seed;        // labels of lines of this model generating the lattice
  std::vector<FPoint> kprime_points;      // twelve triple points of K', the last one recovered
  std::string kprime_point12_printed;     // the defective printed entry
  int flags_checked = 0;

  [[nodiscard]] std::vector<FLine> lines_by_label(const std::vector<int>& labels) const;
};

/// Loads the tabulated data and re-verifies all point-line flags exactly.
/// Throws std::runtime_error if the embedded data is inconsistent.
const KleinModel& klein_model();

/// Klein lines through the tabulated quadruple points, as an incidence
/// structure (21 points x 21 lines).
IncidenceStructure klein_quadruple_structure(const KleinModel& m);

/// The twelve triple points of K' against its twelve lines (in label order).
IncidenceStructure kprime_structure(const KleinModel& m);
/// Line-label triples that become concurrent in the drawn real realization.
const std::vector<std::array<int, 3>>& kprime_extra_triples();
/// K' with the extra triples added as points: a (16_3,12_4) structure.
IncidenceStructure kprime_extended_structure(const KleinModel& m);

struct RoulleauReport {
  std::vector<ConicHit<FieldElement>> conics;  // smooth conics through at least 8 triple points
  IncidenceStructure incidence;                // 28 triple points x conics
  std::string type;
  TransversalityReport transversality;
  int pair_intersections = 0;  // 4 * C(n, 2)
  int sextuple_points = 0;     // triple points on exactly 6 conics
  int derived_double_points = 0;
};

/// Conics through eight of the 28 triple points of the Klein arrangement,
/// searched exactly over Q(a).
RoulleauReport roulleau_conics(const KleinModel& m);

/// Incidence list I_GR: each entry lists the four line labels through a
/// quadruple point of the Grünbaum-Rigby arrangement.
const std::vector<std::vector<int>>& gr_incidence_list();
IncidenceStructure incidence_from_quadruples(const std::vector<std::vector<int>>& quads, int n_lines);

struct GRModel {
  FieldPtr field;
  FieldElement p, q;
  std::vector<FLine> lines;  // A0..A6, B0..B6, C0..C6
  std::vector<std::string> names;
  Census<FieldElement> census;
  std::vector<int> quadruple;  // census indices of quadruple points
  std::array<std::vector<int>, 3> point_orbits;  // census indices, by decreasing radius
  std::array<FieldElement, 3> point_orbit_r2;

  [[nodiscard]] static int orbit_of_line(int i) { return i / 7; }
  [[nodiscard]] std::vector<FPoint> quadruple_points() const;
};

/// cos(k pi/7) and sin(k pi/7) in F.
FieldElement gr_cos(const FieldPtr& f, int k);
FieldElement gr_sin(const FieldPtr& f, int k);

/// Builds the arrangement and certifies the trigonometric values exactly.
const GRModel& gr_model();

/// Squared distance from the origin (x^2 + y^2)/z^2 of an affine point.
FieldElement squared_radius(const FPoint& p);

/// Quadruple points against GR lines.
IncidenceStructure gr_quadruple_structure(const GRModel& m);

struct DoubleOrbit {
  FieldElement r2;
  std::vector<FPoint> points;
};

struct DoubleOrbits {
  std::array<DoubleOrbit, 3> orbits;  // strictly increasing r2
  int at_infinity = 0;                // cross-orbit double points on the line at infinity
};

/// Cross-orbit double points grouped by exact squared radius.
DoubleOrbits gr_double_orbits(const GRModel& m);

struct CollinearHit {
  FLine line;
  std::vector<int> subset;
};

/// Lines through at least k of the points (maximal subsets), found by a
/// double-precision screen of pair joins and certified exactly.
std::vector<CollinearHit> collinear_ktuples(const std::vector<FPoint>& points, int k);

struct DerivedConfig {
  std::string name;
  std::string construction;
  std::vector<FPoint> points;
  std::vector<FLine> lines;
  std::vector<FConic> conics;
  IncidenceStructure incidence;  // points x (lines, then conics), exact

  [[nodiscard]] TypeSignature type() const { return census_type(incidence); }
};

/// Computes every flag exactly.
DerivedConfig make_config(std::string name, std::string construction, std::vector<FPoint> points,
                          std::vector<FLine> lines, std::vector<FConic> conics = {});

/// Pair labels 12, 23, 13 name unions of two double orbits.
DerivedConfig gr_pair_config(const GRModel& m, int pair);

struct IncidenceSum {
  DerivedConfig config;       // union with the reciprocal
  DerivedConfig reciprocal;   // reciprocal alone
  FieldElement k2;            // squared radius of the circle of reciprocity
  std::vector<FieldElement> valid_k2;  // every candidate that passes verification
  int candidates = 0;
  bool self_reciprocal = false;
};

/// Solves for the circle of reciprocity from single point-on-polar
/// conditions, verifies every incidence exactly and keeps the smallest
/// valid radius. Throws std::runtime_error if no candidate verifies.
IncidenceSum incidence_sum_49(const DerivedConfig& cfg);

struct HalfOrbitResult {
  DerivedConfig config;
  int choice = -1;                   // bit i selects the half of orbit i
  std::vector<int> successful_choices;
};

/// Tries the eight halvings of the double orbits into rotation orbits.
HalfOrbitResult half_orbit_42_config(const GRModel& m);

struct SubConfig {
  std::string name;                  // "S12", "S13", "S23"
  int line_orbit = 0;                // 0: A, 1: B, 2: C
  std::array<int, 2> point_orbits{}; // 1-based, by decreasing radius
  int star = 0;                      // k of the star heptagon {7/k}
  IncidenceStructure incidence;      // 14 points x 7 lines
};

std::array<SubConfig, 3> subconfigs_14_2_7_4(const GRModel& m);

/// Image of each point under a projective map, as an index permutation.
/// Throws if the set is not preserved.
std::vector<int> point_permutation(const std::vector<FPoint>& pts, const Mat3<FieldElement>& t);
/// Rotation by 2pi/7 and the reflection of the D7 symmetry group.
Mat3<FieldElement> gr_rotation(const FieldPtr& f);
Mat3<FieldElement> gr_reflection(const FieldPtr& f);

struct ConicOrbit {
  std::vector<int> conics;  // indices into the hit list
  ConicKind kind = ConicKind::Degenerate;
  bool two_fold_cover = false;  // every point of the union lies on exactly two conics
  int points_covered = 0;
};

struct PointConicConfig {
  std::string name;
  std::vector<int> orbits;  // indices into the orbit list
  IncidenceStructure incidence;
  std::string type;
  std::optional<std::vector<std::vector<int>>> resolution;
};

struct ConicFamily {
  std::string source;
  std::vector<FPoint> points;
  std::vector<ConicHit<FieldElement>> hits;
  std::vector<ConicOrbit> orbits;
};

struct PointConicCatalog {
  ConicFamily on21;                         // conics through 7 quadruple points
  std::vector<PointConicConfig> configs21;  // (21_7) configurations
  ConicFamily on28;                         // conics through 8 points of GR_d12
  PointConicConfig config28;                // (28_8)
  std::vector<PointConicConfig> deletions28;  // (28_6, 21_8)
  ConicFamily on49;                         // conics through 8 points of the (49_4)
  std::string source49;
  std::vector<std::string> attempts49;      // every incidence sum tried
  std::vector<std::vector<int>> solutions49;  // orbit subsets giving (49_8)
  std::optional<PointConicConfig> config49;
  std::optional<PointConicConfig> config28_14;
};

/// Orbits of a conic family under D7 (acting on point indices).
std::vector<ConicOrbit> conic_orbits(const ConicFamily& fam, const std::vector<std::vector<int>>& perms);

PointConicConfig point_conic_config(const std::string& name, const ConicFamily& fam, const std::vector<int>& orbits);

/// Orbit subsets whose conics put every point on exactly `degree` conics.
std::vector<std::vector<int>> balanced_orbit_unions(const ConicFamily& fam, int n_conics, int degree);

/// Conics through exactly `exactly` of the points (a D7-invariant set),
/// with their D7 orbits.
ConicFamily gr_conic_family(const GRModel& m, std::string source, std::vector<FPoint> points, int exactly);

PointConicCatalog point_conic_configs(const GRModel& m, bool with49 = true);

}  // namespace klein
