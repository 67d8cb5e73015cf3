#pragma once

// Numeric realization of incidence structures, local dimension of the
// realization space, and the circumconic sweep harness (experimental).

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klein/incidence.hpp"

namespace klein {

/// Points and blocks (lines) as homogeneous vectors; real realizations have
/// zero imaginary parts.
struct Realization {
  std::vector<Eigen::Vector3cd> points;
  std::vector<Eigen::Vector3cd> lines;
};

/// Max |<p, l>| over the flags of s with unit p and l. Always recomputed.
double realization_residual(const Realization& r, const IncidenceStructure& s);

/// Applies x -> T x to points and l -> T^-T l to lines.
Realization transform(const Realization& r, const Eigen::Matrix3cd& t);

struct NumericPoint {
  Eigen::Vector3cd coords;
  std::vector<int> lines;
};

/// Intersection points of the lines (clustered at relative tolerance tol),
/// with the lines through each.
std::vector<NumericPoint> numeric_intersections(const std::vector<Eigen::Vector3cd>& lines, double tol = 1e-8);

struct RealizeOptions {
  int seeds = 16;
  unsigned base_seed = 1;
  int max_iterations = 400;
  double tolerance = 1e-10;
};

struct RealizeReport {
  bool success = false;
  int seed_index = -1;  // index of the seed that produced `best`
  int seeds_tried = 0;
  double residual = 0;
  Realization best;
  std::vector<int> frame;                     // pinned point indices
  std::map<int, int> tvector;                 // census of the realized lines
  std::vector<std::vector<int>> extra_points; // multiplicity >= 3 points that are not points of s
  std::string message;
};

/// Levenberg-Marquardt on normalized flag residuals with a pinned projective
/// frame and seeded random restarts. Failure is reported, not thrown.
RealizeReport realize_structure(const IncidenceStructure& s, const RealizeOptions& opt = {});

struct TangentReport {
  std::optional<int> dimension;  // nullopt when the verdict is indeterminate
  int unknowns = 0, equations = 0;
  int rank = 0, nullity = 0;
  double gap = 0;                // singular value ratio at the chosen rank
  int gauge = 0;                 // 8 + points + lines
  std::optional<int> pinned_dimension;  // nullity after pinning a frame and scalings
  double pinned_gap = 0;
  std::string verdict;
};

/// Local dimension of the realization space modulo projectivities and
/// rescalings, from the rank of the complex Jacobian of the flag equations.
TangentReport tangent_dimension(const Realization& r, const IncidenceStructure& s);

// ---------------------------------------------------------------------------
// Circumconic sweep (EXPERIMENTAL)

using ConicCoeffs = std::array<double, 6>;  // x^2, xy, xz, y^2, yz, z^2

struct SweepSample {
  int index = 0;
  unsigned seed = 0;
  ConicCoeffs c1{}, c2{};
  bool converged = false;
  int steps_done = 0;
  double constraint_residual = 0;  // flags and the two prescribed conics
  double third_conic_residual = 0; // remaining 2 points of the third orbit against the conic through 5
  double symmetry_residual = 0;    // distance of the result from the symmetric start
};

struct SweepOptions {
  int steps = 20;
  int samples = 5;
  unsigned base_seed = 1;
  double perturbation = 1e-2;
  bool break_identification = false;  // keep two copies of the innermost orbit
};

struct SweepReport {
  std::string label = "EXPERIMENTAL";
  SweepOptions options;
  ConicCoeffs base_c1{}, base_c2{};
  std::vector<SweepSample> samples;
};

/// Circumcircles of the outer and middle quadruple-point orbits of the
/// symmetric Grünbaum-Rigby arrangement.
std::pair<ConicCoeffs, ConicCoeffs> symmetric_circumconics();

/// Runs one continuation toward prescribed conics.
SweepSample sweep_sample(const ConicCoeffs& c1, const ConicCoeffs& c2, const SweepOptions& opt);

/// Samples: index 0 is the unperturbed pair; the others perturb both conics
/// with seeded Gaussian noise of the given size.
SweepReport conjecture_sweep(const SweepOptions& opt);

/// Same, with explicit target conics as the only perturbed sample.
SweepReport conjecture_sweep(const ConicCoeffs& c1, const ConicCoeffs& c2, const SweepOptions& opt);

}  // namespace klein
