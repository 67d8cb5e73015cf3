#pragma once

// Abstract point/block incidence structures: type signatures, duality,
// isomorphism with witnesses, resolvability, generation closure in a
// geometric lattice, and export of determinantal moduli ideals.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klein {

class IncidenceStructure {
 public:
  IncidenceStructure() = default;
  IncidenceStructure(int n_points, int n_blocks);
  /// Blocks given as point-index lists.
  static IncidenceStructure from_blocks(int n_points, const std::vector<std::vector<int>>& blocks);

  [[nodiscard]] int n_points() const { return np_; }
  [[nodiscard]] int n_blocks() const { return nb_; }
  [[nodiscard]] bool has(int p, int b) const { return f_[static_cast<std::size_t>(p * nb_ + b)] != 0; }
  void set(int p, int b, bool v = true) { f_[static_cast<std::size_t>(p * nb_ + b)] = v ? 1 : 0; }

  [[nodiscard]] std::vector<int> block(int b) const;
  [[nodiscard]] std::vector<int> blocks_through(int p) const;
  [[nodiscard]] std::vector<std::vector<int>> blocks() const;
  [[nodiscard]] int flag_count() const;
  /// True when two blocks carry the same point set.
  [[nodiscard]] bool has_repeated_blocks() const;
  /// Row bitstrings, one per point.
  [[nodiscard]] std::vector<std::string> rows() const;

  friend bool operator==(const IncidenceStructure& a, const IncidenceStructure& b) {
    return a.np_ == b.np_ && a.nb_ == b.nb_ && a.f_ == b.f_;
  }

 private:
  int np_ = 0, nb_ = 0;
  std::vector<std::uint8_t> f_;
};

struct TypeSignature {
  int n_points = 0, n_blocks = 0;
  std::map<int, int> point_degrees;  // degree -> number of points
  std::map<int, int> block_sizes;    // size -> number of blocks
  bool regular = false;              // constant point degree and block size
  bool balanced = false;             // regular with equal counts and degrees
  std::string text;                  // "(21_4)", "(28_3,21_4)" or a histogram
};

TypeSignature census_type(const IncidenceStructure& s);

IncidenceStructure dual(const IncidenceStructure& s);

struct Isomorphism {
  std::vector<int> point_map;  // A point -> B point
  std::vector<int> block_map;  // A block -> B block
};

/// Witness isomorphism A -> B or nullopt when none exists.
std::optional<Isomorphism> isomorphic(const IncidenceStructure& a, const IncidenceStructure& b);
/// Flag-by-flag check of a witness.
bool verify_isomorphism(const IncidenceStructure& a, const IncidenceStructure& b, const Isomorphism& w);

/// Partition of the blocks into `classes` classes, each partitioning the
/// points; nullopt when impossible.
std::optional<std::vector<std::vector<int>>> resolvable(const IncidenceStructure& s, int classes);
bool verify_resolution(const IncidenceStructure& s, const std::vector<std::vector<int>>& classes);

/// Rank-3 lattice of a line arrangement: lattice points are listed by the
/// lines through them (at least two each).
class GeometricLattice {
 public:
  GeometricLattice(int n_lines, std::vector<std::vector<int>> points);

  [[nodiscard]] int n_lines() const { return n_; }
  [[nodiscard]] int n_points() const { return static_cast<int>(pts_.size()); }
  [[nodiscard]] const std::vector<int>& lines_through(int p) const { return pts_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] int meet(int l, int m) const { return meet_[static_cast<std::size_t>(l * n_ + m)]; }
  /// Lattice line through two lattice points, or -1.
  [[nodiscard]] int join(int p, int q) const { return join_[static_cast<std::size_t>(p * n_points() + q)]; }

 private:
  int n_;
  std::vector<std::vector<int>> pts_;
  std::vector<int> meet_, join_;
};

struct ClosureReport {
  bool generates = false;
  std::vector<int> lines;   // obtained lines, ascending
  std::vector<int> points;  // obtained lattice points, ascending
};

/// Iterated meets of obtained lines and joins of obtained points.
ClosureReport generation_closure(const GeometricLattice& L, const std::vector<int>& seed);

struct GenerationReport {
  int g = 0;
  std::vector<int> witness;                 // first generating subset found
  std::map<int, long long> subsets_tested;  // size -> number of subsets closed
  std::map<int, long long> subsets_failed;  // size -> number that did not generate
};

/// Least size of a generating subset, by exhaustive search over subsets in
/// lexicographic order of lines sorted by degree sequence.
GenerationReport generation_number(const GeometricLattice& L, int max_size = -1);

struct ModuliIdeal {
  std::vector<std::array<int, 3>> concurrent;     // 1-based line triples inside a concurrency set
  std::vector<std::string> generators;            // one determinant per concurrent triple
  std::vector<std::array<int, 3>> nonconcurrent;  // inequation triples
  std::vector<std::string> inequations;
  int listed_before_dedup = 0;
  [[nodiscard]] std::string text() const;
};

/// Determinantal ideal of a 3 x n matrix of variables x_i_j for the given
/// concurrency sets (1-based line labels). `pins` fixes entries (row, col) to
/// 0 or 1. Throws std::invalid_argument for inconsistent pinning.
ModuliIdeal moduli_ideal_export(int n_lines, const std::vector<std::vector<int>>& concurrency,
                                const std::map<std::pair<int, int>, int>& pins = {});

}  // namespace klein
