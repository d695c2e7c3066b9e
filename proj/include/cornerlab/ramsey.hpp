#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerlab/configs.hpp"
#include "cornerlab/domain.hpp"
#include "cornerlab/point_set.hpp"

namespace cornerlab {

// Total map from the domain to colors [0, r), stored row-major by point index.
struct Coloring {
  Domain domain;
  int r = 1;
  std::vector<int> colors;

  static Coloring uniform(const Domain& domain, int r, int color = 0);
  // Each point colored independently and uniformly from [0, r).
  static Coloring random(const Domain& domain, int r, std::uint64_t seed);
  // Throws InvalidArgument when a color is out of range or the size is wrong.
  static Coloring from_colors(const Domain& domain, int r, std::vector<int> colors);

  int at(Point q) const { return colors[domain.index(q)]; }
  PointSet color_class(int color) const;
  // color ↦ r − 1 − color.
  Coloring swapped() const;
};

// Parses {"p": prime | "n": size, "r": int, "colors": [int, ...]}; FormatError names the field.
Coloring coloring_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Coloring& coloring);
// Parse errors carry the line and column; unreadable files raise Io.
Coloring load_coloring(const std::filesystem::path& path);

// Default C in the reported bound p³/4 − C·p^{5/2}. The true constant is not known,
// so the bound is reported and never asserted.
inline constexpr double kDefaultMonoConstant = 5.0;

struct MonoCornerCounts {
  std::uint64_t sigma_R = 0;  // color 0
  std::uint64_t sigma_B = 0;  // color 1
  double bound = 0.0;
  double C = kDefaultMonoConstant;
  double margin = 0.0;        // sigma_R + sigma_B − bound
};

// Prime plane, r = 2 (WrongColorCount otherwise).
MonoCornerCounts mono_corner_counts(const Coloring& coloring, double C = kDefaultMonoConstant, int threads = 1);

struct MonoDecompositionAudit {
  SigmaDecomposition red;
  SigmaDecomposition blue;
  Rational main_terms;    // |R|³/p² + |B|³/p²
  Rational corrections;   // everything else in both expansions
  Rational residual;      // main_terms + corrections − (σ_R + σ_B); zero when the identity holds
  bool balanced_sums_zero = false;
  bool identity_holds = false;
};

MonoDecompositionAudit mono_decomposition_audit(const Coloring& coloring, bool include_degenerate = false,
                                                int threads = 1);

struct MonoBatchReport {
  std::size_t colorings = 0;
  std::uint64_t min_total = 0;
  std::uint64_t max_total = 0;
  double bound = 0.0;
  double margin = 0.0;  // min_total − bound
  std::size_t below_bound = 0;
};

// mono_corner_counts over `count` random 2-colorings derived from `seed`.
MonoBatchReport mono_corner_batch(std::int64_t p, std::size_t count, std::uint64_t seed,
                                  double C = kDefaultMonoConstant, int threads = 1);

struct MonoAxisCorner {
  std::array<Point, 3> points;  // (x, y), (x + d, y), (x, y + d)
  std::int64_t d = 0;
  int color = 0;
};

// Scan: base point in index order, then d = 1, −1, 2, −2, … (residues mod p on the plane).
std::optional<MonoAxisCorner> find_mono_axis_corner(const Coloring& coloring);

struct CollinearTriple {
  Point x, y, z;
  Point direction;  // (1, m) or (0, 1)
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  int color = 0;
};

// Monochromatic x, y = x + t₁v, z = y + t₂v with norm(y − x) = a, norm(z − y) = b and
// z ≠ x. Needs the prime plane and r = 2; a/b must be a quadratic residue unless `force`.
std::optional<CollinearTriple> find_mono_collinear_triple(const Coloring& coloring, std::int64_t a, std::int64_t b,
                                                          bool force = false);

// Number of 2-colorings of F_p² with no such triple, by exhaustion (p = 3 only).
std::uint64_t count_collinear_avoiding(std::int64_t p, std::int64_t a, std::int64_t b, bool force = false);

// Euler's criterion; ZeroInput when x ≡ 0.
bool is_quadratic_residue(std::int64_t x, std::int64_t p);

}  // namespace cornerlab
