#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cornerlab/domain.hpp"
#include "cornerlab/point_set.hpp"

namespace cornerlab {

using Rational = boost::multiprecision::cpp_rational;

// [[a, b], [c, d]] acting on column vectors (x, y).
struct Matrix2 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  static constexpr Matrix2 zero() { return {0, 0, 0, 0}; }
  static constexpr Matrix2 identity() { return {1, 0, 0, 1}; }
  static constexpr Matrix2 rotation() { return {0, -1, 1, 0}; }
  // I + rotation: y ↦ (y1 − y2, y1 + y2), the far vertex of a square.
  static constexpr Matrix2 diagonal() { return {1, -1, 1, 1}; }

  constexpr std::int64_t det() const { return a * d - b * c; }
  constexpr Point apply(Point v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  constexpr Matrix2 operator-(const Matrix2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

// k ≥ 1 pairwise distinct invertible matrices M₁…M_k describing the configuration
// x, x + M₁y, …, x + M_k y. Validity is checked modulo p.
class PatternSpec {
 public:
  PatternSpec(std::vector<Matrix2> matrices, std::int64_t p);

  static PatternSpec corner(std::int64_t p) { return {{Matrix2::identity(), Matrix2::rotation()}, p}; }
  static PatternSpec square(std::int64_t p) {
    return {{Matrix2::identity(), Matrix2::rotation(), Matrix2::diagonal()}, p};
  }

  const std::vector<Matrix2>& matrices() const { return matrices_; }
  std::size_t k() const { return matrices_.size(); }
  std::int64_t p() const { return p_; }

 private:
  std::vector<Matrix2> matrices_;
  std::int64_t p_;
};

// --- Predicates and constructions ------------------------------------------------

// Some vertex is a right angle with equal perpendicular legs (c − a = ±i(b − a)).
// Grid points are compared as exact integer vectors and may lie outside [0, n)².
bool is_isosceles_right(Point a, Point b, Point c, const Domain& domain);
// Axis-parallel corner {(x, y), (x + d, y), (x, y + d)}, d ≠ 0, under some labeling.
bool is_axis_corner(Point a, Point b, Point c, const Domain& domain);
// Four points x, x + v, x + iv, x + v + iv (v ≠ 0) under some labeling.
bool is_square(const std::array<Point, 4>& pts, const Domain& domain);

// α = (1+i)/2·β + (1−i)/2·γ, the right-angle vertex with γ = α + i(α − β). Prime plane only.
Point apex(Point beta, Point gamma, const Domain& domain);
// Fourth vertex β + γ − α of the square on a corner with its right angle at α.
// Equals β + i(α − β) when γ = α + i(α − β). Throws NotACorner.
Point fourth_vertex(Point alpha, Point beta, Point gamma, const Domain& domain);
// All in-domain R ∉ {P, Q} forming an isosceles right triangle with P and Q, sorted.
std::vector<Point> corner_completions(Point p, Point q, const Domain& domain);

// --- Exact counting ----------------------------------------------------------------
//
// All counts are ordered (x, y) pair counts. A tilted corner with a single right
// angle is counted once (y runs counter-clockwise from the right angle), a tilted
// square four times (once per vertex), so unordered squares = count_squares / 4.

std::uint64_t count_corners(const PointSet& set, bool include_degenerate = false, int threads = 1);
std::uint64_t count_squares(const PointSet& set, bool include_degenerate = false, int threads = 1);
std::uint64_t count_matrix_pattern(const PointSet& set, const PatternSpec& spec,
                                   bool include_degenerate = false, int threads = 1);

struct UniformCoverReport {
  bool surjective = false;     // image is the whole configuration space (≅ (x, y) ∈ F_p⁴)
  std::uint64_t image_size = 0;
  std::uint64_t fiber_size = 0;
  bool uniform = false;        // every fiber over the image has fiber_size elements
  bool enumerated = false;     // exhaustive enumeration (true) or rank computation (false)
};

enum class CoverMethod { Auto, Enumerate, Rank };

// Change of variables (z₁…z_k) ↦ (x, x + M₁y, …) with x = Σ z_j, y = −Σ M_j⁻¹ z_j.
UniformCoverReport uniform_cover_check(const PatternSpec& spec, CoverMethod method = CoverMethod::Auto);

// --- Trilinear sums ----------------------------------------------------------------

// Rational-valued function on a prime plane stored as integer numerators over one denominator.
struct LatticeFunction {
  Domain domain;
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  static LatticeFunction indicator(const PointSet& set);
  static LatticeFunction constant(const Domain& domain, std::int64_t numerator, std::int64_t denominator = 1);
  // set(x) − |set|/p², over denominator p².
  static LatticeFunction balanced(const PointSet& set);

  Rational at(std::size_t idx) const { return Rational(numerators[idx], denominator); }
  Rational sum() const;
};

// Σ_{x,y} f(x) g(x + y) h(x + y⊥), y = 0 skipped unless include_degenerate.
Rational sigma_trilinear(const LatticeFunction& f, const LatticeFunction& g, const LatticeFunction& h,
                         bool include_degenerate = false, int threads = 1);

// σ(R,R,R) expanded through R = ρ + f_R with ρ = |R|/p² constant.
struct SigmaDecomposition {
  Rational main_term;                     // σ(ρ, ρ, ρ)
  std::array<Rational, 3> single_f_terms; // (f,ρ,ρ), (ρ,f,ρ), (ρ,ρ,f)
  std::array<Rational, 3> two_f_terms;    // (ρ,f,f), (f,ρ,f), (f,f,ρ)
  Rational three_f_term;                  // (f, f, f)
  Rational total;
  std::uint64_t sigma = 0;                // count_corners under the same convention
  bool include_degenerate = false;
  bool single_f_terms_zero = false;
  bool total_matches_sigma = false;
  bool two_f_terms_equal = false;
};

SigmaDecomposition decompose_sigma(const PointSet& set, bool include_degenerate = false, int threads = 1);

std::string to_string(const Rational& r);

}  // namespace cornerlab
