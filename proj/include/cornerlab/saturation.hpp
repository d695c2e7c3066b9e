#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "cornerlab/checkpoint.hpp"
#include "cornerlab/domain.hpp"
#include "cornerlab/point_set.hpp"
#include "cornerlab/shapes.hpp"

namespace cornerlab {

// SquareCover drops the square-free requirement and only asks that every outside
// point be the fourth vertex of a square whose other three vertices lie in the set.
enum class SaturationKind { Corner, Square, SquareCover };

std::string to_string(SaturationKind kind);

struct SaturationReport {
  // Whether the kind's freeness requirement holds (vacuously true for SquareCover).
  bool is_config_free = false;
  bool is_saturated = false;
  std::optional<Point> witness_uncovered;
  std::optional<std::vector<Point>> witness_config;
};

bool is_corner_free(const PointSet& set, Orientation orientation = Orientation::Tilted);
bool is_square_free(const PointSet& set, Orientation orientation = Orientation::Tilted);

SaturationReport check_saturated(const PointSet& set, SaturationKind kind,
                                 Orientation orientation = Orientation::Tilted);

// {(0, i) : i ∈ F_p}; every outside (a, b) forms a corner with (0, b), (0, a + b).
PointSet vertical_line_set(std::int64_t p);

// Smallest m with p² − m ≤ 6·C(m, 2): each pair of a saturated set completes at most six points.
std::int64_t corner_sat_lower_bound(std::int64_t p);
// p^{12/11} − p^{3/5}; p ≡ 3 (mod 4) only, else WrongResidue.
double square_sat_lower_bound(std::int64_t p);

// Exponent log 6 / log 3 of the difference-set construction quoted beside the Katz–Tao bound.
inline constexpr double kRuzsaExponent = 1.6309297535714573;

enum class SearchMode { Exact, BranchBound, Greedy };
enum class SearchStatus { ProvedOptimal, BestFound };

std::string to_string(SearchMode mode);
std::string to_string(SearchStatus status);

struct SearchOptions {
  SearchMode mode = SearchMode::BranchBound;
  ConfigKind kind = ConfigKind::Corner;
  Orientation orientation = Orientation::Tilted;
  // BranchBound: node limit (0 = unlimited). Greedy: number of restarts (0 = 16).
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  // Fix the origin and one scaling-orbit representative (prime plane only).
  bool use_symmetry = true;
};

struct SearchResult {
  PointSet best_set;
  std::size_t best_size = 0;
  SearchStatus status = SearchStatus::BestFound;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{0};
  // Set when a BranchBound run stopped on its budget; resume from it to continue.
  std::optional<Checkpoint> checkpoint;
};

// Exact: size-ordered sweep of all subsets (domains of at most 25 points).
// BranchBound: include/exclude search on domains of at most 64 points, pruned by the
//   per-unit covering count; ProvedOptimal only when the tree is exhausted.
// Greedy: best of `budget` random maximal configuration-free sets (maximal ⇒ saturated).
SearchResult min_saturated_search(const Domain& domain, const SearchOptions& options,
                                  const Checkpoint* resume = nullptr);

struct KatzTaoReport {
  std::size_t set_size = 0;
  std::size_t G_size = 0;        // ordered pairs (β, γ) of S whose corner apex lies in S
  std::size_t sumset_size = 0;   // |{a + b}| with a = (1+i)β, b = (1−i)γ
  std::size_t diffset_size = 0;  // |{a − b}| = number of distinct fourth vertices
  std::size_t covered = 0;       // fourth vertices outside S
  double kt_rhs = 0.0;           // |S|^{11/6}
  bool sums_within_2S = false;
  // The Katz–Tao bound is a theorem for torsion-free groups; F_p[i] is not one, so
  // these numbers are an empirical analogue only.
  bool torsion_free = false;
};

KatzTaoReport katz_tao_probe(const PointSet& set);

}  // namespace cornerlab
