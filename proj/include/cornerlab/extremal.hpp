#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerlab/checkpoint.hpp"
#include "cornerlab/configs.hpp"
#include "cornerlab/point_set.hpp"
#include "cornerlab/shapes.hpp"

namespace cornerlab {

// Which configurations the set must avoid: tilted/axis corners or squares, or the
// matrix pattern x, x + M₁y, …, x + M_k y when `pattern` is non-empty (prime plane only).
struct ExtremalTarget {
  ConfigKind kind = ConfigKind::Corner;
  Orientation orientation = Orientation::Tilted;
  std::vector<Matrix2> pattern;

  static ExtremalTarget corner() { return {}; }
  static ExtremalTarget square() { return {ConfigKind::Square, Orientation::Tilted, {}}; }
  static ExtremalTarget matrix_pattern(const PatternSpec& spec) {
    return {ConfigKind::Corner, Orientation::Tilted, spec.matrices()};
  }

  ConfigShape shape(const Domain& domain) const;
  std::string name() const;
};

enum class ExtremalMode { Exact, Heuristic };

struct ExtremalOptions {
  ExtremalMode mode = ExtremalMode::Exact;
  // Exact: node limit (0 = unlimited). Heuristic: total local-search iterations (0 = 2000).
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  bool use_symmetry = true;
};

// Tabu tenure of the local search, in iterations.
inline constexpr int kTabuTenure = 7;

struct ExtremalRecord {
  Domain domain;
  std::string kind;
  std::size_t max_size_found = 0;
  bool proved = false;
  PointSet example_set;
  Rational density;
  std::uint64_t nodes_explored = 0;
  std::optional<Checkpoint> checkpoint;
};

// Largest configuration-free set. Exact is a branch-and-bound over at most 64 points
// with a disjoint-conflict packing bound; proved only when the tree is exhausted.
ExtremalRecord max_config_free(const Domain& domain, const ExtremalTarget& target, const ExtremalOptions& options,
                               const Checkpoint* resume = nullptr);

struct DensityRow {
  std::int64_t size = 0;
  std::string kind;
  std::size_t max_found = 0;
  bool proved = false;
  std::string witness;  // hex bitset
  Rational density;
};

// One max_config_free run per size; grids when `grid` is set, prime planes otherwise.
// Exact mode falls back to Heuristic on domains above 64 points.
std::vector<DensityRow> density_table(const ExtremalTarget& target, bool grid, const std::vector<std::int64_t>& sizes,
                                      const ExtremalOptions& options);

std::string density_table_csv(const std::vector<DensityRow>& rows);
nlohmann::json density_table_json(const std::vector<DensityRow>& rows);

}  // namespace cornerlab
