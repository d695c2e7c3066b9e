#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerlab/configs.hpp"
#include "cornerlab/domain.hpp"
#include "cornerlab/shapes.hpp"

namespace cornerlab {

// Search tree node over a domain of at most 64 points: decided-in and decided-out masks.
struct SearchNode {
  std::uint64_t in = 0;
  std::uint64_t out = 0;

  friend bool operator==(const SearchNode&, const SearchNode&) = default;
};

// Resumable state of an exact search. JSON layout (version 1):
//   {"format": "cornerlab-checkpoint", "version": 1,
//    "problem": "min_saturated" | "max_config_free",
//    "domain": {"kind": "prime_plane" | "integer_grid", "size": int},
//    "kind": "corner" | "square" | "pattern", "orientation": "tilted" | "axis",
//    "pattern": [[a, b, c, d], ...],           // only for kind "pattern"
//    "seed": int, "use_symmetry": bool, "nodes_explored": int,
//    "best_set": hex bitset | null,
//    "frontier": [{"in": hex, "out": hex}, ...]}  // next node to explore first
struct Checkpoint {
  static constexpr int kVersion = 1;

  std::string problem;
  DomainKind domain_kind = DomainKind::PrimePlane;
  std::int64_t domain_size = 0;
  ConfigKind kind = ConfigKind::Corner;
  Orientation orientation = Orientation::Tilted;
  std::vector<Matrix2> pattern;  // non-empty for matrix patterns
  std::uint64_t seed = 0;
  bool use_symmetry = true;
  std::uint64_t nodes_explored = 0;
  std::optional<std::uint64_t> best;
  std::vector<SearchNode> frontier;

  Domain domain() const;
};

nlohmann::json to_json(const Checkpoint& checkpoint);
// Throws CorruptCheckpoint with the offending field on any schema violation.
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

// Writes through a temporary file and renames, so a failed write never leaves a partial file.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string mask_to_hex(const Domain& domain, std::uint64_t mask);
std::uint64_t mask_from_hex(const Domain& domain, const std::string& hex);

}  // namespace cornerlab
