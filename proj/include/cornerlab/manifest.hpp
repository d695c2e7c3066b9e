#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cornerlab {

inline constexpr const char* kArtifactVersion = "1.0.0";

std::string sha256_hex(std::string_view data);

// Every CLI invocation emits exactly one manifest. The digest covers the canonical
// (sorted-key) dump of the result, which must not contain timings.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string timestamp;  // UTC, ISO 8601
  std::string artifact_version = kArtifactVersion;
  std::string results_digest;
};

RunManifest make_manifest(std::string command, nlohmann::json parameters, std::uint64_t seed,
                          const nlohmann::json& result);
nlohmann::json to_json(const RunManifest& manifest);

}  // namespace cornerlab
