#include "cornerlab/manifest.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "cornerlab/error.hpp"

namespace cornerlab {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

RunManifest make_manifest(std::string command, nlohmann::json parameters, std::uint64_t seed,
                          const nlohmann::json& result) {
  RunManifest m;
  m.command = std::move(command);
  m.parameters = std::move(parameters);
  m.seed = seed;
  m.timestamp = utc_now();
  m.results_digest = sha256_hex(result.dump());
  return m;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"parameters", m.parameters},
          {"seed", m.seed},
          {"timestamp", m.timestamp},
          {"artifact_version", m.artifact_version},
          {"results_digest", m.results_digest}};
}

}  // namespace cornerlab
