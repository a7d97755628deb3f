#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace recsel::cli {

// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

struct InputDigest {
  std::string source;
  std::string sha256;
};

// Record of one CLI run. Thread counts are left out on purpose: results do
// not depend on them, and manifests of equivalent runs compare equal.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::uint64_t> master_seed;
  std::string tool_version;
  std::vector<InputDigest> inputs;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

}  // namespace recsel::cli
