#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include <openssl/evp.h>

namespace recsel::cli {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json inputs_json = nlohmann::json::array();
  for (const auto& in : inputs) {
    inputs_json.push_back({{"source", in.source}, {"sha256", in.sha256}});
  }
  return {{"subcommand", subcommand},
          {"config", config},
          {"master_seed", master_seed ? nlohmann::json(*master_seed) : nlohmann::json(nullptr)},
          {"tool_version", tool_version},
          {"inputs", inputs_json},
          {"outputs", outputs}};
}

}  // namespace recsel::cli
