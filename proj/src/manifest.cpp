#include "rmenum/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace rmenum {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex(2 * len, '0');
  for (unsigned int i = 0; i < len; ++i) std::snprintf(&hex[2 * i], 3, "%02x", digest[i]);
  return hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;
  j["wallclock_seconds"] = wallclock_seconds;
  j["tool_version"] = tool_version;
  j["argv"] = argv;
  auto& outs = j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.params = j.value("params", nlohmann::json::object());
  m.wallclock_seconds = j.value("wallclock_seconds", 0.0);
  m.tool_version = j.value("tool_version", std::string());
  m.argv = j.at("argv").get<std::vector<std::string>>();
  for (const auto& o : j.value("outputs", nlohmann::json::array()))
    m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>()});
  return m;
}

}  // namespace rmenum
