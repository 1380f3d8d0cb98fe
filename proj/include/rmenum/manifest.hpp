#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rmenum {

std::string sha256_hex(std::string_view data);

struct ManifestOutput {
  std::string path;  // "-" for stdout
  std::string sha256;
};

/// Record of one CLI invocation. Rerunning `argv` with the same tool version
/// reproduces every output hash.
struct RunManifest {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  double wallclock_seconds = 0.0;
  std::string tool_version;
  std::vector<std::string> argv;
  std::vector<ManifestOutput> outputs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

}  // namespace rmenum
