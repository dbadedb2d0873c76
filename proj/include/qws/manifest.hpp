#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qws {

inline constexpr const char* kVersion = "0.1.0";

// Record of one CLI run: inputs, tolerances achieved, and every artifact with
// its SHA-256. Artifacts of reruns with identical inputs are byte-identical;
// the manifest's wall-clock field is informational only.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string scenario_path;   // empty when the command takes no scenario
  std::string scenario_sha256;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;  // name -> achieved value
  std::map<std::string, std::string> artifacts;  // file name -> sha256
  double wall_seconds = 0.0;

  void add_artifact(const std::string& path);  // hashes and records basename
  void write(const std::string& path) const;
};

}  // namespace qws
