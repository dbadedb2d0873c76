#include "qws/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qws/errors.hpp"
#include "qws/io.hpp"

namespace qws {

void RunManifest::add_artifact(const std::string& path) {
  artifacts[std::filesystem::path(path).filename().string()] =
      sha256_file(path);
}

void RunManifest::write(const std::string& path) const {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["arguments"] = arguments;
  if (!scenario_path.empty()) {
    j["scenario"] = scenario_path;
    j["scenario_sha256"] = scenario_sha256;
  }
  j["out_dir"] = out_dir;
  j["seed"] = seed;
  j["tolerances"] = tolerances;
  j["artifacts"] = artifacts;
  j["wall_seconds"] = wall_seconds;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ToleranceError("manifest: cannot open " + path);
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw ToleranceError("manifest: short write to " + path);
}

}  // namespace qws
