#include "qws/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "qws/errors.hpp"

namespace qws {

using nlohmann::json;

double ScattererSpec::xmin() const {
  return shape == Shape::Circle ? cx - radius : cx - sx / 2;
}
double ScattererSpec::xmax() const {
  return shape == Shape::Circle ? cx + radius : cx + sx / 2;
}
double ScattererSpec::ymin() const {
  return shape == Shape::Circle ? cy - radius : cy - sy / 2;
}
double ScattererSpec::ymax() const {
  return shape == Shape::Circle ? cy + radius : cy + sy / 2;
}

double ScattererSpec::area() const {
  return shape == Shape::Circle ? std::numbers::pi * radius * radius : sx * sy;
}

bool ScattererSpec::contains(double x, double y) const {
  if (shape == Shape::Circle) {
    const double dx = x - cx, dy = y - cy;
    return dx * dx + dy * dy <= radius * radius;
  }
  return std::abs(x - cx) <= sx / 2 && std::abs(y - cy) <= sy / 2;
}

int Scenario::open_mode_count() const {
  return static_cast<int>(std::floor(k_over_piW));
}

const ScattererSpec* Scenario::target() const {
  for (const auto& s : scatterers)
    if (s.is_target) return &s;
  return nullptr;
}

void Scenario::validate() const {
  if (width <= 0 || length <= 0)
    throw ScenarioError("scenario: width and length must be positive");
  if (k_over_piW <= 0) throw ScenarioError("scenario: k must be positive");
  if (grid_resolution < 4)
    throw ScenarioError("scenario: grid resolution too small");

  const double h = grid_spacing();
  const double cols = length / h;
  if (std::abs(cols - std::round(cols)) > 1e-9 * std::max(1.0, cols))
    throw ScenarioError(
        "scenario: length must be an integer number of grid spacings");

  int targets = 0;
  for (const auto& s : scatterers) {
    if (s.shape == Shape::Circle && s.radius <= 0)
      throw ScenarioError("scenario: circle radius must be positive");
    if (s.shape == Shape::Rectangle && (s.sx <= 0 || s.sy <= 0))
      throw ScenarioError("scenario: rectangle sides must be positive");
    if (s.material == Material::Dielectric && s.index < 1.0)
      throw ScenarioError("scenario: dielectric index must be >= 1");
    if (s.xmin() < -1e-12 || s.xmax() > length + 1e-12 || s.ymin() < -1e-12 ||
        s.ymax() > width + 1e-12)
      throw ScenarioError("scenario: scatterer outside the scattering region");
    if (s.is_target) ++targets;
  }
  if (targets > 1)
    throw ScenarioError("scenario: more than one target scatterer");
}

namespace {

json scatterer_to_json(const ScattererSpec& s) {
  json j;
  j["shape"] = s.shape == Shape::Circle ? "circle" : "rectangle";
  j["center"] = {s.cx, s.cy};
  if (s.shape == Shape::Circle)
    j["radius"] = s.radius;
  else
    j["size"] = {s.sx, s.sy};
  j["material"] = s.material == Material::Metallic ? "metallic" : "dielectric";
  if (s.material == Material::Dielectric) j["index"] = s.index;
  if (s.is_target) j["target"] = true;
  return j;
}

ScattererSpec scatterer_from_json(const json& j) {
  ScattererSpec s;
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "circle")
    s.shape = Shape::Circle;
  else if (shape == "rectangle")
    s.shape = Shape::Rectangle;
  else
    throw ScenarioError("scenario: unknown shape '" + shape + "'");
  s.cx = j.at("center").at(0).get<double>();
  s.cy = j.at("center").at(1).get<double>();
  if (s.shape == Shape::Circle) {
    s.radius = j.at("radius").get<double>();
  } else {
    s.sx = j.at("size").at(0).get<double>();
    s.sy = j.at("size").at(1).get<double>();
  }
  const std::string mat = j.at("material").get<std::string>();
  if (mat == "metallic")
    s.material = Material::Metallic;
  else if (mat == "dielectric")
    s.material = Material::Dielectric;
  else
    throw ScenarioError("scenario: unknown material '" + mat + "'");
  if (s.material == Material::Dielectric)
    s.index = j.value("index", 1.0);
  s.is_target = j.value("target", false);
  return s;
}

std::string theta_kind_name(ThetaKind k) {
  switch (k) {
    case ThetaKind::TargetX: return "target-x";
    case ThetaKind::TargetY: return "target-y";
    case ThetaKind::Frequency: return "frequency";
  }
  return "target-x";
}

ThetaKind theta_kind_from_name(const std::string& name) {
  if (name == "target-x") return ThetaKind::TargetX;
  if (name == "target-y") return ThetaKind::TargetY;
  if (name == "frequency") return ThetaKind::Frequency;
  throw ScenarioError("scenario: unknown theta kind '" + name + "'");
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ScenarioError("scenario: parse failure in '" + path + "': " +
                        e.what());
  }
  Scenario sc;
  try {
    sc.width = j.at("W").get<double>();
    sc.length = j.at("L").get<double>();
    sc.k_over_piW = j.at("k_over_piW").get<double>();
    sc.grid_resolution = j.at("grid_resolution").get<int>();
    sc.seed = j.value("seed", std::uint64_t{0});
    for (const auto& js : j.value("scatterers", json::array()))
      sc.scatterers.push_back(scatterer_from_json(js));
    if (j.contains("theta")) {
      sc.theta.kind = theta_kind_from_name(j["theta"].at("kind"));
      sc.theta.step = j["theta"].value("step", 0.0);
    }
  } catch (const json::exception& e) {
    throw ScenarioError("scenario: missing or malformed field in '" + path +
                        "': " + e.what());
  }
  sc.validate();
  return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
  json j;
  j["W"] = sc.width;
  j["L"] = sc.length;
  j["k_over_piW"] = sc.k_over_piW;
  j["grid_resolution"] = sc.grid_resolution;
  j["seed"] = sc.seed;
  j["scatterers"] = json::array();
  for (const auto& s : sc.scatterers)
    j["scatterers"].push_back(scatterer_to_json(s));
  j["theta"] = {{"kind", theta_kind_name(sc.theta.kind)},
                {"step", sc.theta.step}};
  std::ofstream out(path);
  if (!out) throw ScenarioError("scenario: cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Scenario make_empty_scenario(double width, double length, double k_over_piW,
                             int resolution) {
  Scenario sc;
  sc.width = width;
  sc.length = length;
  sc.k_over_piW = k_over_piW;
  sc.grid_resolution = resolution;
  sc.theta = {ThetaKind::Frequency, 0.0};
  sc.validate();
  return sc;
}

double uniform01(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

Scenario make_disordered_scenario(std::uint64_t seed, int resolution,
                                  double width, double length,
                                  double k_over_piW, int n_disks) {
  Scenario sc;
  sc.width = width;
  sc.length = length;
  sc.k_over_piW = k_over_piW;
  sc.grid_resolution = resolution;
  sc.seed = seed;
  sc.theta = {ThetaKind::TargetX, 0.0};

  ScattererSpec target;
  target.shape = Shape::Rectangle;
  target.cx = length / 2;
  target.cy = width / 2;
  target.sx = width / 10;
  target.sy = width / 10;
  target.material = Material::Metallic;
  target.is_target = true;
  sc.scatterers.push_back(target);

  const double r = width / 20;
  std::mt19937_64 rng(seed);
  auto draw = [&](double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng());
  };
  auto overlaps_target = [&](double cx, double cy) {
    // distance from disk center to the closed rectangle
    const double px = std::clamp(cx, target.cx - target.sx / 2,
                                 target.cx + target.sx / 2);
    const double py = std::clamp(cy, target.cy - target.sy / 2,
                                 target.cy + target.sy / 2);
    const double dx = cx - px, dy = cy - py;
    return dx * dx + dy * dy < r * r;
  };

  for (int n = 0; n < n_disks; ++n) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw ScenarioError("scenario: disk placement failed to converge");
      const double cx = draw(r, length - r);
      const double cy = draw(r, width - r);
      if (overlaps_target(cx, cy)) continue;
      ScattererSpec disk;
      disk.shape = Shape::Circle;
      disk.cx = cx;
      disk.cy = cy;
      disk.radius = r;
      disk.material = Material::Dielectric;
      disk.index = 1.44;
      sc.scatterers.push_back(disk);
      break;
    }
  }
  sc.validate();
  return sc;
}

}  // namespace qws
