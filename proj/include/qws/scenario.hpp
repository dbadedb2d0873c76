#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qws {

// A scenario describes one waveguide configuration: a rectangular scattering
// region [0,L] x [0,W] with hard walls at y = 0 and y = W, semi-infinite clean
// leads to the left and right, a set of scatterers, and the parameter theta
// with respect to which operators are differentiated.

enum class ThetaKind { TargetX, TargetY, Frequency };

enum class Material { Dielectric, Metallic };

enum class Shape { Rectangle, Circle };

struct ScattererSpec {
  Shape shape = Shape::Circle;
  double cx = 0.0, cy = 0.0;  // center
  double sx = 0.0, sy = 0.0;  // rectangle side lengths
  double radius = 0.0;        // circle radius
  Material material = Material::Dielectric;
  double index = 1.0;         // refractive index (dielectric only), >= 1
  bool is_target = false;     // at most one scatterer may be the target

  double xmin() const;
  double xmax() const;
  double ymin() const;
  double ymax() const;
  double area() const;
  bool contains(double x, double y) const;  // closed containment
};

struct ThetaSpec {
  ThetaKind kind = ThetaKind::TargetX;
  double step = 0.0;  // finite-difference step; 0 selects the default
};

struct Scenario {
  double width = 1.0;       // W
  double length = 1.0;      // L
  double k_over_piW = 0.0;  // k = k_over_piW * pi / W
  int grid_resolution = 100;  // transverse grid points per unit W
  std::uint64_t seed = 0;
  std::vector<ScattererSpec> scatterers;
  ThetaSpec theta;

  double wavenumber() const { return k_over_piW * std::numbers::pi / width; }
  double grid_spacing() const { return width / grid_resolution; }
  int open_mode_count() const;  // floor(kW/pi)
  const ScattererSpec* target() const;  // nullptr when no target present

  // Throws ScenarioError on invalid geometry or parameters: non-positive
  // dimensions, scatterers outside the closed region, dielectric index < 1,
  // more than one target, or L not an integer number of grid spacings.
  void validate() const;
};

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

Scenario make_empty_scenario(double width, double length, double k_over_piW,
                             int resolution);

// Disordered scenario used throughout: metallic square target of side W/10 at
// the center, 20 dielectric disks (radius W/20, index 1.44) placed uniformly
// at random, re-drawing any disk that overlaps the target or leaves the
// region. Placement is reproducible from the seed.
Scenario make_disordered_scenario(std::uint64_t seed, int resolution,
                                  double width = 1.0, double length = 1.0,
                                  double k_over_piW = 20.5,
                                  int n_disks = 20);

// Deterministic 53-bit uniform in [0,1) from a standard engine; used instead
// of std::uniform_real_distribution so placements are identical across
// standard-library implementations.
double uniform01(std::uint64_t raw);

}  // namespace qws
