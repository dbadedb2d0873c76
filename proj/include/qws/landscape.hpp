#pragma once

#include <Eigen/Dense>

#include "qws/scenario.hpp"

namespace qws {

// Rasterized material map on the interior of the finite-difference lattice.
//
// Lattice columns run i = 0..C with x_i = i*h and C = L/h; rows run
// j = 1..rows with y_j = j*h (walls at j = 0 and j = rows+1 carry psi = 0).
// Columns 0 and C are the lead-matching columns and must stay free space, so
// the landscape stores material data for interior columns i = 1..C-1 only.
// A node is metallic iff its center lies inside a metallic scatterer
// (metallic nodes are removed from the solve, enforcing psi = 0). Otherwise
// n^2 at the node comes from the smallest-area dielectric scatterer containing
// the node center (ties broken by latest in the scatterer list), else 1.
struct IndexLandscape {
  int cols = 0;  // interior columns, i = 1..cols
  int rows = 0;  // interior rows, j = 1..rows
  double h = 0.0;
  double width = 0.0;
  double length = 0.0;
  Eigen::ArrayXXd n2;                           // rows x cols
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> metallic;  // rows x cols

  int metallic_count() const { return static_cast<int>(metallic.count()); }
};

// Rasterize the scenario's scatterers. (dx, dy) displaces the target (only)
// from its nominal position; used by finite differences in theta. Throws
// ScenarioError if the displaced target leaves the closed scattering region.
IndexLandscape build_landscape(const Scenario& sc, double dx = 0.0,
                               double dy = 0.0);

}  // namespace qws
