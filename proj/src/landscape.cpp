#include "qws/landscape.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qws/errors.hpp"

namespace qws {

IndexLandscape build_landscape(const Scenario& sc, double dx, double dy) {
  sc.validate();
  const double h = sc.grid_spacing();
  const int total_cols = static_cast<int>(std::round(sc.length / h));  // = C
  const int rows = sc.grid_resolution - 1;
  if (total_cols < 2)
    throw ScenarioError("landscape: scattering region shorter than two cells");

  IndexLandscape land;
  land.cols = total_cols - 1;
  land.rows = rows;
  land.h = h;
  land.width = sc.width;
  land.length = sc.length;
  land.n2 = Eigen::ArrayXXd::Ones(rows, land.cols);
  land.metallic =
      Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
          rows, land.cols, false);

  std::vector<ScattererSpec> shapes = sc.scatterers;
  // Whole-spacing displacements shift the rasterized target rigidly by whole
  // nodes (containment is evaluated at integer-shifted node coordinates, so
  // the pixel set cannot change shape even when an edge grazes a node line).
  // Fractional displacements fall back to moving the center.
  std::vector<std::array<int, 2>> node_shift(shapes.size(), {0, 0});
  if (dx != 0.0 || dy != 0.0) {
    for (std::size_t t = 0; t < shapes.size(); ++t) {
      auto& s = shapes[t];
      if (!s.is_target) continue;
      if (s.xmin() + dx < -1e-12 || s.xmax() + dx > sc.length + 1e-12 ||
          s.ymin() + dy < -1e-12 || s.ymax() + dy > sc.width + 1e-12)
        throw ScenarioError(
            "landscape: displaced target leaves the scattering region");
      const double rx = dx / h, ry = dy / h;
      const double nx = std::round(rx), ny = std::round(ry);
      if (std::abs(rx - nx) <= 1e-9 && std::abs(ry - ny) <= 1e-9) {
        node_shift[t] = {static_cast<int>(nx), static_cast<int>(ny)};
      } else {
        s.cx += dx;
        s.cy += dy;
      }
    }
  }

  for (int i = 1; i <= land.cols; ++i) {
    for (int j = 1; j <= rows; ++j) {
      bool metal = false;
      double best_area = std::numeric_limits<double>::infinity();
      double n2 = 1.0;
      for (std::size_t t = 0; t < shapes.size(); ++t) {
        const auto& s = shapes[t];
        const double x = (i - node_shift[t][0]) * h;
        const double y = (j - node_shift[t][1]) * h;
        if (!s.contains(x, y)) continue;
        if (s.material == Material::Metallic) {
          metal = true;
          break;
        }
        if (s.area() <= best_area) {  // smallest containing wins, later ties
          best_area = s.area();
          n2 = s.index * s.index;
        }
      }
      if (metal)
        land.metallic(j - 1, i - 1) = true;
      else
        land.n2(j - 1, i - 1) = n2;
    }
  }
  return land;
}

}  // namespace qws
