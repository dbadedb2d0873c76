#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qws {

// Deterministic text artifacts: fixed "%.17g" formatting, 1-based indices,
// '\n' line endings, no timestamps, so identical inputs give identical bytes.

std::string format_g17(double v);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m);  // row,col,re,im
void write_real_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);  // row,col,value
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header);  // index,<header>
void write_columns_csv(const std::string& path,
                       const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns);

// Grid CSV of a field quantity: rows j = 1..M (y ascending), one CSV row per
// lattice row, columns i = 0..C (x from 0 to L).
void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid);

bool png_supported();

// 8-bit grayscale PNG of a non-negative grid, max-normalized, y increasing
// upward. Throws ToleranceError when PNG support was not compiled in.
void write_grayscale_png(const std::string& path, const Eigen::MatrixXd& grid);

std::string sha256_file(const std::string& path);

}  // namespace qws
