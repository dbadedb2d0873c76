#include "qws/scattering.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "qws/errors.hpp"

namespace qws {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cd>;
using Triplet = Eigen::Triplet<cd>;

namespace {

// Unknowns are the non-metallic lattice nodes of columns 0..C (rows 1..M),
// numbered column-major. Columns 0 and C are the matching columns; the lead
// is eliminated exactly through the reflection operator
//   F = sum_m e^{i kx_m h} x_m x_m^T
// over the retained transverse modes, which closes the 5-point stencil via
// psi_{-1} = F psi_0 + (incident drive). All equations are scaled by h^2.
struct Assembly {
  int total_cols = 0;  // C + 1 lattice columns
  int rows = 0;
  std::vector<int> id;  // node -> unknown index, -1 for removed (metallic)
  int n_unknowns = 0;
  SpMat a;
};

int node(int i, int j, int rows) { return i * rows + (j - 1); }

Assembly assemble(const IndexLandscape& land, const LeadBasis& lead) {
  const int rows = land.rows;
  const int c_last = land.cols + 1;  // column index C
  const double h = land.h;
  const double k = lead.k;
  const double kh2 = k * k * h * h;

  Assembly as;
  as.total_cols = c_last + 1;
  as.rows = rows;
  as.id.assign(static_cast<size_t>(as.total_cols) * rows, -1);
  for (int i = 0; i <= c_last; ++i)
    for (int j = 1; j <= rows; ++j) {
      const bool metal =
          (i >= 1 && i <= land.cols) ? land.metallic(j - 1, i - 1) : false;
      if (!metal) as.id[node(i, j, rows)] = as.n_unknowns++;
    }

  // Lead reflection operator over retained modes.
  const Eigen::MatrixXcd f =
      lead.x.cast<cd>() * lead.phase.asDiagonal() * lead.x.transpose().cast<cd>();

  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(5) * as.n_unknowns + 2u * rows * rows);

  auto add_neighbor = [&](int row_id, int i, int j) {
    if (j < 1 || j > rows) return;
    const int nid = as.id[node(i, j, rows)];
    if (nid >= 0) trip.emplace_back(row_id, nid, cd(1.0, 0.0));
  };

  for (int i = 1; i <= land.cols; ++i)
    for (int j = 1; j <= rows; ++j) {
      const int rid = as.id[node(i, j, rows)];
      if (rid < 0) continue;
      trip.emplace_back(rid, rid,
                        cd(-4.0 + kh2 * land.n2(j - 1, i - 1), 0.0));
      add_neighbor(rid, i - 1, j);
      add_neighbor(rid, i + 1, j);
      add_neighbor(rid, i, j - 1);
      add_neighbor(rid, i, j + 1);
    }

  for (const int i : {0, c_last}) {
    const int inner = (i == 0) ? 1 : c_last - 1;
    for (int j = 1; j <= rows; ++j) {
      const int rid = as.id[node(i, j, rows)];
      add_neighbor(rid, inner, j);
      for (int jp = 1; jp <= rows; ++jp) {
        cd coeff = f(j - 1, jp - 1);
        if (jp == j) coeff += cd(-4.0 + kh2, 0.0);
        if (std::abs(jp - j) == 1) coeff += cd(1.0, 0.0);
        trip.emplace_back(rid, as.id[node(i, jp, rows)], coeff);
      }
    }
  }

  as.a.resize(as.n_unknowns, as.n_unknowns);
  as.a.setFromTriplets(trip.begin(), trip.end());
  as.a.makeCompressed();
  return as;
}

// Rough 1-norm condition estimate from a successful factorization.
double condition_estimate(const SpMat& a,
                          Eigen::SparseLU<SpMat>& lu) {
  double norm_a = 0.0;
  for (int c = 0; c < a.outerSize(); ++c) {
    double col = 0.0;
    for (SpMat::InnerIterator it(a, c); it; ++it) col += std::abs(it.value());
    norm_a = std::max(norm_a, col);
  }
  std::mt19937_64 rng(12345);
  double norm_inv = 0.0;
  Eigen::VectorXcd v(a.rows());
  for (int trial = 0; trial < 3; ++trial) {
    for (int i = 0; i < v.size(); ++i)
      v(i) = cd(uniform01(rng()) - 0.5, uniform01(rng()) - 0.5);
    v /= v.template lpNorm<1>();
    const Eigen::VectorXcd w = lu.solve(v);
    norm_inv = std::max(norm_inv, w.template lpNorm<1>());
  }
  return norm_a * norm_inv;
}

}  // namespace

SolveResult solve_scattering(const IndexLandscape& land, const LeadBasis& lead,
                             const SolveOptions& opt) {
  if (land.rows != lead.rows ||
      std::abs(land.h - lead.h) > 1e-12 * lead.h)
    throw SolverError("scattering: landscape and lead grids disagree");

  const int rows = land.rows;
  const int c_last = land.cols + 1;
  const int n_open = lead.n_open;
  const int n_ch = 2 * n_open;

  Assembly as = assemble(land, lead);

  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(as.a);
  lu.factorize(as.a);
  if (lu.info() != Eigen::Success)
    throw SolverError(
        "scattering: sparse factorization failed (" + lu.lastErrorMessage() +
        "); system of " + std::to_string(as.n_unknowns) +
        " unknowns is near-singular, condition estimate unavailable");

  // Drives: incidence n from the left excites column 0 with
  // 2 i sin(theta_n) x_n; from the right, column C.
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(as.n_unknowns, n_ch);
  for (int n = 0; n < n_open; ++n) {
    const double sin_th = lead.modes[n].flux * lead.h;  // sin(theta_n)
    const cd drive(0.0, 2.0 * sin_th);
    for (int j = 1; j <= rows; ++j) {
      b(as.id[node(0, j, rows)], n) = drive * lead.x(j - 1, n);
      b(as.id[node(c_last, j, rows)], n_open + n) = drive * lead.x(j - 1, n);
    }
  }

  const Eigen::MatrixXcd psi = lu.solve(b);

  // Project the matching columns onto the open modes and flux-normalize.
  Eigen::MatrixXcd psi0(rows, n_ch), psiC(rows, n_ch);
  for (int j = 1; j <= rows; ++j) {
    psi0.row(j - 1) = psi.row(as.id[node(0, j, rows)]);
    psiC.row(j - 1) = psi.row(as.id[node(c_last, j, rows)]);
  }
  const Eigen::MatrixXd x_open = lead.x.leftCols(n_open);
  Eigen::MatrixXcd out_left = x_open.transpose().cast<cd>() * psi0;
  Eigen::MatrixXcd out_right = x_open.transpose().cast<cd>() * psiC;
  for (int n = 0; n < n_open; ++n) {
    out_left(n, n) -= 1.0;             // subtract the incident wave
    out_right(n, n_open + n) -= 1.0;
  }

  Eigen::VectorXd sqrt_flux(n_open);
  for (int n = 0; n < n_open; ++n)
    sqrt_flux(n) = std::sqrt(lead.modes[n].flux);

  SolveResult res;
  res.sm.n_open = n_open;
  res.sm.k = lead.k;
  res.sm.s.resize(n_ch, n_ch);
  for (int in = 0; in < n_ch; ++in) {
    const double denom = sqrt_flux(in % n_open);
    for (int m = 0; m < n_open; ++m) {
      res.sm.s(m, in) = out_left(m, in) * sqrt_flux(m) / denom;
      res.sm.s(n_open + m, in) = out_right(m, in) * sqrt_flux(m) / denom;
    }
  }

  res.sm.unitarity_defect =
      (res.sm.s.adjoint() * res.sm.s - Eigen::MatrixXcd::Identity(n_ch, n_ch))
          .norm();
  res.sm.reciprocity_defect = (res.sm.s - res.sm.s.transpose()).norm();
  if (res.sm.unitarity_defect > opt.defect_warn) {
    res.sm.warning =
        "unitarity defect " + std::to_string(res.sm.unitarity_defect) +
        " above threshold (retained evanescent modes: " +
        std::to_string(lead.n_evanescent) + ", condition estimate " +
        std::to_string(condition_estimate(as.a, lu)) + ")";
  }

  if (opt.want_fields) {
    res.fields.reserve(n_ch);
    for (int in = 0; in < n_ch; ++in) {
      FieldMap map;
      map.h = land.h;
      map.incident_label =
          (in < n_open ? "left-" + std::to_string(in + 1)
                       : "right-" + std::to_string(in - n_open + 1));
      map.psi = Eigen::MatrixXcd::Zero(rows, c_last + 1);
      const double scale = 1.0 / sqrt_flux(in % n_open);
      for (int i = 0; i <= c_last; ++i)
        for (int j = 1; j <= rows; ++j) {
          const int uid = as.id[node(i, j, rows)];
          if (uid >= 0) map.psi(j - 1, i) = psi(uid, in) * scale;
        }
      res.fields.push_back(std::move(map));
    }
  }
  return res;
}

FieldMap scattering_field(const IndexLandscape& land, const LeadBasis& lead,
                          const Eigen::VectorXcd& alpha) {
  const int n_open = lead.n_open;
  if (alpha.size() != 2 * n_open)
    throw SolverError("scattering: incident vector has wrong dimension");
  const int rows = land.rows;
  const int c_last = land.cols + 1;

  Assembly as = assemble(land, lead);
  Eigen::SparseLU<SpMat> lu;
  lu.compute(as.a);
  if (lu.info() != Eigen::Success)
    throw SolverError("scattering: sparse factorization failed (" +
                      lu.lastErrorMessage() + ")");

  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(as.n_unknowns);
  for (int n = 0; n < n_open; ++n) {
    const double sin_th = lead.modes[n].flux * lead.h;
    const cd drive(0.0, 2.0 * sin_th);
    const double scale = 1.0 / std::sqrt(lead.modes[n].flux);
    for (int j = 1; j <= rows; ++j) {
      b(as.id[node(0, j, rows)]) += alpha(n) * scale * drive * lead.x(j - 1, n);
      b(as.id[node(c_last, j, rows)]) +=
          alpha(n_open + n) * scale * drive * lead.x(j - 1, n);
    }
  }
  const Eigen::VectorXcd psi = lu.solve(b);

  FieldMap map;
  map.h = land.h;
  map.incident_label = "superposition";
  map.psi = Eigen::MatrixXcd::Zero(rows, c_last + 1);
  for (int i = 0; i <= c_last; ++i)
    for (int j = 1; j <= rows; ++j) {
      const int uid = as.id[node(i, j, rows)];
      if (uid >= 0) map.psi(j - 1, i) = psi(uid);
    }
  return map;
}

double field_residual(const FieldMap& map, const IndexLandscape& land,
                      double k) {
  const int rows = land.rows;
  const int c_last = land.cols + 1;
  const double h2k2 = k * k * map.h * map.h;
  double num = 0.0, den = 0.0;
  for (int i = 1; i <= land.cols; ++i)
    for (int j = 1; j <= rows; ++j) {
      if (land.metallic(j - 1, i - 1)) continue;
      cd r = (-4.0 + h2k2 * land.n2(j - 1, i - 1)) * map.psi(j - 1, i);
      r += map.psi(j - 1, i - 1);
      if (i + 1 <= c_last) r += map.psi(j - 1, i + 1);
      if (j > 1) r += map.psi(j - 2, i);
      if (j < rows) r += map.psi(j, i);
      num += std::norm(r);
      den += std::norm(map.psi(j - 1, i));
    }
  if (den == 0.0) return 0.0;
  return std::sqrt(num) / (8.0 * std::sqrt(den));
}

}  // namespace qws
