#include "qws/vacuum.hpp"

#include <cmath>
#include <complex>

#include "qws/errors.hpp"

namespace qws {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arg_det(const Eigen::MatrixXcd& s) {
  return std::arg(Eigen::PartialPivLU<Eigen::MatrixXcd>(s).determinant());
}

std::vector<size_t> halved_indices(size_t n) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < n; i += 2) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

}  // namespace

double dos_correction(const Eigen::MatrixXcd& q_e) {
  return std::real(q_e.trace()) / (2.0 * kPi);
}

double damped_trapezoid(const std::vector<double>& e,
                        const std::vector<double>& f, double kappa) {
  const size_t n = e.size();
  if (n < 2 || f.size() != n)
    throw ToleranceError("vacuum: quadrature needs matched grids, length >= 2");
  double acc = 0.0;
  double prev = f[0] * std::exp(-kappa * e[0]);
  for (size_t i = 1; i < n; ++i) {
    if (e[i] <= e[i - 1])
      throw ToleranceError("vacuum: energy grid must be strictly increasing");
    const double cur = f[i] * std::exp(-kappa * e[i]);
    acc += 0.5 * (prev + cur) * (e[i] - e[i - 1]);
    prev = cur;
  }
  return acc;
}

VacuumScan vacuum_force(const Scenario& sc, const std::vector<double>& e_grid,
                        double kappa, const GwsOptions& opt) {
  const size_t n = e_grid.size();
  if (n < 3)
    throw ToleranceError("vacuum: band scan needs at least 3 samples");
  if (kappa < 0) throw ToleranceError("vacuum: kappa must be non-negative");

  VacuumScan scan;
  scan.e = e_grid;
  scan.kappa = kappa;
  scan.tr_q.resize(n);
  scan.eta.resize(n);
  scan.integrand.resize(n);

  double eta_acc = 0.0, phi_prev = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (e_grid[i] <= 0)
      throw ScenarioError("vacuum: band energies must be positive");
    if (i > 0 && e_grid[i] <= e_grid[i - 1])
      throw ToleranceError("vacuum: energy grid must be strictly increasing");
    Scenario sample = sc;
    sample.k_over_piW = e_grid[i] * sample.width / kPi;
    const GwsMatrix qm = gws_matrix(sample, opt);
    scan.tr_q[i] = std::real(qm.q.trace());
    scan.integrand[i] =
        scan.tr_q[i] * std::exp(-kappa * e_grid[i]) / (4.0 * kPi);

    const double phi = arg_det(solve_scenario(sample).s);
    if (i == 0)
      eta_acc = phi;
    else
      eta_acc += std::remainder(phi - phi_prev, 2.0 * kPi);
    phi_prev = phi;
    scan.eta[i] = eta_acc;
  }

  std::vector<double> f(n);
  for (size_t i = 0; i < n; ++i) f[i] = scan.tr_q[i] / (4.0 * kPi);
  scan.value = damped_trapezoid(e_grid, f, kappa);

  std::vector<double> e2, f2;
  for (size_t idx : halved_indices(n)) {
    e2.push_back(e_grid[idx]);
    f2.push_back(f[idx]);
  }
  scan.error_bar = std::abs(scan.value - damped_trapezoid(e2, f2, kappa)) / 3.0;

  scan.value_half_kappa = damped_trapezoid(e_grid, f, kappa / 2.0);
  scan.extrapolated = 2.0 * scan.value_half_kappa - scan.value;
  return scan;
}

Scenario mirror_scenario(const Scenario& sc) {
  Scenario out = sc;
  for (auto& s : out.scatterers) s.cx = out.length - s.cx;
  return out;
}

}  // namespace qws
