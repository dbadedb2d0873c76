#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace qws {

// Quantum Fisher information F = 4 Var(Q_hat) for parameter estimation
// through the scattering system, evaluated in the GWS eigenbasis where the
// QWS operator is sum_i lambda_i n_i + const. Precisions below are per probe
// use; the Cramer-Rao bound for M repetitions is 1/sqrt(M F).

// Coherent probe in the mode basis: F = 4 alpha^dag Q^2 alpha.
double qfi_coherent(const Eigen::VectorXcd& alpha, const Eigen::MatrixXcd& q);

// Coherent probe in the eigenbasis: F = 4 sum_i lambda_i^2 |beta_i|^2.
double qfi_coherent(const Eigen::VectorXcd& beta,
                    const Eigen::VectorXd& lambda);

// Pure Gaussian probe (beta, Xi) in the eigenbasis:
//   F = 4 sum_i lambda_i^2 nu_i + 4 sum_ij lambda_i lambda_j mu_ij
// with nu_i the per-mode mean photon numbers and mu_ij the squeezing
// correction assembled from the polar factors of Xi.
double qfi_gaussian(const Eigen::VectorXcd& beta, const Eigen::MatrixXcd& xi,
                    const Eigen::VectorXd& lambda);

struct QfiReport {
  std::string probe;          // "coherent" | "gaussian" | "noon"
  double mean_photons = 0.0;  // nu
  double qfi = 0.0;
  int repetitions = 1;
  double cramer_rao = 0.0;    // 1/sqrt(M * F)
  int channel = 0;            // eigenchannel the probe occupies (0-based)
  int channel_min = -1;       // second NOON channel when applicable
};

// Best coherent probe at mean photon number nu: all photons in the channel of
// largest |lambda|; F = 4 lambda_hav^2 nu (shot-noise scaling).
QfiReport optimal_coherent_probe(const Eigen::VectorXd& lambda, double nu,
                                 int repetitions = 1);

// Best pure Gaussian probe: a single-channel squeezed vacuum, beta = 0 and
// Xi = arcsinh(sqrt(nu)) on the hav channel; F = 8 lambda_hav^2 nu (nu + 1)
// (Heisenberg scaling).
QfiReport optimal_gaussian_probe(const Eigen::VectorXd& lambda, double nu,
                                 int repetitions = 1);

// NOON probe across the extreme eigenchannels, integer nu:
// F = (lambda_1 - lambda_N)^2 nu^2.
QfiReport optimal_noon_probe(const Eigen::VectorXd& lambda, int nu,
                             int repetitions = 1);

// Variance bound for any nu-photon state supported on the spectrum:
// Var(Q_hat) <= nu^2 (lambda_max - lambda_min)^2 / 4.
double popoviciu_bound(const Eigen::VectorXd& lambda, double nu);

// Closed-form F of the three probe families over a grid of photon numbers,
// plus log-log slopes fitted over the top decade of the grid.
struct ScalingRow {
  double nu = 0.0;
  double f_coherent = 0.0;
  double f_gaussian = 0.0;
  double f_noon = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  double slope_coherent = 0.0;
  double slope_gaussian = 0.0;
  double slope_noon = 0.0;
};

ScalingTable scaling_experiment(const Eigen::VectorXd& lambda,
                                const std::vector<double>& nu_grid);

// Log-spaced integer grid (deduplicated) from lo to hi inclusive.
std::vector<double> log_integer_grid(double lo, double hi, int count);

// Sample `n` eigenvalues uniformly from (-1, 1), reproducibly from the seed.
Eigen::VectorXd random_spectrum(int n, std::uint64_t seed);

}  // namespace qws
