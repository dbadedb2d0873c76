#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qws/gaussian.hpp"

namespace qws {

// Micromanipulation: means and fluctuations of the QWS force operator
// Q_hat = sum_i lambda_i n_i + (1/2) sum_i lambda_i in the GWS eigenbasis.

// Mean of Q_hat for per-channel occupations nu_i (any state with those means:
// the expectation depends on the occupations only).
double qws_expectation(const Eigen::VectorXd& occupations,
                       const Eigen::VectorXd& lambda);

// Variance-minimizing single-channel Gaussian state at fixed mean photon
// number nu: amplitude-squeezed displaced state with squeeze strength p and
// |beta|^2 = nu - sinh^2 p. The minimized objective is
//   f(p) = nu e^{-2p} + sinh^2(p) (1 + sinh 2p),
// whose closed-form minimizer is p_opt below.
struct OptimalGaussian {
  double beta_abs = 0.0;
  double p = 0.0;
  double psi_offset = 0.0;  // squeeze phase relative to 2 arg(beta); 0 here
};

double variance_objective(double nu, double p);

// Closed-form minimizer: with
//   h(nu) = (54 (1+2nu)^2 + sqrt(2916 (1+2nu)^4 - 1728))^{1/3},
//   g(nu) = 4/h + h/3,
// p_opt = (1/2) ln( (sqrt(g) + sqrt(4(1+2nu)/sqrt(g) - g)) / 2 ).
double p_opt_closed(double nu);

// Large-nu behavior p_opt ~ (1/6) ln(4 nu).
double p_opt_asymptotic(double nu);

OptimalGaussian min_variance_gaussian(double nu);

// Force standard deviation of a single-channel amplitude-squeezed state on
// eigenvalue lambda: sigma^2 = lambda^2 (|beta|^2 e^{-2p} + 2 cosh^2 p sinh^2 p).
double force_sigma(double lambda, double beta_abs, double p);

// sigma(optimal squeezed)/sigma(coherent) at equal nu; dimensionless.
double reduction_factor(double nu);

// Maximum-mean-force report at mean photon number nu: occupy the top
// eigenchannel; mean = nu lambda_max + (1/2) sum_i lambda_i, with the
// minimum-variance Gaussian realizing that mean.
struct ForceReport {
  int channel = 0;
  double mean_force = 0.0;
  double vacuum_term = 0.0;
  double sigma = 0.0;
  double beta_abs = 0.0;
  double p = 0.0;
};

ForceReport optimal_force_state(const Eigen::VectorXd& lambda, double nu);

// Mean injected force of a Gaussian state through a (Hermitian) Q:
// <[a^dag] Q [a]> = alpha^dag Q alpha + tr(Q (sinh^2 R)^T).
double expected_quantum_injection(const GaussianState& st,
                                  const Eigen::MatrixXcd& q);

// Spectral force expectation over an energy band: trapezoid quadrature of
//   injected(E) = (1/2pi) |c(E)|^2 <[a^dag] Q(E) [a]>
//   vacuum(E)   = (1/4pi) tr Q(E) e^{-kappa E}
// Returns {injected, vacuum}. The damped vacuum integrand and quadrature are
// shared with the vacuum module.
struct SpectralForce {
  double injected = 0.0;
  double vacuum = 0.0;
};

SpectralForce force_spectral_expectation(
    const std::vector<double>& e_grid, const std::vector<double>& weights,
    const std::vector<Eigen::MatrixXcd>& q_samples,
    const std::vector<GaussianState>& states, double kappa);

}  // namespace qws
