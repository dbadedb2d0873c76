#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qws/gws.hpp"
#include "qws/scenario.hpp"

namespace qws {

// Spectral vacuum quantities. With c = hbar = 1 the band coordinate E is the
// wavenumber k of each monochromatic sector.

// Density-of-states correction carried by the scattering system at energy E:
// tr Q_E / (2 pi), with Q_E the frequency-kind GWS matrix at that energy.
double dos_correction(const Eigen::MatrixXcd& q_e);

// Damped trapezoid quadrature of f(E) e^{-kappa E} over the sample grid.
double damped_trapezoid(const std::vector<double>& e,
                        const std::vector<double>& f, double kappa);

// Vacuum expectation of the generalized force over a band:
//   K = (1/4pi) integral tr Q_theta(E) e^{-kappa E} dE,
// trapezoid quadrature with a step-halving error bar and kappa -> 0
// extrapolation from kappa and kappa/2. Every sample's scattering solve must
// pass the solver's quality checks, else SolverError.
struct VacuumScan {
  std::vector<double> e;
  std::vector<double> tr_q;
  std::vector<double> eta;        // unwrapped along the band
  std::vector<double> integrand;  // (1/4pi) tr Q e^{-kappa E}
  double kappa = 0.0;
  double value = 0.0;            // quadrature at kappa
  double error_bar = 0.0;        // |full - halved|/3
  double value_half_kappa = 0.0; // quadrature at kappa/2
  double extrapolated = 0.0;     // linear kappa -> 0: 2 I(kappa/2) - I(kappa)
};

// The grid must be strictly increasing, and each E must pass lead validation
// (inside the band where at least one mode is open, away from cutoffs).
VacuumScan vacuum_force(const Scenario& sc, const std::vector<double>& e_grid,
                        double kappa, const GwsOptions& opt = {});

// Mirror of a scenario about x = L/2 (scatterer x-centers reflected); the
// vacuum force along x flips sign under this operation.
Scenario mirror_scenario(const Scenario& sc);

}  // namespace qws
