#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qws {

// Transverse eigenmodes of the clean semi-infinite leads, on the same lattice
// as the interior solve.
//
// The discrete transverse eigenvalue of mode m is mu_m = (2/h^2)(1 - cos(m pi h / W)),
// and the longitudinal wavenumber follows the lattice dispersion relation
//   (2/h^2)(cos(kx h) - 1) = mu_m - k^2,
// giving real kx in (0, pi/h) for open modes (mu_m < k^2) and kx = i*kappa,
// kappa > 0, for evanescent ones. Open modes carry lattice flux
// sin(kx h)/h per unit amplitude; scattering amplitudes are normalized so each
// open channel carries unit flux, which is what makes the scattering matrix of
// the discrete problem exactly unitary.
struct LeadMode {
  int m = 0;        // transverse index, 1-based
  bool open = false;
  std::complex<double> kx;   // lattice wavenumber: real or i*kappa
  std::complex<double> kx_continuum;  // sqrt(k^2 - (m pi/W)^2), for reporting
  double flux = 0.0;         // sin(Re kx * h)/h for open modes, else 0
  Eigen::VectorXd profile;   // sqrt(2/W) sin(m pi y_j / W), j = 1..rows
};

struct LeadBasis {
  double k = 0.0;
  double width = 0.0;
  double h = 0.0;
  int rows = 0;          // interior transverse points
  int n_open = 0;        // open modes per lead
  int n_evanescent = 0;  // retained evanescent modes
  std::vector<LeadMode> modes;  // ascending m, open modes first

  // Plain-orthonormal transverse eigenvector matrix: column m-1 holds
  // sqrt(2/(rows+1)) sin(m pi j/(rows+1)). Satisfies X^T X = I.
  Eigen::MatrixXd x;  // rows x (n_open + n_evanescent)

  Eigen::VectorXcd phase;  // exp(i kx h) per retained mode
};

struct LeadOptions {
  int n_evanescent = -1;        // -1 retains every lattice mode up to Nyquist
  double cutoff_margin = 1e-3;  // reject k closer than this (relative) to a cutoff
  double max_kh = 1.0;          // resolution validity bound
};

// Builds the lead basis for wavenumber k on a lattice with `resolution`
// points per unit W. Throws SolverError when kW/pi < 1 (no open modes), when
// k sits within the cutoff margin of a discrete cutoff sqrt(mu_m), when
// kh exceeds the validity bound, or when the discrete open-mode count
// disagrees with floor(kW/pi) (resolution too coarse for this k).
LeadBasis lead_modes(double k, double width, int resolution,
                     const LeadOptions& opt = {});

// Analytic lattice group delay of open mode m over a propagation length L:
// tau_m = L * h * k / sin(kx_m h), with c = 1 so omega = k.
double discrete_group_delay(const LeadMode& mode, double h, double k,
                            double length);

}  // namespace qws
