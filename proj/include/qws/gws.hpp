#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qws/scattering.hpp"
#include "qws/scenario.hpp"

namespace qws {

// Generalized Wigner-Smith matrix Q_theta = -i S^dag dS/dtheta, built from
// central differences (S(theta + h) - S(theta - h)) / 2h around the
// scenario's nominal configuration and symmetrized to (Q + Q^dag)/2. For
// theta = target-x/y the step is a displacement of the target (default: one
// grid spacing, so both samples carry the identical raster shifted by whole
// nodes); for theta = frequency the step is in k (default 1e-4 * k).
struct GwsMatrix {
  Eigen::MatrixXcd q;  // Hermitian, 2N' x 2N'
  ThetaKind theta_kind = ThetaKind::TargetX;
  double step = 0.0;                // step actually used
  double hermiticity_defect = 0.0;  // pre-symmetrization ||Q - Q^dag||_F / 2
};

struct GwsOptions {
  double step = 0.0;        // 0 selects the default for the theta kind
  bool richardson = false;  // combine steps h and 2h: (4 Q_h - Q_2h)/3
  double defect_threshold = 1e-6;  // propagate solver quality
};

// Scattering matrix of the scenario with theta displaced by `offset` from its
// nominal value (offset in length units for target-x/y, in k for frequency).
ScatteringMatrix solve_scenario(const Scenario& sc, double theta_offset = 0.0);

GwsMatrix gws_matrix(const Scenario& sc, const GwsOptions& opt = {});

// Eigendecomposition with deterministic ordering and phases: eigenvalues
// descending; each eigenvector's largest-magnitude component rotated to the
// positive real axis. i_hav is the channel of largest |eigenvalue| (ties go
// to the positive one).
struct GwsEigenSystem {
  Eigen::VectorXd eigenvalues;  // descending
  Eigen::MatrixXcd w;           // unitary, columns are eigenvectors
  int i_max = 0;
  int i_min = 0;
  int i_hav = 0;
};

GwsEigenSystem eigendecompose(const Eigen::MatrixXcd& q);
GwsEigenSystem eigendecompose(const GwsMatrix& q);

// Expected classical momentum-transfer rate alpha^dag Q alpha of a coherent
// incident vector (real by hermiticity).
double expected_classical_force(const Eigen::VectorXcd& alpha,
                                const GwsMatrix& q);

// Total scattering phase eta = arg det S, accumulated continuously along a
// scan of theta offsets (or absolute k values for theta = frequency).
// Per-step increments must stay below pi; larger jumps raise AliasingError.
struct PhaseScan {
  std::vector<double> theta;  // scan coordinate
  std::vector<double> eta;    // unwrapped
  std::vector<double> tr_q;   // trace of Q at each sample (optional, may be empty)
};

PhaseScan scattering_phase_scan(const Scenario& sc,
                                const std::vector<double>& offsets,
                                bool with_trace = false,
                                const GwsOptions& opt = {});

// Matched-sample comparison of d eta/d theta against tr Q at the nominal
// configuration: both sides are formed from the same S samples at offsets
// +/- h and +/- 2h and Richardson combined with identical weights, so the
// discrepancy between them (an even series in h) loses its h^2 term
// identically.  Returns the two sides and the relative mismatch.
struct KreinCheck {
  double deta_dtheta = 0.0;
  double trace_q = 0.0;
  double relative_mismatch = 0.0;
};

KreinCheck krein_check(const Scenario& sc, double step = 0.0);

}  // namespace qws
