#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qws/landscape.hpp"
#include "qws/leads.hpp"

namespace qws {

// Flux-normalized scattering matrix over the open channels of both leads.
// Channel ordering: 1..N' incoming from the left lead (ascending transverse
// index), N'+1..2N' incoming from the right. Outgoing channels are labeled
// the same way, so the upper-left block is left-lead reflection and the
// lower-left block left-to-right transmission.
struct ScatteringMatrix {
  Eigen::MatrixXcd s;  // 2N' x 2N'
  int n_open = 0;      // N', per lead
  double k = 0.0;
  double unitarity_defect = 0.0;    // ||S^dag S - I||_F
  double reciprocity_defect = 0.0;  // ||S - S^T||_F
  std::string warning;  // non-empty when the defect exceeded the threshold
};

// Scattering field on the full lattice window x in [0, L], one matrix column
// per lattice column i = 0..C, rows j = 1..rows. The stored field belongs to
// a unit-flux incident superposition described by `incident_label`.
struct FieldMap {
  Eigen::MatrixXcd psi;  // rows x (C+1)
  double h = 0.0;
  std::string incident_label;
};

struct SolveOptions {
  bool want_fields = false;          // keep per-incidence fields
  double defect_warn = 1e-6;         // unitarity-defect warning threshold
};

struct SolveResult {
  ScatteringMatrix sm;
  std::vector<FieldMap> fields;  // 2N' maps when requested, else empty
};

// Solves the lattice Helmholtz problem with exact mode-matching closures at
// columns 0 and C and fills the scattering matrix column by column.
// Throws SolverError if the interior system cannot be factorized (a message
// with a condition estimate is attached when one can be formed).
SolveResult solve_scattering(const IndexLandscape& land, const LeadBasis& lead,
                             const SolveOptions& opt = {});

// Field of an arbitrary unit-flux incident superposition: `alpha` holds 2N'
// flux-normalized incoming amplitudes in the channel ordering above.
FieldMap scattering_field(const IndexLandscape& land, const LeadBasis& lead,
                          const Eigen::VectorXcd& alpha);

// Maximum relative residual of the discrete Helmholtz equation over interior
// non-metallic nodes; the solver keeps this at LU-roundoff level (<= 1e-10).
double field_residual(const FieldMap& map, const IndexLandscape& land,
                      double k);

}  // namespace qws
