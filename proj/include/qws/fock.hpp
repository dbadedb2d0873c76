#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qws {

// Exact few-photon reference machinery. Everything here is built directly
// from ladder-operator rules and permanents, independent of the Gaussian and
// metrology formulas it is used to cross-check.

// Fixed-photon-number sector of N modes: all occupation vectors with
// sum nu, enumerated in reverse-lexicographic order (so (nu,0,...,0) comes
// first and (0,...,0,nu) last). Dimension C(nu+N-1, nu), capped.
struct FockSector {
  int n_modes = 0;
  int total_photons = 0;
  std::vector<std::vector<int>> basis;

  int dimension() const { return static_cast<int>(basis.size()); }
  int index_of(const std::vector<int>& occ) const;  // -1 when absent

  static FockSector build(int n_modes, int nu, int dim_cap = 10000);
};

// Permanent via Ryser's formula with Gray-code subset updates, O(2^n n).
std::complex<double> permanent(const Eigen::MatrixXcd& a);

// Matrix of the mode-mixing unitary on a sector:
//   <mu| U |nu> = per(S[mu, nu]) / sqrt(prod mu_i! prod nu_j!)
// where S[mu, nu] repeats row i mu_i times and column j nu_j times. The
// global phase convention matches the Gaussian module (no sqrt(det S)
// prefactor), so the single-photon sector reproduces S itself.
Eigen::MatrixXcd sector_unitary(const Eigen::MatrixXcd& s,
                                const FockSector& sector);

// Matrix of sum_ij Q_ij b_i^dag b_j + tr(Q)/2 on a sector.
Eigen::MatrixXcd sector_qws(const Eigen::MatrixXcd& q,
                            const FockSector& sector);

// Finite-difference check that the sector unitary is generated by the sector
// QWS operator: compares -i U_mid^dag (U_+ - U_-)/step against sector_qws(q).
// Here, and only here, the sqrt(det S) global phase matters and is restored,
// with its branch continued across the three samples; a per-sample phase
// change too close to pi raises AliasingError.
struct GeneratorResidual {
  double absolute = 0.0;  // Frobenius norm of the difference
  double relative = 0.0;  // absolute / max(||sector_qws||_F, 1)
};

GeneratorResidual verify_generator_identity(const Eigen::MatrixXcd& s_minus,
                                            const Eigen::MatrixXcd& s_mid,
                                            const Eigen::MatrixXcd& s_plus,
                                            const Eigen::MatrixXcd& q,
                                            const FockSector& sector,
                                            double step);

// Number-basis coefficients (n = 0..cutoff-1) of the single-mode state
// D(beta) S(p e^{i psi}) |0>, built by exponentiating the displacement and
// squeeze generators on a padded truncated space. Post-conditions checked:
// captured norm >= 1 - 1e-10 and mean photon number within 1e-8 of
// |beta|^2 + sinh^2 p. Intended range: |beta| <= 2, p <= 1, cutoff >= 40.
Eigen::VectorXcd truncated_gaussian_vector(std::complex<double> beta, double p,
                                           double psi, int cutoff);

// Truncated single-mode number operator moments of a coefficient vector.
double number_mean(const Eigen::VectorXcd& c);
double number_variance(const Eigen::VectorXcd& c);

}  // namespace qws
