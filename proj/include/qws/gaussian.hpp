#pragma once

#include <Eigen/Dense>
#include <utility>

namespace qws {

// Multimode Gaussian states |alpha, Z> = D(alpha) S(Z) |0>, parametrized by a
// displacement vector and a symmetric squeezing matrix Z. A state is tracked
// either in the physical mode basis or in the eigenbasis of a GWS matrix;
// transformations between the two are unitary relabelings of the mode
// operators. Global phases are dropped throughout.
enum class Representation { ModeBasis, GwsBasis };

struct GaussianState {
  Eigen::VectorXcd alpha;
  Eigen::MatrixXcd z;  // symmetric (enforced on construction)
  Representation rep = Representation::ModeBasis;

  GaussianState() = default;
  GaussianState(Eigen::VectorXcd a, Eigen::MatrixXcd zz,
                Representation r = Representation::ModeBasis);

  int n_modes() const { return static_cast<int>(alpha.size()); }
};

// Polar factorization Z = R e^{i Phi} with R Hermitian PSD, from a full SVD
// Z = U Sigma V^dag: R = U Sigma U^dag and e^{i Phi} = U V^dag. Z = 0 yields
// R = 0 with identity unitary factor; the matrix angle Phi itself is never
// extracted, avoiding logarithm branch choices.
struct PolarDecomposition {
  Eigen::MatrixXcd r;        // Hermitian PSD
  Eigen::MatrixXcd unitary;  // e^{i Phi}
};

PolarDecomposition polar_decompose(const Eigen::MatrixXcd& z);

// Apply f to the eigenvalues of a Hermitian matrix (clamping tiny negative
// eigenvalues of PSD inputs to zero).
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& herm,
                                    double (*f)(double));

// Per-mode mean photon numbers |alpha_m|^2 + (sinh^2 R)_mm and their total.
std::pair<Eigen::VectorXd, double> mean_photon_numbers(const GaussianState& st);

// Representation change with the (unitary) GWS eigenvector matrix w:
// to GwsBasis:  beta = w^dag alpha, Xi = w^dag Z w*;
// to ModeBasis: alpha = w beta,     Z  = w Xi w^T.
// Throws ToleranceError if w fails unitarity at 1e-12.
GaussianState transform_representation(const GaussianState& st,
                                       const Eigen::MatrixXcd& w,
                                       Representation target);

// Scattering in the mode basis: alpha -> S alpha, Z -> S Z S^T.
GaussianState scatter_gaussian(const GaussianState& st,
                               const Eigen::MatrixXcd& s,
                               double unitarity_tol = 1e-8);

// Quadrature variances of a single squeezed mode along and against the
// squeezing direction phi/2 (vacuum = 1/2): {e^{-2r}/2, e^{+2r}/2}.
struct QuadratureVariances {
  double squeezed = 0.0;
  double anti_squeezed = 0.0;
};

QuadratureVariances quadrature_variances(double r, double phi);

// Squeezing strength in decibels: 20 r / ln 10 (so 15 dB <-> r ~ 1.73).
double squeezing_db(double r);
double squeezing_r_from_db(double db);

}  // namespace qws
