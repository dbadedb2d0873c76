#include "qws/gaussian.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "qws/errors.hpp"

namespace qws {

using cd = std::complex<double>;

GaussianState::GaussianState(Eigen::VectorXcd a, Eigen::MatrixXcd zz,
                             Representation r)
    : alpha(std::move(a)), rep(r) {
  if (zz.rows() != zz.cols() || zz.rows() != alpha.size())
    throw ToleranceError("gaussian: displacement/squeezing dimensions differ");
  z = 0.5 * (zz + zz.transpose());  // enforce symmetry
}

PolarDecomposition polar_decompose(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  if (z.rows() != z.cols())
    throw ToleranceError("gaussian: polar decomposition needs a square matrix");
  PolarDecomposition pd;
  if (z.norm() == 0.0) {
    pd.r = Eigen::MatrixXcd::Zero(n, n);
    pd.unitary = Eigen::MatrixXcd::Identity(n, n);
    return pd;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd u = svd.matrixU();
  const Eigen::MatrixXcd v = svd.matrixV();
  pd.r = u * svd.singularValues().asDiagonal() * u.adjoint();
  pd.r = 0.5 * (pd.r + pd.r.adjoint());
  pd.unitary = u * v.adjoint();
  return pd;
}

Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& herm,
                                    double (*f)(double)) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success)
    throw ToleranceError("gaussian: hermitian eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0 && ev(i) > -1e-12) ev(i) = 0.0;
    ev(i) = f(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

std::pair<Eigen::VectorXd, double> mean_photon_numbers(
    const GaussianState& st) {
  const PolarDecomposition pd = polar_decompose(st.z);
  const Eigen::MatrixXcd sinh2 =
      hermitian_function(pd.r, [](double x) { return std::sinh(x) * std::sinh(x); });
  Eigen::VectorXd n(st.n_modes());
  for (int m = 0; m < st.n_modes(); ++m)
    n(m) = std::norm(st.alpha(m)) + std::real(sinh2(m, m));
  return {n, n.sum()};
}

GaussianState transform_representation(const GaussianState& st,
                                       const Eigen::MatrixXcd& w,
                                       Representation target) {
  if (w.rows() != w.cols() || w.rows() != st.alpha.size())
    throw ToleranceError("gaussian: basis matrix has wrong dimensions");
  const double defect =
      (w.adjoint() * w -
       Eigen::MatrixXcd::Identity(w.rows(), w.cols()))
          .norm();
  if (defect > 1e-12)
    throw ToleranceError("gaussian: basis matrix unitarity defect " +
                         std::to_string(defect));
  if (target == st.rep) return st;
  if (target == Representation::GwsBasis)
    return GaussianState(w.adjoint() * st.alpha,
                         w.adjoint() * st.z * w.conjugate(), target);
  return GaussianState(w * st.alpha, w * st.z * w.transpose(), target);
}

GaussianState scatter_gaussian(const GaussianState& st,
                               const Eigen::MatrixXcd& s,
                               double unitarity_tol) {
  if (st.rep != Representation::ModeBasis)
    throw ToleranceError("gaussian: scattering acts in the mode basis");
  if (s.rows() != s.cols() || s.rows() != st.alpha.size())
    throw ToleranceError("gaussian: scattering matrix has wrong dimensions");
  const double defect =
      (s.adjoint() * s - Eigen::MatrixXcd::Identity(s.rows(), s.cols())).norm();
  if (defect > unitarity_tol)
    throw ToleranceError("gaussian: scattering matrix unitarity defect " +
                         std::to_string(defect));
  return GaussianState(s * st.alpha, s * st.z * s.transpose(),
                       Representation::ModeBasis);
}

QuadratureVariances quadrature_variances(double r, double /*phi*/) {
  return {0.5 * std::exp(-2 * r), 0.5 * std::exp(2 * r)};
}

double squeezing_db(double r) { return 20.0 * r / std::log(10.0); }

double squeezing_r_from_db(double db) { return db * std::log(10.0) / 20.0; }

}  // namespace qws
