#include "qws/manip.hpp"

#include <cmath>

#include "qws/errors.hpp"
#include "qws/vacuum.hpp"

namespace qws {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double qws_expectation(const Eigen::VectorXd& occupations,
                       const Eigen::VectorXd& lambda) {
  if (occupations.size() != lambda.size())
    throw ToleranceError("manip: dimension mismatch");
  return lambda.dot(occupations) + 0.5 * lambda.sum();
}

double variance_objective(double nu, double p) {
  const double s = std::sinh(p);
  return nu * std::exp(-2.0 * p) + s * s * (1.0 + std::sinh(2.0 * p));
}

double p_opt_closed(double nu) {
  if (nu < 0) throw ToleranceError("manip: nu must be non-negative");
  const double a = 1.0 + 2.0 * nu;
  const double h =
      std::cbrt(54.0 * a * a + std::sqrt(2916.0 * a * a * a * a - 1728.0));
  const double g = 4.0 / h + h / 3.0;
  const double sg = std::sqrt(g);
  const double inner = std::max(0.0, 4.0 * a / sg - g);
  return 0.5 * std::log(0.5 * (sg + std::sqrt(inner)));
}

double p_opt_asymptotic(double nu) {
  if (nu <= 0) throw ToleranceError("manip: nu must be positive");
  return std::log(4.0 * nu) / 6.0;
}

OptimalGaussian min_variance_gaussian(double nu) {
  OptimalGaussian og;
  og.p = p_opt_closed(nu);
  const double s = std::sinh(og.p);
  og.beta_abs = std::sqrt(std::max(0.0, nu - s * s));
  og.psi_offset = 0.0;  // squeeze the amplitude quadrature
  return og;
}

double force_sigma(double lambda, double beta_abs, double p) {
  const double s = std::sinh(p), c = std::cosh(p);
  const double var =
      beta_abs * beta_abs * std::exp(-2.0 * p) + 2.0 * c * c * s * s;
  return std::abs(lambda) * std::sqrt(var);
}

double reduction_factor(double nu) {
  if (nu <= 0) throw ToleranceError("manip: nu must be positive");
  return std::sqrt(variance_objective(nu, p_opt_closed(nu)) / nu);
}

ForceReport optimal_force_state(const Eigen::VectorXd& lambda, double nu) {
  if (lambda.size() == 0) throw ToleranceError("manip: empty spectrum");
  int top = 0;
  for (int i = 1; i < lambda.size(); ++i)
    if (lambda(i) > lambda(top)) top = i;
  ForceReport r;
  r.channel = top;
  r.vacuum_term = 0.5 * lambda.sum();
  r.mean_force = nu * lambda(top) + r.vacuum_term;
  const OptimalGaussian og = min_variance_gaussian(nu);
  r.beta_abs = og.beta_abs;
  r.p = og.p;
  r.sigma = force_sigma(lambda(top), og.beta_abs, og.p);
  return r;
}

double expected_quantum_injection(const GaussianState& st,
                                  const Eigen::MatrixXcd& q) {
  if (st.alpha.size() != q.rows() || q.rows() != q.cols())
    throw ToleranceError("manip: dimension mismatch");
  const double direct = std::real((st.alpha.adjoint() * (q * st.alpha))(0));
  const PolarDecomposition pd = polar_decompose(st.z);
  const Eigen::MatrixXcd sinh_r =
      hermitian_function(pd.r, [](double x) { return std::sinh(x); });
  const Eigen::MatrixXcd sinh2_r = sinh_r * sinh_r;
  const double thermal = std::real((q * sinh2_r.transpose()).trace());
  return direct + thermal;
}

SpectralForce force_spectral_expectation(
    const std::vector<double>& e_grid, const std::vector<double>& weights,
    const std::vector<Eigen::MatrixXcd>& q_samples,
    const std::vector<GaussianState>& states, double kappa) {
  const size_t n = e_grid.size();
  if (n < 2 || weights.size() != n || q_samples.size() != n ||
      states.size() != n)
    throw ToleranceError("manip: spectral grids must align, length >= 2");
  for (size_t i = 1; i < n; ++i)
    if (e_grid[i] <= e_grid[i - 1])
      throw ToleranceError("manip: energy grid must be strictly increasing");

  std::vector<double> inj(n), vac(n);
  for (size_t i = 0; i < n; ++i) {
    inj[i] = weights[i] * expected_quantum_injection(states[i], q_samples[i]) /
             (2.0 * kPi);
    vac[i] = std::real(q_samples[i].trace()) / (4.0 * kPi);
  }
  SpectralForce out;
  out.injected = damped_trapezoid(e_grid, inj, 0.0);
  out.vacuum = damped_trapezoid(e_grid, vac, kappa);
  return out;
}

}  // namespace qws
