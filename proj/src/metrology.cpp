#include "qws/metrology.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qws/errors.hpp"
#include "qws/gaussian.hpp"
#include "qws/scenario.hpp"

namespace qws {

using cd = std::complex<double>;

namespace {

int argmax_abs(const Eigen::VectorXd& lambda) {
  int best = 0;
  for (int i = 1; i < lambda.size(); ++i) {
    const double a = std::abs(lambda(i)), b = std::abs(lambda(best));
    if (a > b || (a == b && lambda(i) > lambda(best))) best = i;
  }
  return best;
}

double slope_top_decade(const std::vector<double>& nu,
                        const std::vector<double>& f) {
  double nu_max = 0.0;
  for (double v : nu) nu_max = std::max(nu_max, v);
  std::vector<double> x, y;
  for (size_t i = 0; i < nu.size(); ++i)
    if (nu[i] >= nu_max / 10 && f[i] > 0) {
      x.push_back(std::log(nu[i]));
      y.push_back(std::log(f[i]));
    }
  if (x.size() < 2)
    throw ToleranceError("metrology: too few points in the top decade");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double qfi_coherent(const Eigen::VectorXcd& alpha, const Eigen::MatrixXcd& q) {
  if (alpha.size() != q.rows())
    throw ToleranceError("metrology: dimension mismatch");
  return 4.0 * (q * alpha).squaredNorm();
}

double qfi_coherent(const Eigen::VectorXcd& beta,
                    const Eigen::VectorXd& lambda) {
  if (beta.size() != lambda.size())
    throw ToleranceError("metrology: dimension mismatch");
  double f = 0.0;
  for (int i = 0; i < beta.size(); ++i)
    f += lambda(i) * lambda(i) * std::norm(beta(i));
  return 4.0 * f;
}

double qfi_gaussian(const Eigen::VectorXcd& beta, const Eigen::MatrixXcd& xi,
                    const Eigen::VectorXd& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (beta.size() != n || xi.rows() != n || xi.cols() != n)
    throw ToleranceError("metrology: dimension mismatch");
  if ((xi - xi.transpose()).norm() > 1e-10 * std::max(1.0, xi.norm()))
    throw ToleranceError("metrology: squeezing matrix must be symmetric");

  const PolarDecomposition pd = polar_decompose(xi);
  const Eigen::MatrixXcd sinh_p =
      hermitian_function(pd.r, [](double x) { return std::sinh(x); });
  const Eigen::MatrixXcd cosh_p =
      hermitian_function(pd.r, [](double x) { return std::cosh(x); });
  const Eigen::MatrixXcd sinh2_p = sinh_p * sinh_p;
  const Eigen::MatrixXcd t = sinh_p * pd.unitary;          // sinh(P) e^{i Psi}
  const Eigen::MatrixXcd c1 = cosh_p * t.transpose();      // cosh(P) e^{i Psi^T} sinh(P^T)

  double f = 0.0;
  for (int i = 0; i < n; ++i) {
    const double nu_i = std::norm(beta(i)) + std::real(sinh2_p(i, i));
    f += lambda(i) * lambda(i) * nu_i;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double mu = std::norm(c1(i, j));
      for (int m = 0; m < n; ++m)
        mu += std::norm(t(i, m)) * std::norm(t(j, m));
      mu -= 2.0 * std::real(std::conj(beta(i)) * std::conj(beta(j)) * c1(i, j));
      mu += 2.0 * std::real(std::conj(beta(i)) * beta(j) * sinh2_p(i, j));
      f += lambda(i) * lambda(j) * mu;
    }
  return 4.0 * f;
}

QfiReport optimal_coherent_probe(const Eigen::VectorXd& lambda, double nu,
                                 int repetitions) {
  if (nu < 0) throw ToleranceError("metrology: nu must be non-negative");
  const int hav = argmax_abs(lambda);
  QfiReport r;
  r.probe = "coherent";
  r.mean_photons = nu;
  r.channel = hav;
  r.qfi = 4.0 * lambda(hav) * lambda(hav) * nu;
  r.repetitions = repetitions;
  r.cramer_rao = r.qfi > 0 ? 1.0 / std::sqrt(repetitions * r.qfi)
                           : std::numeric_limits<double>::infinity();
  return r;
}

QfiReport optimal_gaussian_probe(const Eigen::VectorXd& lambda, double nu,
                                 int repetitions) {
  if (nu < 0) throw ToleranceError("metrology: nu must be non-negative");
  const int hav = argmax_abs(lambda);
  QfiReport r;
  r.probe = "gaussian";
  r.mean_photons = nu;
  r.channel = hav;
  r.qfi = 8.0 * lambda(hav) * lambda(hav) * nu * (nu + 1.0);
  r.repetitions = repetitions;
  r.cramer_rao = r.qfi > 0 ? 1.0 / std::sqrt(repetitions * r.qfi)
                           : std::numeric_limits<double>::infinity();
  return r;
}

QfiReport optimal_noon_probe(const Eigen::VectorXd& lambda, int nu,
                             int repetitions) {
  if (nu < 0) throw ToleranceError("metrology: nu must be non-negative");
  int imax = 0, imin = 0;
  for (int i = 1; i < lambda.size(); ++i) {
    if (lambda(i) > lambda(imax)) imax = i;
    if (lambda(i) < lambda(imin)) imin = i;
  }
  QfiReport r;
  r.probe = "noon";
  r.mean_photons = nu;
  r.channel = imax;
  r.channel_min = imin;
  const double gap = lambda(imax) - lambda(imin);
  r.qfi = gap * gap * static_cast<double>(nu) * nu;
  r.repetitions = repetitions;
  r.cramer_rao = r.qfi > 0 ? 1.0 / std::sqrt(repetitions * r.qfi)
                           : std::numeric_limits<double>::infinity();
  return r;
}

double popoviciu_bound(const Eigen::VectorXd& lambda, double nu) {
  const double gap = lambda.maxCoeff() - lambda.minCoeff();
  return nu * nu * gap * gap / 4.0;
}

ScalingTable scaling_experiment(const Eigen::VectorXd& lambda,
                                const std::vector<double>& nu_grid) {
  if (nu_grid.empty()) throw ToleranceError("metrology: empty nu grid");
  ScalingTable t;
  std::vector<double> nus, fc, fg, fn;
  for (double nu : nu_grid) {
    ScalingRow row;
    row.nu = nu;
    row.f_coherent = optimal_coherent_probe(lambda, nu).qfi;
    row.f_gaussian = optimal_gaussian_probe(lambda, nu).qfi;
    row.f_noon =
        optimal_noon_probe(lambda, static_cast<int>(std::llround(nu))).qfi;
    t.rows.push_back(row);
    nus.push_back(nu);
    fc.push_back(row.f_coherent);
    fg.push_back(row.f_gaussian);
    fn.push_back(row.f_noon);
  }
  t.slope_coherent = slope_top_decade(nus, fc);
  t.slope_gaussian = slope_top_decade(nus, fg);
  t.slope_noon = slope_top_decade(nus, fn);
  return t;
}

std::vector<double> log_integer_grid(double lo, double hi, int count) {
  if (lo < 1 || hi < lo || count < 2)
    throw ToleranceError("metrology: invalid grid request");
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    const double v =
        lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    const double r = std::round(v);
    if (grid.empty() || r > grid.back()) grid.push_back(r);
  }
  return grid;
}

Eigen::VectorXd random_spectrum(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = -1.0 + 2.0 * uniform01(rng());
  return lambda;
}

}  // namespace qws
