#include <doctest.h>

#include <cmath>
#include <complex>

#include "qws/gaussian.hpp"
#include "qws/gws.hpp"
#include "qws/metrology.hpp"

using namespace qws;
using cd = std::complex<double>;

TEST_CASE("coherent-probe information, matrix and eigenbasis forms agree") {
  Eigen::MatrixXcd q(3, 3);
  q << cd(1.0, 0), cd(0.3, 0.2), cd(0, 0.1),
       cd(0.3, -0.2), cd(-0.4, 0), cd(0.05, 0),
       cd(0, -0.1), cd(0.05, 0), cd(0.2, 0);

  Eigen::VectorXcd alpha(3);
  alpha << cd(0.7, 0.1), cd(-0.2, 0.4), cd(0.0, 0.3);

  const GwsEigenSystem sys = eigendecompose(q);
  const Eigen::VectorXcd beta = sys.w.adjoint() * alpha;

  const double f_mode = qfi_coherent(alpha, q);
  const double f_eig = qfi_coherent(beta, sys.eigenvalues);
  CHECK(f_mode == doctest::Approx(f_eig).epsilon(1e-12));
  CHECK(f_mode > 0.0);
}

TEST_CASE("Gaussian information reduces to the coherent value at zero squeezing") {
  Eigen::VectorXd lambda(3);
  lambda << 1.2, -0.7, 0.3;
  Eigen::VectorXcd beta(3);
  beta << cd(0.5, 0.5), cd(0.0, -0.8), cd(0.3, 0.0);
  const Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(3, 3);

  CHECK(qfi_gaussian(beta, xi, lambda) ==
        doctest::Approx(qfi_coherent(beta, lambda)).epsilon(1e-12));
}

TEST_CASE("diagonal phase-squeezed family matches its closed form") {
  Eigen::VectorXd lambda(2);
  lambda << 0.9, -0.4;
  Eigen::VectorXcd beta(2);
  beta << 0.6 * std::exp(cd(0, 0.3)), 0.9 * std::exp(cd(0, -1.1));
  const double p0 = 0.35, p1 = 0.2;

  // phase squeezing: psi_i = 2 arg beta_i + pi
  Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(2, 2);
  xi(0, 0) = p0 * std::exp(cd(0, 2 * std::arg(beta(0)) + 3.14159265358979324));
  xi(1, 1) = p1 * std::exp(cd(0, 2 * std::arg(beta(1)) + 3.14159265358979324));

  double expect = 0.0;
  const double ps[2] = {p0, p1};
  for (int i = 0; i < 2; ++i) {
    const double s = std::sinh(ps[i]), c = std::cosh(ps[i]);
    expect += lambda(i) * lambda(i) *
              (std::norm(beta(i)) * std::exp(2 * ps[i]) + 2 * c * c * s * s);
  }
  CHECK(qfi_gaussian(beta, xi, lambda) ==
        doctest::Approx(4 * expect).epsilon(1e-10));
}

TEST_CASE("optimal probes hit their closed forms exactly") {
  Eigen::VectorXd lambda(4);
  lambda << 0.8, 0.1, -0.3, -1.1;  // extreme |eigenvalue| is negative here
  const double nu = 7.0;

  const QfiReport coh = optimal_coherent_probe(lambda, nu);
  CHECK(coh.channel == 3);
  CHECK(coh.qfi == doctest::Approx(4 * 1.21 * nu).epsilon(1e-14));

  const QfiReport gss = optimal_gaussian_probe(lambda, nu);
  CHECK(gss.qfi == doctest::Approx(8 * 1.21 * nu * (nu + 1)).epsilon(1e-14));
  CHECK(gss.cramer_rao == doctest::Approx(1.0 / std::sqrt(gss.qfi)));

  // the reported Gaussian optimum is attained by an explicit squeezed vacuum
  Eigen::VectorXcd beta0 = Eigen::VectorXcd::Zero(4);
  Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(4, 4);
  xi(3, 3) = std::asinh(std::sqrt(nu));
  CHECK(qfi_gaussian(beta0, xi, lambda) ==
        doctest::Approx(gss.qfi).epsilon(1e-12));

  const QfiReport noon = optimal_noon_probe(lambda, 7);
  CHECK(noon.channel == 0);
  CHECK(noon.channel_min == 3);
  CHECK(noon.qfi == doctest::Approx((0.8 + 1.1) * (0.8 + 1.1) * 49.0));
  // NOON saturates the variance bound: F = 4 * bound
  CHECK(noon.qfi == doctest::Approx(4 * popoviciu_bound(lambda, 7.0)));

  // with multiple repetitions the precision improves as 1/sqrt(M)
  const QfiReport rep = optimal_coherent_probe(lambda, nu, 16);
  CHECK(rep.cramer_rao == doctest::Approx(coh.cramer_rao / 4.0));
}

TEST_CASE("Gaussian beats NOON by at least a factor two on any spectrum") {
  for (unsigned seed = 1; seed <= 25; ++seed) {
    const Eigen::VectorXd lambda = random_spectrum(6, seed);
    for (double nu : {1.0, 3.0, 20.0}) {
      const double fg = optimal_gaussian_probe(lambda, nu).qfi;
      const double fn =
          optimal_noon_probe(lambda, static_cast<int>(nu)).qfi;
      CHECK(fg >= 2.0 * fn - 1e-12);
    }
  }
}

TEST_CASE("scaling table exposes shot-noise and Heisenberg slopes") {
  Eigen::VectorXd lambda(3);
  lambda << 0.9, 0.2, -0.6;
  const std::vector<double> grid = log_integer_grid(1, 10000, 25);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 10000.0);
  for (size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
    CHECK(grid[i] == std::floor(grid[i]));
  }

  const ScalingTable t = scaling_experiment(lambda, grid);
  REQUIRE(t.rows.size() == grid.size());
  CHECK(t.slope_coherent == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t.slope_gaussian == doctest::Approx(2.0).epsilon(0.01));
  CHECK(t.slope_noon == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("random spectra are reproducible and inside (-1, 1)") {
  const Eigen::VectorXd a = random_spectrum(40, 123);
  const Eigen::VectorXd b = random_spectrum(40, 123);
  const Eigen::VectorXd c = random_spectrum(40, 124);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - c).norm() > 0.0);
  CHECK(a.maxCoeff() < 1.0);
  CHECK(a.minCoeff() > -1.0);
}
