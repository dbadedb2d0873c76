#include <doctest.h>

#include <cmath>
#include <complex>

#include "qws/gaussian.hpp"
#include "qws/manip.hpp"

using namespace qws;
using cd = std::complex<double>;

TEST_CASE("mean force over occupations includes the half-trace") {
  Eigen::VectorXd lambda(3), occ(3);
  lambda << 2.0, -1.0, 0.5;
  occ << 3.0, 0.0, 1.0;
  CHECK(qws_expectation(occ, lambda) ==
        doctest::Approx(6.0 + 0.5 + 0.75));
}

TEST_CASE("closed-form squeeze strength minimizes the variance objective") {
  for (double nu : {1.0, 10.0, 100.0, 1e4}) {
    const double p = p_opt_closed(nu);
    CHECK(p > 0.0);
    // interior minimum: central difference of the objective vanishes
    const double d = 1e-6;
    const double grad =
        (variance_objective(nu, p + d) - variance_objective(nu, p - d)) /
        (2 * d);
    const double curv = (variance_objective(nu, p + d) -
                         2 * variance_objective(nu, p) +
                         variance_objective(nu, p - d)) / (d * d);
    CHECK(std::abs(grad) < 1e-6 * curv);
    // and it beats both no squeezing and overshooting
    CHECK(variance_objective(nu, p) < variance_objective(nu, 0.0));
    CHECK(variance_objective(nu, p) < variance_objective(nu, 2 * p));
  }
}

TEST_CASE("independent numerical minimizer agrees to 1e-9") {
  // bisection on the analytic derivative of the objective, which locates the
  // minimum far more sharply than comparing nearly-equal objective values
  auto dfdp = [](double nu, double p) {
    const double s = std::sinh(p);
    const double s2p = std::sinh(2 * p), c2p = std::cosh(2 * p);
    return -2 * nu * std::exp(-2 * p) + s2p + s2p * s2p + 2 * s * s * c2p;
  };
  for (double nu : {1.0, 10.0, 100.0, 1e4}) {
    double a = 1e-8, b = 4.0;
    REQUIRE(dfdp(nu, a) < 0.0);
    REQUIRE(dfdp(nu, b) > 0.0);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
      const double mid = 0.5 * (a + b);
      (dfdp(nu, mid) < 0 ? a : b) = mid;
    }
    CHECK(std::abs(p_opt_closed(nu) - 0.5 * (a + b)) < 1e-9);
  }
}

TEST_CASE("reference point nu = 49 and the large-nu asymptote") {
  const double p49 = p_opt_closed(49.0);
  CHECK(squeezing_db(p49) == doctest::Approx(7.65).epsilon(0.01 / 7.65));
  CHECK(reduction_factor(49.0) <= 0.5);
  CHECK(reduction_factor(49.0) == doctest::Approx(0.4994).epsilon(1e-3));

  CHECK(std::abs(p_opt_closed(1e6) - p_opt_asymptotic(1e6)) <= 1e-4);
}

TEST_CASE("variance-minimizing state keeps the photon budget") {
  for (double nu : {0.5, 5.0, 200.0}) {
    const OptimalGaussian og = min_variance_gaussian(nu);
    const double s2 = std::sinh(og.p) * std::sinh(og.p);
    CHECK(og.beta_abs * og.beta_abs + s2 == doctest::Approx(nu).epsilon(1e-12));
    CHECK(og.psi_offset == 0.0);
  }
}

TEST_CASE("force fluctuation of the squeezed state") {
  const double lambda = -1.7, beta = 2.0, p = 0.4;
  const double s = std::sinh(p), c = std::cosh(p);
  const double var = beta * beta * std::exp(-2 * p) + 2 * c * c * s * s;
  CHECK(force_sigma(lambda, beta, p) ==
        doctest::Approx(1.7 * std::sqrt(var)));

  // at equal photon number the optimal squeezed state beats the coherent one
  const double nu = 25.0;
  const OptimalGaussian og = min_variance_gaussian(nu);
  CHECK(force_sigma(1.0, og.beta_abs, og.p) <
        force_sigma(1.0, std::sqrt(nu), 0.0));
}

TEST_CASE("maximum-force report composes the pieces") {
  Eigen::VectorXd lambda(3);
  lambda << 1.1, 0.3, -2.0;
  const ForceReport r = optimal_force_state(lambda, 9.0);
  CHECK(r.channel == 0);
  CHECK(r.vacuum_term == doctest::Approx(-0.3));
  CHECK(r.mean_force == doctest::Approx(9.0 * 1.1 - 0.3));
  const OptimalGaussian og = min_variance_gaussian(9.0);
  CHECK(r.p == doctest::Approx(og.p));
  CHECK(r.sigma == doctest::Approx(force_sigma(1.1, og.beta_abs, og.p)));
}

TEST_CASE("quantum injection equals the number-weighted trace") {
  Eigen::MatrixXcd q(2, 2);
  q << cd(0.8, 0), cd(0.1, 0.2), cd(0.1, -0.2), cd(-0.3, 0);

  // displaced two-mode state with diagonal squeezing
  Eigen::VectorXcd alpha(2);
  alpha << cd(0.5, -0.1), cd(0.0, 0.7);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
  z(0, 0) = 0.4;
  z(1, 1) = 0.25 * std::exp(cd(0, 1.2));
  const GaussianState st(alpha, z);

  const double direct = std::real((alpha.adjoint() * (q * alpha))(0));
  const double s0 = std::sinh(0.4), s1 = std::sinh(0.25);
  const double expect =
      direct + q(0, 0).real() * s0 * s0 + q(1, 1).real() * s1 * s1;
  CHECK(expected_quantum_injection(st, q) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("band-integrated force splits into injected and vacuum parts") {
  const int n = 41;
  std::vector<double> e(n), w(n);
  std::vector<Eigen::MatrixXcd> qs(n);
  std::vector<GaussianState> states(n);
  Eigen::MatrixXcd q0(1, 1);
  q0(0, 0) = 2.0;
  Eigen::VectorXcd a0(1);
  a0 << cd(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    e[i] = 1.0 + 0.05 * i;
    w[i] = 1.0;
    qs[i] = q0;
    states[i] = GaussianState(a0, Eigen::MatrixXcd::Zero(1, 1));
  }
  const double kappa = 0.3;
  const SpectralForce f = force_spectral_expectation(e, w, qs, states, kappa);

  const double band = e.back() - e.front();
  const double pi = 3.14159265358979323846;
  // injected: (1/2pi) * |c|^2 * <Q> integrated over a flat band
  CHECK(f.injected == doctest::Approx(band * 2.0 / (2 * pi)).epsilon(1e-12));
  // vacuum: (1/4pi) tr Q damped by e^{-kappa E}; trapezoid of the analytic
  // integral (2/kappa)(e^{-kappa a} - e^{-kappa b}) / (4 pi)
  const double analytic = 2.0 / kappa *
                          (std::exp(-kappa * e.front()) -
                           std::exp(-kappa * e.back())) / (4 * pi);
  CHECK(f.vacuum == doctest::Approx(analytic).epsilon(1e-4));
}
