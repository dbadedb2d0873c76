#include <doctest.h>

#include <cmath>

#include "qws/errors.hpp"
#include "qws/vacuum.hpp"

using namespace qws;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}
}  // namespace

TEST_CASE("damped trapezoid against an analytic integral") {
  const auto e = linspace(1.0, 3.0, 801);
  std::vector<double> f(e.size(), 1.0);
  const double kappa = 0.7;
  const double exact =
      (std::exp(-kappa * 1.0) - std::exp(-kappa * 3.0)) / kappa;
  CHECK(damped_trapezoid(e, f, kappa) ==
        doctest::Approx(exact).epsilon(1e-6));
  CHECK(damped_trapezoid(e, f, 0.0) == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<double> bad = e;
  bad[5] = bad[4];
  CHECK_THROWS_AS(damped_trapezoid(bad, f, kappa), ToleranceError);
}

TEST_CASE("dos correction is the trace over 2 pi") {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(2, 2);
  q(0, 0) = 3.0;
  q(1, 1) = -1.0;
  CHECK(dos_correction(q) == doctest::Approx(1.0 / kPi));
}

TEST_CASE("empty scenario carries no vacuum force") {
  Scenario sc = make_empty_scenario(1.0, 0.5, 5.5, 40);
  sc.theta.kind = ThetaKind::TargetX;  // no target: displacement is a no-op
  const auto band = linspace(5.3 * kPi, 5.7 * kPi, 9);
  const VacuumScan scan = vacuum_force(sc, band, 0.1);

  REQUIRE(scan.e.size() == band.size());
  for (double tr : scan.tr_q) CHECK(std::abs(tr) < 1e-10);
  CHECK(std::abs(scan.value) < 1e-10);
  CHECK(std::abs(scan.extrapolated) < 1e-10);
  CHECK(scan.error_bar < 1e-10);
}

TEST_CASE("mirrored scenario feels the opposite force") {
  Scenario sc = make_disordered_scenario(11, 60, 1.0, 1.0, 10.5, 8);
  sc.theta.kind = ThetaKind::TargetX;
  // place the target off-center so the mirror actually changes the system
  for (auto& s : sc.scatterers)
    if (s.is_target) s.cx = 0.4;
  sc.validate();

  const Scenario mirrored = mirror_scenario(sc);
  mirrored.validate();
  const GwsMatrix q = gws_matrix(sc);
  const GwsMatrix qm = gws_matrix(mirrored);

  const double tr = q.q.real().trace();
  const double trm = qm.q.real().trace();
  CHECK(std::abs(tr) > 1e-6);
  CHECK(trm == doctest::Approx(-tr).epsilon(1e-8));
}

TEST_CASE("band scan consistency relations") {
  Scenario sc = make_disordered_scenario(11, 40, 1.0, 1.0, 5.5, 6);
  sc.theta.kind = ThetaKind::TargetX;
  const auto band = linspace(5.35 * kPi, 5.65 * kPi, 7);
  const double kappa = 0.05;
  const VacuumScan scan = vacuum_force(sc, band, kappa);

  // quadrature value equals the trapezoid of the stored trace samples
  std::vector<double> f(scan.tr_q.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = scan.tr_q[i] / (4 * kPi);
  CHECK(scan.value == doctest::Approx(damped_trapezoid(scan.e, f, kappa)));
  CHECK(scan.value_half_kappa ==
        doctest::Approx(damped_trapezoid(scan.e, f, kappa / 2)));
  CHECK(scan.extrapolated ==
        doctest::Approx(2 * scan.value_half_kappa - scan.value));
  CHECK(scan.integrand.front() ==
        doctest::Approx(f.front() * std::exp(-kappa * scan.e.front())));
  CHECK(scan.error_bar >= 0.0);
  // eta is continuous along the band: no jump reaches pi
  for (size_t i = 1; i < scan.eta.size(); ++i)
    CHECK(std::abs(scan.eta[i] - scan.eta[i - 1]) < kPi);
}

TEST_CASE("band grids are validated") {
  Scenario sc = make_empty_scenario(1.0, 0.5, 5.5, 40);
  CHECK_THROWS_AS(vacuum_force(sc, {17.0, 17.1}, 0.1), ToleranceError);
  CHECK_THROWS_AS(vacuum_force(sc, {17.0, 16.9, 17.1}, 0.1),
                  ToleranceError);
  CHECK_THROWS_AS(vacuum_force(sc, {-1.0, 16.9, 17.1}, 0.1), ScenarioError);
}
