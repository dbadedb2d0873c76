#include <doctest.h>

#include <cmath>

#include "qws/errors.hpp"
#include "qws/leads.hpp"

using namespace qws;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("lead basis at the reference frequency") {
  const double k = 20.5 * kPi;
  const LeadBasis lead = lead_modes(k, 1.0, 100);

  CHECK(lead.n_open == 20);
  CHECK(lead.rows == 99);
  CHECK(lead.n_open + lead.n_evanescent == 99);  // every lattice mode retained

  // open modes first, ascending transverse index
  for (int m = 0; m < lead.n_open; ++m) {
    CHECK(lead.modes[m].open);
    CHECK(lead.modes[m].m == m + 1);
    CHECK(lead.modes[m].flux > 0.0);
  }
  for (size_t m = lead.n_open; m < lead.modes.size(); ++m) {
    CHECK(!lead.modes[m].open);
    CHECK(lead.modes[m].flux == 0.0);
    CHECK(std::abs(lead.phase(m)) < 1.0);  // decaying
  }

  // lattice dispersion holds for every open mode
  const double h = lead.h;
  for (int m = 0; m < lead.n_open; ++m) {
    const double mu = 2.0 / (h * h) * (1.0 - std::cos((m + 1) * kPi * h));
    const double lhs = std::cos(lead.modes[m].kx.real() * h);
    const double rhs = 1.0 - h * h * (k * k - mu) / 2.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(lead.modes[m].flux ==
          doctest::Approx(std::sin(lead.modes[m].kx.real() * h) / h));
  }

  // plain transverse eigenvector matrix is orthonormal
  const Eigen::MatrixXd gram = lead.x.transpose() * lead.x;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
            .norm() < 1e-12);
}

TEST_CASE("group delay formula and its domain") {
  const double k = 5.5 * kPi;
  const LeadBasis lead = lead_modes(k, 1.0, 60);
  const double L = 0.5;
  for (int m = 0; m < lead.n_open; ++m) {
    const double tau = discrete_group_delay(lead.modes[m], lead.h, k, L);
    CHECK(tau > 0.0);
    // delay grows toward cutoff
    if (m > 0)
      CHECK(tau > discrete_group_delay(lead.modes[m - 1], lead.h, k, L));
  }
  CHECK_THROWS_AS(
      discrete_group_delay(lead.modes[lead.n_open], lead.h, k, L),
      SolverError);
}

TEST_CASE("lead validation guards") {
  SUBCASE("no open modes") {
    CHECK_THROWS_AS(lead_modes(0.5 * kPi, 1.0, 100), SolverError);
  }
  SUBCASE("too close to a mode opening") {
    const double h = 0.01;
    const double mu5 = 2.0 / (h * h) * (1.0 - std::cos(5.0 * kPi * h));
    CHECK_THROWS_AS(lead_modes(std::sqrt(mu5) * 1.0002, 1.0, 100),
                    SolverError);
  }
  SUBCASE("kh validity bound") {
    CHECK_THROWS_AS(lead_modes(20.5 * kPi, 1.0, 30), SolverError);
  }
  SUBCASE("coarse lattice misses the continuum mode count") {
    // with the kh guard relaxed, 30 points per width at k = 20.5 pi opens
    // all 29 lattice modes while the continuum keeps only 20
    LeadOptions opt;
    opt.max_kh = 3.0;
    CHECK_THROWS_AS(lead_modes(20.5 * kPi, 1.0, 30, opt), SolverError);
  }
}
