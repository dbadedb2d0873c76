#include "qws/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "qws/errors.hpp"

namespace qws {

using cd = std::complex<double>;

namespace {

void enumerate(int modes_left, int photons_left, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (modes_left == 1) {
    cur.push_back(photons_left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = photons_left; c >= 0; --c) {
    cur.push_back(c);
    enumerate(modes_left - 1, photons_left - c, cur, out);
    cur.pop_back();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

FockSector FockSector::build(int n_modes, int nu, int dim_cap) {
  if (n_modes < 1 || nu < 0)
    throw ToleranceError("fock: invalid sector parameters");
  // dimension C(nu + N - 1, nu), checked against the cap before enumerating
  double dim = 1.0;
  for (int i = 1; i <= nu; ++i)
    dim = dim * (n_modes - 1 + i) / i;
  if (dim > dim_cap)
    throw ToleranceError("fock: sector dimension " +
                         std::to_string(static_cast<long long>(dim)) +
                         " exceeds cap " + std::to_string(dim_cap));
  FockSector s;
  s.n_modes = n_modes;
  s.total_photons = nu;
  std::vector<int> cur;
  enumerate(n_modes, nu, cur, s.basis);
  return s;
}

int FockSector::index_of(const std::vector<int>& occ) const {
  auto it = std::lower_bound(
      basis.begin(), basis.end(), occ,
      [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
  if (it == basis.end() || *it != occ) return -1;
  return static_cast<int>(it - basis.begin());
}

std::complex<double> permanent(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw ToleranceError("fock: permanent needs a square matrix");
  if (n == 0) return 1.0;
  if (n > 28) throw ToleranceError("fock: permanent size too large");

  Eigen::VectorXcd rowsum = Eigen::VectorXcd::Zero(n);
  cd total = 0.0;
  std::uint32_t prev = 0;
  const std::uint32_t end = 1u << n;
  for (std::uint32_t g = 1; g < end; ++g) {
    const std::uint32_t gray = g ^ (g >> 1);
    const std::uint32_t diff = gray ^ prev;
    const int j = std::countr_zero(diff);
    if (gray & diff)
      rowsum += a.col(j);
    else
      rowsum -= a.col(j);
    prev = gray;
    cd prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum(i);
    const int parity = (n - std::popcount(gray)) & 1;
    total += parity ? -prod : prod;
  }
  return total;
}

Eigen::MatrixXcd sector_unitary(const Eigen::MatrixXcd& s,
                                const FockSector& sector) {
  if (s.rows() != sector.n_modes || s.cols() != sector.n_modes)
    throw ToleranceError("fock: matrix dimension does not match the sector");
  if (sector.total_photons == 1) return s;  // single-photon sector is S itself

  const int dim = sector.dimension();
  const int nu = sector.total_photons;
  Eigen::MatrixXcd u(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto& occ_in = sector.basis[col];
    std::vector<int> cols;
    cols.reserve(nu);
    for (int j = 0; j < sector.n_modes; ++j)
      cols.insert(cols.end(), occ_in[j], j);
    double fact_in = 1.0;
    for (int j = 0; j < sector.n_modes; ++j) fact_in *= factorial(occ_in[j]);

    for (int row = 0; row < dim; ++row) {
      const auto& occ_out = sector.basis[row];
      std::vector<int> rows;
      rows.reserve(nu);
      for (int i = 0; i < sector.n_modes; ++i)
        rows.insert(rows.end(), occ_out[i], i);
      double fact_out = 1.0;
      for (int i = 0; i < sector.n_modes; ++i)
        fact_out *= factorial(occ_out[i]);

      Eigen::MatrixXcd sub(nu, nu);
      for (int r = 0; r < nu; ++r)
        for (int c = 0; c < nu; ++c) sub(r, c) = s(rows[r], cols[c]);
      u(row, col) = permanent(sub) / std::sqrt(fact_in * fact_out);
    }
  }
  return u;
}

Eigen::MatrixXcd sector_qws(const Eigen::MatrixXcd& q,
                            const FockSector& sector) {
  const int n = sector.n_modes;
  if (q.rows() != n || q.cols() != n)
    throw ToleranceError("fock: matrix dimension does not match the sector");
  const int dim = sector.dimension();
  const cd half_trace = 0.5 * q.trace();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> occ;
  for (int col = 0; col < dim; ++col) {
    occ = sector.basis[col];
    cd diag = half_trace;
    for (int i = 0; i < n; ++i) diag += q(i, i) * static_cast<double>(occ[i]);
    m(col, col) += diag;
    for (int j = 0; j < n; ++j) {
      if (occ[j] == 0) continue;
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        occ[j] -= 1;
        occ[i] += 1;
        const int row = sector.index_of(occ);
        m(row, col) += q(i, j) * std::sqrt(static_cast<double>((occ[j] + 1)) *
                                           static_cast<double>(occ[i]));
        occ[i] -= 1;
        occ[j] += 1;
      }
    }
  }
  return m;
}

GeneratorResidual verify_generator_identity(const Eigen::MatrixXcd& s_minus,
                                            const Eigen::MatrixXcd& s_mid,
                                            const Eigen::MatrixXcd& s_plus,
                                            const Eigen::MatrixXcd& q,
                                            const FockSector& sector,
                                            double step) {
  if (step <= 0) throw ToleranceError("fock: step must be positive");
  const double phi_mid = std::arg(s_mid.determinant());
  auto continued = [&](const Eigen::MatrixXcd& s) {
    const double d =
        std::remainder(std::arg(s.determinant()) - phi_mid, 2 * std::numbers::pi);
    if (std::abs(d) > 0.95 * std::numbers::pi)
      throw AliasingError(
          "generator identity: determinant phase step too close to pi");
    return phi_mid + d;
  };
  const double phi_p = continued(s_plus);
  const double phi_m = continued(s_minus);

  auto phased = [&](const Eigen::MatrixXcd& s, double phi) {
    return std::exp(cd(0.0, phi / 2)) * sector_unitary(s, sector);
  };
  const Eigen::MatrixXcd u_mid = phased(s_mid, phi_mid);
  const Eigen::MatrixXcd u_p = phased(s_plus, phi_p);
  const Eigen::MatrixXcd u_m = phased(s_minus, phi_m);

  const Eigen::MatrixXcd fd =
      cd(0.0, -1.0) * (u_mid.adjoint() * ((u_p - u_m) / step));
  const Eigen::MatrixXcd target = sector_qws(q, sector);
  GeneratorResidual r;
  r.absolute = (fd - target).norm();
  r.relative = r.absolute / std::max(target.norm(), 1.0);
  return r;
}

Eigen::VectorXcd truncated_gaussian_vector(std::complex<double> beta, double p,
                                           double psi, int cutoff) {
  if (cutoff < 40)
    throw ToleranceError("fock: cutoff below the supported minimum of 40");
  if (std::abs(beta) > 2.0 + 1e-12 || p > 1.0 + 1e-12 || p < 0)
    throw ToleranceError("fock: coherent/squeeze amplitude out of range");

  const int dim = cutoff + 40;  // padding absorbs truncation of the generators
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd adag = a.adjoint();

  const cd zeta = p * std::exp(cd(0.0, psi));
  const Eigen::MatrixXcd gen_s =
      0.5 * (std::conj(zeta) * (a * a) - zeta * (adag * adag));
  const Eigen::MatrixXcd gen_d = beta * adag - std::conj(beta) * a;

  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
  state(0) = 1.0;
  state = gen_s.exp() * state;
  state = gen_d.exp() * state;

  Eigen::VectorXcd out = state.head(cutoff);
  const double captured = out.squaredNorm();
  if (captured < 1.0 - 1e-10)
    throw ToleranceError("fock: truncated state lost norm " +
                         std::to_string(1.0 - captured));
  const double mean = number_mean(out);
  const double expected = std::norm(beta) + std::sinh(p) * std::sinh(p);
  if (std::abs(mean - expected) > 1e-8)
    throw ToleranceError("fock: truncated state mean photon number off by " +
                         std::to_string(mean - expected));
  return out;
}

double number_mean(const Eigen::VectorXcd& c) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < c.size(); ++n) {
    num += n * std::norm(c(n));
    den += std::norm(c(n));
  }
  return den > 0 ? num / den : 0.0;
}

double number_variance(const Eigen::VectorXcd& c) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < c.size(); ++n) {
    num += static_cast<double>(n) * n * std::norm(c(n));
    den += std::norm(c(n));
  }
  if (den == 0) return 0.0;
  const double mean = number_mean(c);
  return num / den - mean * mean;
}

}  // namespace qws
