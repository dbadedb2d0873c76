#include "qws/leads.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qws/errors.hpp"

namespace qws {

using std::numbers::pi;

LeadBasis lead_modes(double k, double width, int resolution,
                     const LeadOptions& opt) {
  if (k <= 0 || width <= 0 || resolution < 4)
    throw SolverError("leads: invalid parameters");
  const double h = width / resolution;
  const int rows = resolution - 1;

  if (k * h > opt.max_kh)
    throw SolverError(
        "leads: k h = " + std::to_string(k * h) +
        " exceeds the validated range; increase the grid resolution");

  const int n_open_continuum = static_cast<int>(std::floor(k * width / pi));
  if (n_open_continuum < 1)
    throw SolverError("leads: no open modes (k W / pi < 1)");

  // Discrete transverse eigenvalues and the cutoff margin check.
  int n_open_discrete = 0;
  for (int m = 1; m <= rows; ++m) {
    const double mu = 2.0 / (h * h) * (1.0 - std::cos(m * pi * h / width));
    const double cutoff = std::sqrt(mu);
    if (std::abs(k - cutoff) < opt.cutoff_margin * k)
      throw SolverError("leads: k within the rejection margin of the mode-" +
                        std::to_string(m) + " cutoff");
    if (mu < k * k) ++n_open_discrete;
  }
  if (n_open_discrete != n_open_continuum)
    throw SolverError(
        "leads: lattice opens " + std::to_string(n_open_discrete) +
        " modes but floor(kW/pi) = " + std::to_string(n_open_continuum) +
        "; resolution too coarse for this k");

  int retain_evanescent = rows - n_open_discrete;
  if (opt.n_evanescent >= 0)
    retain_evanescent = std::min(retain_evanescent, opt.n_evanescent);

  LeadBasis lead;
  lead.k = k;
  lead.width = width;
  lead.h = h;
  lead.rows = rows;
  lead.n_open = n_open_discrete;
  lead.n_evanescent = retain_evanescent;

  const int retained = n_open_discrete + retain_evanescent;
  lead.x.resize(rows, retained);
  lead.phase.resize(retained);

  const double norm_plain = std::sqrt(2.0 / (rows + 1));
  const double norm_cont = std::sqrt(2.0 / width);
  for (int m = 1; m <= retained; ++m) {
    LeadMode mode;
    mode.m = m;
    const double mu = 2.0 / (h * h) * (1.0 - std::cos(m * pi * h / width));
    const double c = 1.0 - 0.5 * h * h * (k * k - mu);  // cos(kx h)
    if (mu < k * k) {
      if (c < -1.0)
        throw SolverError("leads: k beyond the lattice band edge");
      const double theta = std::acos(c);
      mode.open = true;
      mode.kx = theta / h;
      mode.flux = std::sin(theta) / h;
    } else {
      const double kappa = std::acosh(1.0 + 0.5 * h * h * (mu - k * k));
      mode.open = false;
      mode.kx = std::complex<double>(0.0, kappa / h);
      mode.flux = 0.0;
    }
    const double kc2 = k * k - (m * pi / width) * (m * pi / width);
    mode.kx_continuum = kc2 >= 0
                            ? std::complex<double>(std::sqrt(kc2), 0.0)
                            : std::complex<double>(0.0, std::sqrt(-kc2));
    mode.profile.resize(rows);
    for (int j = 1; j <= rows; ++j) {
      const double s = std::sin(m * pi * j / (rows + 1.0));
      mode.profile(j - 1) = norm_cont * s;
      lead.x(j - 1, m - 1) = norm_plain * s;
    }
    lead.phase(m - 1) = std::exp(std::complex<double>(0.0, 1.0) * mode.kx * h);
    lead.modes.push_back(std::move(mode));
  }
  return lead;
}

double discrete_group_delay(const LeadMode& mode, double h, double k,
                            double length) {
  if (!mode.open)
    throw SolverError("leads: group delay of an evanescent mode");
  return length * h * k / std::sin(mode.kx.real() * h);
}

}  // namespace qws
