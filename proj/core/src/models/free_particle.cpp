#include "gravprobe/models/free_particle.hpp"

#include <cmath>

#include "gravprobe/errors.hpp"

namespace gravprobe::models {

void FreeGaussianProbe::validate() const {
  units.validate();
  require(std::isfinite(p0), "p0 must be finite");
  require(sigma > 0 && std::isfinite(sigma), "sigma must be positive");
}

namespace {

// 32 (t sigma^2/(hbar m))^2 (sigma/(M_P c))^4, the common prefactor of both
// forms once sigma^6 is pulled out of the polynomial
double prefactor(const UnitSystem& u, double sigma, double t) {
  const double a = t * sigma * sigma / (u.hbar * u.probe_mass);
  const double b = sigma / u.planck_momentum();
  return 32.0 * a * a * b * b * b * b;
}

}  // namespace

double free_gaussian_qfi_from_energy(const UnitSystem& units, double h0, double sigma, double t) {
  require(sigma > 0, "sigma must be positive");
  const double y = h0 * units.probe_mass / (sigma * sigma);
  return prefactor(units, sigma, t) * (16 * y * y * y + 60 * y * y + 24 * y - 17);
}

QfiResult free_gaussian_qfi(const FreeGaussianProbe& probe, double t) {
  probe.validate();
  const auto& u = probe.units;
  const double r2 = (probe.p0 / probe.sigma) * (probe.p0 / probe.sigma);
  const double poly = ((2 * r2 + 21) * r2 + 48) * r2 + 12;
  const double value = prefactor(u, probe.sigma, t) * poly;
  const double h0 = (probe.p0 * probe.p0 + probe.sigma * probe.sigma) / (2 * u.probe_mass);
  const double alt = free_gaussian_qfi_from_energy(u, h0, probe.sigma, t);

  QfiResult r;
  r.value = value;
  r.method = QfiMethod::closed_form;
  r.metadata["h0"] = h0;
  r.metadata["h0_form"] = alt;
  r.metadata["form_rel_diff"] = value != 0 ? std::abs(alt - value) / std::abs(value) : 0.0;
  return r;
}

}  // namespace gravprobe::models
