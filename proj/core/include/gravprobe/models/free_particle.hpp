#pragma once

#include "gravprobe/metrology.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe::models {

// Gaussian momentum packet centred at p0 with spread sigma.
struct FreeGaussianProbe {
  double p0 = 0.0;
  double sigma = 1.0;
  UnitSystem units = UnitSystem::natural();

  void validate() const;
};

// 32 t^2 sigma^2 / (hbar^2 m^2 (M_P c)^4) * (2 p0^6 + 21 p0^4 s^2 + 48 p0^2 s^4 + 12 s^6)
// metadata: h0 (mean kinetic energy), h0_form, form_rel_diff
QfiResult free_gaussian_qfi(const FreeGaussianProbe& probe, double t);

// same quantity written with h0 = (p0^2 + sigma^2)/(2m)
double free_gaussian_qfi_from_energy(const UnitSystem& units, double h0, double sigma, double t);

}  // namespace gravprobe::models
