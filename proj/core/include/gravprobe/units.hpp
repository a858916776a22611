#pragma once

#include <string>

namespace gravprobe {

enum class UnitMode { natural, si };

std::string to_string(UnitMode mode);
UnitMode unit_mode_from_string(const std::string& s);

// hbar, c, Planck mass and probe mass. Natural mode pins all four to 1.
struct UnitSystem {
  UnitMode mode = UnitMode::natural;
  double hbar = 1.0;
  double c = 1.0;
  double planck_mass = 1.0;
  double probe_mass = 1.0;

  static UnitSystem natural();
  static UnitSystem si(double probe_mass = 1e-27);

  double planck_momentum() const { return planck_mass * c; }
  void validate() const;
};

// SI constants used by the reference configuration
inline constexpr double kSiHbar = 1.054e-34;
inline constexpr double kSiLightSpeed = 2.99e8;
inline constexpr double kSiPlanckMass = 2.176e-8;
inline constexpr double kSiProbeMass = 1e-27;
inline constexpr double kElectronVolt = 1.602176634e-19;

// Scales that make H0 and H1 dimensionless for a chosen length unit l:
//   energy = hbar^2/(m l^2), time = hbar/energy,
//   coupling = (hbar/(l M_P c))^2 so that H1/energy = coupling * p~^4.
// A QFI computed in scaled variables is multiplied by coupling^2.
struct Scale {
  double length = 1.0;
  double energy = 1.0;
  double time = 1.0;
  double coupling = 1.0;
};

Scale scale_for_length(const UnitSystem& units, double length);

// momentum and energy conversions; identity in natural units
double mev_per_c(const UnitSystem& units);
double electron_volts(const UnitSystem& units);

}  // namespace gravprobe
