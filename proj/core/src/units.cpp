#include "gravprobe/units.hpp"

#include <cmath>

#include "gravprobe/errors.hpp"

namespace gravprobe {

std::string to_string(UnitMode mode) {
  return mode == UnitMode::natural ? "natural" : "si";
}

UnitMode unit_mode_from_string(const std::string& s) {
  if (s == "natural") return UnitMode::natural;
  if (s == "si") return UnitMode::si;
  throw InvalidArgument("unknown unit system '" + s + "'");
}

UnitSystem UnitSystem::natural() { return {}; }

UnitSystem UnitSystem::si(double probe_mass) {
  UnitSystem u;
  u.mode = UnitMode::si;
  u.hbar = kSiHbar;
  u.c = kSiLightSpeed;
  u.planck_mass = kSiPlanckMass;
  u.probe_mass = probe_mass;
  u.validate();
  return u;
}

void UnitSystem::validate() const {
  require(hbar > 0 && c > 0 && planck_mass > 0 && probe_mass > 0,
          "unit constants must be positive");
  if (mode == UnitMode::natural) {
    require(hbar == 1.0 && c == 1.0 && planck_mass == 1.0 && probe_mass == 1.0,
            "natural units fix hbar = c = M_P = m = 1");
  }
}

Scale scale_for_length(const UnitSystem& units, double length) {
  require(length > 0 && std::isfinite(length), "length scale must be positive");
  Scale s;
  s.length = length;
  s.energy = units.hbar * units.hbar / (units.probe_mass * length * length);
  s.time = units.hbar / s.energy;
  const double r = units.hbar / (length * units.planck_momentum());
  s.coupling = r * r;
  return s;
}

double mev_per_c(const UnitSystem& units) {
  if (units.mode == UnitMode::natural) return 1.0;
  return 1e6 * kElectronVolt / units.c;
}

double electron_volts(const UnitSystem& units) {
  if (units.mode == UnitMode::natural) return 1.0;
  return kElectronVolt;
}

}  // namespace gravprobe
