#pragma once

#include <cstdint>
#include <vector>

#include "gravprobe/metrology.hpp"
#include "gravprobe/perturb.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe::models {

// Hard-walled box of side `width` in 1, 2 or 3 dimensions. The probe state is
// the equal superposition of the ground state and `quantum_numbers`.
struct InfiniteWellProbe {
  int dims = 1;
  double width = 1.0;
  std::vector<int> quantum_numbers{2};
  UnitSystem units = UnitSystem::natural();

  void validate() const;
};

// <n|H1|n> = (pi hbar / a)^4 (sum n_i^2)^2 / (m (M_P c)^2)
double isw_first_order_energy(const InfiniteWellProbe& probe, const std::vector<int>& n);

// t^2 pi^8 hbar^6 ((sum n^2)^2 - d^2)^2 / (m^2 a^8 (M_P c)^4)
// metadata: mean_energy, energy_form (256 t^2 m^2 E^4 / (hbar^2 (M_P c)^4) * ratio),
// energy_form_rel_diff
QfiResult isw_closed_forms(const InfiniteWellProbe& probe, double t);

// 1D sine basis n = 1..nmax in scaled units (length = width, energy
// hbar^2/(m a^2)), coupling (hbar/(a M_P c))^2. h1 is assembled by
// quadrature of phi_m'' phi_n''; it comes out diagonal.
PerturbationProblem isw_problem(const InfiniteWellProbe& probe, int nmax);

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return double(num) / double(den); }
  bool operator==(const Ratio&) const = default;
};

// QFI of the d-dimensional probe over the d-term sum of 1D probes with the
// same per-axis quantum numbers, reduced to lowest terms. Undefined for
// the all-ground state.
Ratio isw_weighted_ratio(const std::vector<int>& quantum_numbers);

}  // namespace gravprobe::models
