#pragma once

#include <cstddef>
#include <vector>

#include "gravprobe/metrology.hpp"
#include "gravprobe/perturb.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe::models {

// Well of depth V0 on |x| < a (half-width a), zero potential at the floor
// and V0 outside.
struct FiniteWellProbe {
  double half_width = 1.0;
  double depth = 1.0;
  UnitSystem units = UnitSystem::natural();
  // numerics: grid half-width in units of a (0 = automatic) and points
  double box_half_width = 0.0;
  std::size_t grid_points = 1024;

  void validate() const;
  double z0() const;  // a sqrt(2 m V0) / hbar
  double box() const;  // resolved box half-width, units of a
};

// One bound level in units of a (x~ = x/a, energy in hbar^2/(m a^2)).
struct FswLevel {
  int parity = 1;  // +1 even, -1 odd
  double u = 0.0;      // interior wavenumber
  double kappa = 0.0;  // exterior decay rate
  double energy = 0.0;  // E = u^2 / 2
  double amplitude = 0.0;  // normalization constant of the interior cos/sin
  double edge = 0.0;       // cos(u) or sin(u)

  double value(double x) const;
  double second_derivative(double x) const;
};

struct FswSpectrum {
  std::vector<FswLevel> levels;
  double z0 = 0.0;
  Scale scale;
  std::vector<double> energies;         // in the active unit system
  std::vector<double> approx_energies;  // (n pi hbar/2a)^2/2m (1 + hbar/(a sqrt(2 m V0)))^-2
  double approx_max_rel_error = 0.0;

  std::size_t count() const { return levels.size(); }
};

// Roots of the even/odd quantization conditions by bisection in u to 1e-12.
FswSpectrum fsw_bound_states(const FiniteWellProbe& probe);

// <p~^2 m|p~^2 n> in scaled units: interior by composite Gauss-Legendre
// (panel doubling must settle to 1e-4, else GridResolutionError), exterior
// tails exactly.
double fsw_p4_element(const FswLevel& m, const FswLevel& n);

// bound-state-only problem in scaled (dimensionless) units with coupling
// (hbar/(a M_P c))^2
PerturbationProblem fsw_problem(const FswSpectrum& spectrum);

// 4 ||psi1_0||^2 over bound states; exactly 0 when fewer than two bound
// states. The continuum is not included.
QfiResult fsw_ground_qfi(const FiniteWellProbe& probe);

// level sampled on a grid in units of a
StateVector fsw_level_state(const FswLevel& level, const Grid1d& grid);

}  // namespace gravprobe::models
