#pragma once

#include <cstddef>
#include <utility>

#include "gravprobe/metrology.hpp"
#include "gravprobe/perturb.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe::models {

// Oscillator of frequency omega in 1 or 2 dimensions. `truncation` is the
// Fock-space size per axis.
struct HarmonicProbe {
  int dims = 1;
  double omega = 1.0;
  UnitSystem units = UnitSystem::natural();
  std::size_t truncation = 40;

  void validate() const;
  Scale scale() const;       // length sqrt(hbar/(m omega)), energy hbar omega
  double epsilon() const;    // m hbar omega / (M_P c)^2
};

// Fock-basis problem with h1 = X^4/4 (1D) or (X^2 + Y^2)^2/4 (2D),
// X = a + a^dagger. Energies n + 1/2 (1D) and nx + ny + 1 (2D), coupling
// epsilon. 2D labels are {nx, ny} ordered by nx + ny, then nx.
PerturbationProblem ho_problem(const HarmonicProbe& probe);

// dense X^k in a Fock space of size n, built in size n + k and truncated
Eigen::MatrixXd ho_position_power(std::size_t n, int k);

// eps^2 (65 n^4 + 130 n^3 + 487 n^2 + 422 n + 156) / 32
// metadata: ket_value (4 ||psi1||^2 from ho_problem) and ket_rel_diff
QfiResult ho_eigenstate_qfi(const HarmonicProbe& probe, int n);

// eps^2 (omega t)^2 9 n^2 (1 + n)^2 / 4 for (|0> + |n>)/sqrt 2
QfiResult ho_superposition_qfi(const HarmonicProbe& probe, int n, double t);

// (|psi_a^g> + |psi_b^g>)/sqrt 2 with first-order states, evolved exactly
// under H(g) in the truncated Fock space; QFI from fidelity at g = gamma eps.
QfiResult ho_perturbed_superposition_qfi(const HarmonicProbe& probe, std::pair<int, int> pair,
                                         double t, double gamma = 1e-6);

// the same quantity at gamma -> 0 from the first-order tangent; usable for
// any omega t
QfiResult ho_perturbed_superposition_linear(const HarmonicProbe& probe, std::pair<int, int> pair,
                                            double t);

enum class Ho2dState { ground, excited_x, ground_plus_y, excited_x_plus_y };

std::string to_string(Ho2dState s);

// static (t = 0) QFI of the 2D states of the oscillator table
QfiResult ho2d_qfi(const HarmonicProbe& probe, Ho2dState state);

// 1D values of the axis factors that make up each 2D state:
// ground -> (|0>, |0>), excited_x -> (|1>, |0>),
// ground_plus_y -> (|0>, (|0>+|1>)/sqrt 2), excited_x_plus_y -> both superposed
std::pair<QfiResult, QfiResult> ho2d_axis_qfis(const HarmonicProbe& probe, Ho2dState state);

// 2D QFI over the sum of its two 1D axis QFIs
double ho2d_weighted_ratio(const HarmonicProbe& probe, Ho2dState state);

}  // namespace gravprobe::models
