#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gravprobe/hilbert.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe {

// H(gamma) = diag(E0) + gamma * coupling * h1 in the problem's energy unit.
// Models put dimensional factors into `coupling` so that h1 stays O(1).
struct PerturbationProblem {
  std::vector<double> unperturbed_energies;
  HermitianOperator h1;
  UnitSystem units;
  double coupling = 1.0;

  PerturbationProblem(std::vector<double> energies, HermitianOperator h1,
                      UnitSystem units = UnitSystem::natural(), double coupling = 1.0);

  const BasisDescriptor& basis() const { return h1.basis(); }
  std::size_t dimension() const { return unperturbed_energies.size(); }
  double spectral_range() const;
  double default_degeneracy_tol() const { return 1e-9 * spectral_range(); }
};

struct PerturbedLevel {
  std::size_t index = 0;
  double e0 = 0.0;
  double e1 = 0.0;  // <n|h1|n>, multiply by coupling for the energy shift
  Eigen::VectorXcd ket;  // first-order correction, orthogonal to |n>
  std::vector<std::size_t> degenerate_partners;
  BasisDescriptor basis;
  double coupling = 1.0;

  double ket_norm2() const { return ket.squaredNorm(); }
};

double first_order_energy(const PerturbationProblem& problem, std::size_t n);

// c_m = h1[m][n] / (E0_n - E0_m) over non-degenerate m. Partners closer than
// tol in energy must have |h1[m][n]| <= 1e-10, otherwise
// DegenerateCouplingError.
PerturbedLevel perturbation_ket(const PerturbationProblem& problem, std::size_t n,
                                std::optional<double> degeneracy_tol = std::nullopt);

struct PerturbedState {
  StateVector state;
  // set when |gamma * coupling| * ||ket|| >= 0.1
  bool non_perturbative = false;
};

// normalized |n> + gamma * coupling * ket
PerturbedState perturbed_state(const PerturbedLevel& level, double gamma);

struct GoodBasis {
  PerturbationProblem problem;
  std::vector<std::size_t> indices;
  Eigen::MatrixXcd block_rotation;  // columns: new basis vectors within the block
  std::vector<double> block_eigenvalues;
};

// Diagonalizes h1 inside a degenerate block. Returns the block unchanged
// (identity rotation) when it is already diagonal.
GoodBasis degenerate_good_basis(const PerturbationProblem& problem,
                                const std::vector<std::size_t>& indices,
                                std::optional<double> degeneracy_tol = std::nullopt);

// State and gamma-derivative at gamma -> 0 of
//   exp(-i H(gamma) t) sum_b w_b (|b> + gamma c |k_b>) / norm
// to first order: d psi = sum_b w_b e^{-i E_b t} c (k_b - i t e1_b |b>).
// Phases are reduced mod 2 pi, which keeps very long times usable.
struct FirstOrderTangent {
  StateVector psi;
  StateVector dpsi;
};

FirstOrderTangent superposition_tangent(const PerturbationProblem& problem,
                                        const std::vector<std::pair<std::size_t, cplx>>& weights,
                                        double t);

}  // namespace gravprobe
