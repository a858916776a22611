#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gravprobe/hilbert.hpp"
#include "gravprobe/metrology.hpp"
#include "gravprobe/models.hpp"
#include "gravprobe/units.hpp"

namespace gravprobe::oracle {

enum class Boundary { hard_wall, periodic };

using ModelSpec = std::variant<models::FreeGaussianProbe, models::InfiniteWellProbe,
                               models::FiniteWellProbe, models::HarmonicProbe>;

// H(gamma) = h0 + gamma * coupling * h1 in scaled units (lengths in
// scale.length, energies in scale.energy). Position models live on a
// Dirichlet (sine) or periodic (Fourier) grid with kinetic and p^4 terms
// built in mode space; the free particle lives on a momentum grid where
// everything is diagonal.
struct DiscretizedHamiltonian {
  BasisDescriptor basis;
  HermitianOperator h0;
  HermitianOperator h1;
  Boundary boundary = Boundary::hard_wall;
  double coupling = 1.0;
  Scale scale;
  ModelSpec model;
  std::size_t resolution = 0;  // points per axis, 0 for Fock bases
};

// resolution: power of two in [2^7, 2^12] for 1D grids, [2^4, 2^6] per
// axis for the 2D oscillator. Default boundary: periodic (momentum grid)
// for the free particle, hard wall otherwise.
DiscretizedHamiltonian discretize(const ModelSpec& model, std::size_t resolution,
                                  std::optional<Boundary> boundary = std::nullopt);

// oscillator in its truncated Fock basis with the physical p^4
DiscretizedHamiltonian fock_hamiltonian(const models::HarmonicProbe& probe);

struct Spectrum {
  std::vector<double> energies;     // scaled units, ascending
  std::vector<StateVector> states;  // gauge fixed
  std::vector<double> convergence;  // relative change against half resolution
};

// lowest `levels` eigenpairs (levels <= dimension / 4). With
// check_convergence the grid is rebuilt at half resolution and any level
// moving by more than 1e-6 relative raises GridResolutionError.
Spectrum diagonalize(const DiscretizedHamiltonian& h, double gamma, std::size_t levels,
                     bool check_convergence = true);

// all eigenpairs, no convergence check
Spectrum diagonalize_all(const DiscretizedHamiltonian& h, double gamma);

// exp(-i H(gamma) t / hbar) psi0 with t in the probe's unit system
StateVector evolve_exact(const DiscretizedHamiltonian& h, double gamma, const StateVector& psi0,
                         double t);

// the free probe's Gaussian packet on the momentum grid
StateVector free_packet(const DiscretizedHamiltonian& h);

struct EigenstateRecipe {
  std::size_t level = 0;
};

// fixed initial state evolved under H(gamma)
struct EvolvedRecipe {
  StateVector initial;
  double t = 0.0;
};

// superposition of gamma = 0 eigenstates, evolved under H(gamma)
struct EigenSuperpositionRecipe {
  std::vector<std::pair<std::size_t, cplx>> weights;
  double t = 0.0;
};

using Recipe = std::variant<EigenstateRecipe, EvolvedRecipe, EigenSuperpositionRecipe>;

StateFamily oracle_state_family(const DiscretizedHamiltonian& h, const Recipe& recipe);

// 4 sum_m |<m|h1|n>|^2/(E_n - E_m)^2 over grid eigenstates at gamma = 0,
// restricted to E_m < max_energy when given. Multiplied by coupling^2.
double grid_first_order_qfi(const DiscretizedHamiltonian& h, std::size_t level,
                            std::optional<double> max_energy = std::nullopt);

}  // namespace gravprobe::oracle
