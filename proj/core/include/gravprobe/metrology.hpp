#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gravprobe/hilbert.hpp"
#include "gravprobe/perturb.hpp"

namespace gravprobe {

enum class QfiMethod { closed_form, perturbative_ket, fidelity_fd, probability_fd };

std::string to_string(QfiMethod method);

// `value` is the information about the dimensionless gamma in the active
// unit system. `unit_factor` is the model's natural unit (for example
// (hbar m omega)^2/(M_P c)^4), so reduced() is the number quoted in tables.
struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::closed_form;
  std::string unit_label = "1";
  double unit_factor = 1.0;
  std::map<std::string, double> metadata;
  std::vector<std::string> notes;

  double reduced() const { return value / unit_factor; }
};

// gamma -> normalized state. `derivative` is optional.
struct StateFamily {
  std::function<StateVector(double)> evaluator;
  std::function<StateVector(double)> derivative;

  StateVector operator()(double gamma) const { return evaluator(gamma); }
};

// Rotates the global phase so the largest-magnitude amplitude is real
// and positive.
StateVector gauge_fixed(const StateVector& psi);

// Central difference of a gauge-fixed family with one Richardson step.
StateVector family_derivative(const StateFamily& family, double gamma, double h);

class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> effects);
  static Povm projective(const BasisDescriptor& basis);

  const std::vector<HermitianOperator>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }

 private:
  std::vector<HermitianOperator> effects_;
};

// 4 [ <dpsi|dpsi> - |<psi|dpsi>|^2 ] for normalized psi
QfiResult qfi_pure(const StateVector& psi, const StateVector& dpsi);

// 4 ||ket||^2 times coupling^2
QfiResult qfi_perturbative(const PerturbedLevel& level);

// 4 t^2 Var_w(e1) / hbar^2 for a superposition of H0 eigenstates that H1
// leaves invariant
QfiResult qfi_commuting_superposition(const std::vector<double>& weights,
                                      const std::vector<double>& e1, double t, double hbar = 1.0);

struct TwoLevelProbe {
  std::size_t low = 0;   // index of min e1
  std::size_t high = 0;  // index of max e1
  std::vector<std::pair<std::size_t, cplx>> recipe;
  double max_gap = 0.0;
};

// Equal-weight superposition of the levels with extreme e1; ties resolve to
// the lowest index.
TwoLevelProbe optimal_two_level_probe(const std::vector<double>& e1);

// 2 (|dpsi><psi| + |psi><dpsi|), with dpsi projected orthogonal to psi
HermitianOperator sld_pure(const StateVector& psi, const StateVector& dpsi);

// Classical Fisher information of a POVM from central differences of the
// outcome probabilities. An outcome with p < 1e-14 contributes its limit
// 4 (d sqrt p)^2 when it touches zero quadratically; when it leaves zero
// linearly (one neighbour at least 3x the other and |dp| >= 1e-10) it
// raises SingularOutcomeError.
QfiResult cfi(const Povm& povm, const StateFamily& family, double gamma, double dgamma);

double fidelity(const StateVector& a, const StateVector& b);
// 1 - F computed from the component of b orthogonal to a
double infidelity(const StateVector& a, const StateVector& b);

// 8 (1 - sqrt F) / dgamma^2 from gamma to gamma + dgamma, Richardson
// combined with dgamma/2.
QfiResult qfi_from_fidelity(const StateFamily& family, double gamma, double dgamma = 1e-6);

// Grid family evaluated on a caller-chosen grid, so the decomposition can
// check convergence under grid doubling.
struct GridStateFamily {
  std::function<StateVector(double, const Grid1d&)> evaluator;
  Grid1d grid;
};

struct PositionFisherDecomposition {
  double cfi_position = 0.0;   // 4 int (d r)^2
  double phase_spread = 0.0;   // 4 int (d theta)^2 r^2
  double phase_mean = 0.0;     // 4 (int d theta r^2)^2
  double radial_overlap = 0.0; // int r d r, zero for a normalized family
  double grid_delta = 0.0;     // relative change of cfi_position under doubling

  double qfi() const { return cfi_position + phase_spread - phase_mean; }
};

PositionFisherDecomposition position_fisher_decomposition(const GridStateFamily& family,
                                                          double gamma, double dgamma = 1e-5);

}  // namespace gravprobe
