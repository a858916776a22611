#include "gravprobe/metrology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gravprobe/errors.hpp"

namespace gravprobe {

std::string to_string(QfiMethod method) {
  switch (method) {
    case QfiMethod::closed_form:
      return "closed_form";
    case QfiMethod::perturbative_ket:
      return "perturbative_ket";
    case QfiMethod::fidelity_fd:
      return "fidelity_fd";
    case QfiMethod::probability_fd:
      return "probability_fd";
  }
  return "unknown";
}

StateVector gauge_fixed(const StateVector& psi) {
  Eigen::Index big = 0;
  psi.amplitudes().cwiseAbs().maxCoeff(&big);
  const cplx a = psi.amplitudes()(big);
  if (std::abs(a) == 0.0) return psi;
  return psi.scaled(std::polar(1.0, -std::arg(a)));
}

StateVector family_derivative(const StateFamily& family, double gamma, double h) {
  require(h > 0, "finite-difference step must be positive");
  auto central = [&](double step) -> Eigen::VectorXcd {
    const auto plus = gauge_fixed(family(gamma + step));
    const auto minus = gauge_fixed(family(gamma - step));
    return (plus.amplitudes() - minus.amplitudes()) / (2.0 * step);
  };
  const Eigen::VectorXcd d1 = central(h);
  const Eigen::VectorXcd d2 = central(0.5 * h);
  const auto base = family(gamma);
  return {base.basis(), (4.0 * d2 - d1) / 3.0};
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
  require(!effects_.empty(), "a POVM needs at least one effect");
  const auto& basis = effects_.front().basis();
  const auto n = Eigen::Index(basis.dimension());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : effects_) {
    if (!(e.basis() == basis)) throw BasisMismatch("POVM effects live in different bases");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvalidArgument("POVM effect is not positive semidefinite");
    sum += e.matrix();
  }
  const double dev = (sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw InvalidArgument("POVM effects do not sum to the identity");
}

Povm Povm::projective(const BasisDescriptor& basis) {
  std::vector<HermitianOperator> effects;
  effects.reserve(basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    std::vector<double> d(basis.dimension(), 0.0);
    d[k] = 1.0;
    effects.push_back(HermitianOperator::diagonal(basis, d));
  }
  return Povm(std::move(effects));
}

namespace {

void require_normalized(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw InvalidArgument("state must be normalized");
}

}  // namespace

QfiResult qfi_pure(const StateVector& psi, const StateVector& dpsi) {
  if (!(psi.basis() == dpsi.basis())) throw BasisMismatch("state and derivative bases differ");
  require_normalized(psi);
  const cplx overlap = inner(psi, dpsi);
  // project first: avoids cancelling two large numbers
  const Eigen::VectorXcd perp = dpsi.amplitudes() - overlap * psi.amplitudes();
  QfiResult r;
  r.value = 4.0 * perp.squaredNorm();
  r.method = QfiMethod::closed_form;
  return r;
}

QfiResult qfi_perturbative(const PerturbedLevel& level) {
  QfiResult r;
  r.value = 4.0 * level.coupling * level.coupling * level.ket_norm2();
  r.method = QfiMethod::perturbative_ket;
  r.metadata["ket_norm2"] = level.ket_norm2();
  r.metadata["first_order_energy"] = level.e1 * level.coupling;
  return r;
}

QfiResult qfi_commuting_superposition(const std::vector<double>& weights,
                                      const std::vector<double>& e1, double t, double hbar) {
  if (weights.size() != e1.size()) throw InvalidArgument("weights and energies differ in length");
  require(!weights.empty(), "superposition needs at least one level");
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw InvalidDistribution("weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidDistribution("weights must sum to 1");
  double mean = 0;
  for (std::size_t i = 0; i < e1.size(); ++i) mean += weights[i] * e1[i];
  double var = 0;
  for (std::size_t i = 0; i < e1.size(); ++i) var += weights[i] * (e1[i] - mean) * (e1[i] - mean);
  QfiResult r;
  r.value = 4.0 * t * t * var / (hbar * hbar);
  r.method = QfiMethod::closed_form;
  r.metadata["variance_e1"] = var;
  return r;
}

TwoLevelProbe optimal_two_level_probe(const std::vector<double>& e1) {
  require(!e1.empty(), "need at least one level");
  TwoLevelProbe p;
  for (std::size_t i = 1; i < e1.size(); ++i) {
    if (e1[i] < e1[p.low]) p.low = i;
    if (e1[i] > e1[p.high]) p.high = i;
  }
  p.max_gap = e1[p.high] - e1[p.low];
  if (!(p.max_gap > 0)) throw NoInformationError("all first-order shifts are equal");
  const double w = 1.0 / std::sqrt(2.0);
  p.recipe = {{std::min(p.low, p.high), w}, {std::max(p.low, p.high), w}};
  return p;
}

HermitianOperator sld_pure(const StateVector& psi, const StateVector& dpsi) {
  if (!(psi.basis() == dpsi.basis())) throw BasisMismatch("state and derivative bases differ");
  require_normalized(psi);
  const Eigen::VectorXcd& a = psi.amplitudes();
  const Eigen::VectorXcd d = dpsi.amplitudes() - inner(psi, dpsi) * a;
  Eigen::MatrixXcd m = 2.0 * (d * a.adjoint() + a * d.adjoint());
  return {psi.basis(), m};
}

QfiResult cfi(const Povm& povm, const StateFamily& family, double gamma, double dgamma) {
  require(dgamma > 0, "finite-difference step must be positive");
  const auto psi = family(gamma);
  const auto plus = family(gamma + dgamma);
  const auto minus = family(gamma - dgamma);
  if (!(psi.basis() == povm.effects().front().basis()))
    throw BasisMismatch("POVM and family bases differ");

  double total = 0;
  std::size_t zero_outcomes = 0;
  for (const auto& e : povm.effects()) {
    const double p = expectation(e, psi).real();
    const double dp = (expectation(e, plus).real() - expectation(e, minus).real()) / (2 * dgamma);
    if (p < 1e-14) {
      const double pp = std::max(expectation(e, plus).real(), 0.0);
      const double pm = std::max(expectation(e, minus).real(), 0.0);
      // a smooth probability touches zero quadratically, so both neighbours
      // rise alike; one-sided growth means it leaves zero linearly
      if (std::abs(dp) >= 1e-10 && std::abs(pp - pm) > 0.5 * (pp + pm))
        throw SingularOutcomeError("outcome probability vanishes with non-zero slope");
      // quadratic zero: dp^2/p tends to 4 (d sqrt p)^2, read off the neighbours
      const double sp = std::sqrt(pp), sm = std::sqrt(pm);
      const double slope = (sp + sm) / (2 * dgamma);
      total += 4 * slope * slope;
      ++zero_outcomes;
      continue;
    }
    total += dp * dp / p;
  }
  QfiResult r;
  r.value = total;
  r.method = QfiMethod::probability_fd;
  r.metadata["zero_probability_outcomes"] = double(zero_outcomes);
  return r;
}

double infidelity(const StateVector& a, const StateVector& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatch("fidelity across different bases");
  const double na = a.norm(), nb = b.norm();
  require(na > 0 && nb > 0, "fidelity of a zero vector");
  const Eigen::VectorXcd ah = a.amplitudes() / na;
  const Eigen::VectorXcd bh = b.amplitudes() / nb;
  const Eigen::VectorXcd perp = bh - ah.dot(bh) * ah;
  return perp.squaredNorm();
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatch("fidelity across different bases");
  const double f = std::norm(inner(a, b)) / (a.amplitudes().squaredNorm() * b.amplitudes().squaredNorm());
  if (f > 1.0 + 1e-12) throw NumericalInconsistency("fidelity exceeds one");
  return std::min(f, 1.0);
}

QfiResult qfi_from_fidelity(const StateFamily& family, double gamma, double dgamma) {
  require(dgamma > 0, "fidelity step must be positive");
  const auto base = family(gamma);
  auto estimate = [&](double h) {
    const auto moved = family(gamma + h);
    const double f = fidelity(base, moved);
    const double one_minus_f = infidelity(base, moved);
    if (one_minus_f >= 1e-2) throw InvalidArgument("fidelity step too large (1 - F >= 1e-2)");
    const double one_minus_sqrt = one_minus_f / (1.0 + std::sqrt(f));
    return 8.0 * one_minus_sqrt / (h * h);
  };
  const double coarse = estimate(dgamma);
  const double fine = estimate(0.5 * dgamma);
  QfiResult r;
  r.value = 2.0 * fine - coarse;
  r.method = QfiMethod::fidelity_fd;
  r.metadata["coarse"] = coarse;
  r.metadata["fine"] = fine;
  r.metadata["dgamma"] = dgamma;
  return r;
}

namespace {

struct GridSample {
  double cfi_position = 0, phase_spread = 0, phase_mean = 0, radial_overlap = 0;
};

GridSample decompose_on(const GridStateFamily& family, const Grid1d& grid, double gamma,
                        double dgamma) {
  const auto psi = gauge_fixed(family.evaluator(gamma, grid));
  const auto plus = gauge_fixed(family.evaluator(gamma + dgamma, grid));
  const auto minus = gauge_fixed(family.evaluator(gamma - dgamma, grid));
  const auto n = Eigen::Index(psi.dimension());
  const double sqrt_dx = std::sqrt(grid.spacing());

  GridSample s;
  double mean = 0;
  double excluded = 0, total = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r = std::abs(psi.amplitudes()(j));
    const double dr = (std::abs(plus.amplitudes()(j)) - std::abs(minus.amplitudes()(j))) / (2 * dgamma);
    s.cfi_position += dr * dr;
    s.radial_overlap += r * dr;
    const double weight = std::norm(plus.amplitudes()(j) - minus.amplitudes()(j));
    total += weight;
    if (r / sqrt_dx <= 1e-10) {
      excluded += weight;
      continue;
    }
    const double dtheta =
        std::arg(plus.amplitudes()(j) * std::conj(minus.amplitudes()(j))) / (2 * dgamma);
    s.phase_spread += dtheta * dtheta * r * r;
    mean += dtheta * r * r;
  }
  if (total > 0 && excluded > 1e-8 * total)
    throw PhaseUndefinedError("state changes where its modulus vanishes");
  s.cfi_position *= 4;
  s.phase_spread *= 4;
  s.phase_mean = 4 * mean * mean;
  return s;
}

}  // namespace

PositionFisherDecomposition position_fisher_decomposition(const GridStateFamily& family,
                                                          double gamma, double dgamma) {
  require(dgamma > 0, "finite-difference step must be positive");
  const Grid1d& g = family.grid;
  require(g.axis == Axis::position, "decomposition needs a position grid");
  const GridSample coarse = decompose_on(family, g, gamma, dgamma);
  Grid1d refined = g;
  refined.points = 2 * g.points - 1;
  const GridSample fine = decompose_on(family, refined, gamma, dgamma);

  PositionFisherDecomposition d;
  d.cfi_position = fine.cfi_position;
  d.phase_spread = fine.phase_spread;
  d.phase_mean = fine.phase_mean;
  d.radial_overlap = fine.radial_overlap;
  const double ref = std::max(std::abs(fine.cfi_position), 1e-300);
  d.grid_delta = std::abs(fine.cfi_position - coarse.cfi_position) / ref;
  if (fine.cfi_position > 1e-12 && d.grid_delta > 1e-6)
    throw GridResolutionError("position Fisher information not converged under grid doubling");
  return d;
}

}  // namespace gravprobe
