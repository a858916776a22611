#include "gravprobe/perturb.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravprobe/errors.hpp"

namespace gravprobe {

PerturbationProblem::PerturbationProblem(std::vector<double> energies, HermitianOperator h1_,
                                         UnitSystem units_, double coupling_)
    : unperturbed_energies(std::move(energies)),
      h1(std::move(h1_)),
      units(units_),
      coupling(coupling_) {
  if (unperturbed_energies.size() != h1.dimension())
    throw BasisMismatch("energy list does not match perturbation dimension");
  require(std::is_sorted(unperturbed_energies.begin(), unperturbed_energies.end()),
          "unperturbed energies must be sorted ascending");
  require(std::isfinite(coupling), "coupling must be finite");
  units.validate();
}

double PerturbationProblem::spectral_range() const {
  const double r = unperturbed_energies.back() - unperturbed_energies.front();
  return r > 0 ? r : std::max(1.0, std::abs(unperturbed_energies.front()));
}

double first_order_energy(const PerturbationProblem& problem, std::size_t n) {
  if (n >= problem.dimension()) throw IndexError("level index out of range");
  return problem.h1(n, n).real();
}

PerturbedLevel perturbation_ket(const PerturbationProblem& problem, std::size_t n,
                                std::optional<double> degeneracy_tol) {
  if (n >= problem.dimension()) throw IndexError("level index out of range");
  const double tol = degeneracy_tol.value_or(problem.default_degeneracy_tol());
  const auto& e = problem.unperturbed_energies;

  PerturbedLevel level{n, e[n], first_order_energy(problem, n), {}, {}, problem.basis(),
                       problem.coupling};
  level.ket = Eigen::VectorXcd::Zero(Eigen::Index(problem.dimension()));
  for (std::size_t m = 0; m < problem.dimension(); ++m) {
    if (m == n) continue;
    const cplx h = problem.h1(m, n);
    const double gap = e[n] - e[m];
    if (std::abs(gap) <= tol) {
      if (std::abs(h) > 1e-10)
        throw DegenerateCouplingError("level " + std::to_string(n) + " couples to degenerate level " +
                                      std::to_string(m) + "; rotate with degenerate_good_basis");
      level.degenerate_partners.push_back(m);
      continue;
    }
    level.ket(Eigen::Index(m)) = h / gap;
  }
  return level;
}

PerturbedState perturbed_state(const PerturbedLevel& level, double gamma) {
  const double g = gamma * level.coupling;
  Eigen::VectorXcd v = g * level.ket;
  v(Eigen::Index(level.index)) += 1.0;
  PerturbedState out{StateVector(level.basis, v).normalized(), false};
  out.non_perturbative = std::abs(g) * std::sqrt(level.ket_norm2()) >= 0.1;
  return out;
}

GoodBasis degenerate_good_basis(const PerturbationProblem& problem,
                                const std::vector<std::size_t>& indices,
                                std::optional<double> degeneracy_tol) {
  require(indices.size() >= 2, "a degenerate block needs at least two levels");
  const double tol = degeneracy_tol.value_or(problem.default_degeneracy_tol());
  const auto& e = problem.unperturbed_energies;
  for (auto i : indices) {
    if (i >= problem.dimension()) throw IndexError("level index out of range");
    if (std::abs(e[i] - e[indices.front()]) > tol)
      throw NotDegenerateError("levels in the block are not degenerate");
  }

  const auto k = Eigen::Index(indices.size());
  Eigen::MatrixXcd block(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) block(a, b) = problem.h1(indices[a], indices[b]);

  Eigen::MatrixXcd rot = Eigen::MatrixXcd::Identity(k, k);
  std::vector<double> evals(indices.size());
  Eigen::MatrixXcd offdiag = block;
  offdiag.diagonal().setZero();
  const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
  if (offdiag.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    for (Eigen::Index a = 0; a < k; ++a) evals[a] = block(a, a).real();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    rot = es.eigenvectors();
    for (Eigen::Index a = 0; a < k; ++a) {
      evals[a] = es.eigenvalues()(a);
      Eigen::Index big;
      rot.col(a).cwiseAbs().maxCoeff(&big);
      rot.col(a) *= std::polar(1.0, -std::arg(rot(big, a)));
    }
  }

  const auto n = Eigen::Index(problem.dimension());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) u(indices[a], indices[b]) = rot(a, b);
  Eigen::MatrixXcd h1 = u.adjoint() * problem.h1.matrix() * u;

  GoodBasis out{PerturbationProblem(problem.unperturbed_energies,
                                    HermitianOperator(problem.basis(), h1), problem.units,
                                    problem.coupling),
                indices, rot, evals};
  return out;
}

FirstOrderTangent superposition_tangent(const PerturbationProblem& problem,
                                        const std::vector<std::pair<std::size_t, cplx>>& weights,
                                        double t) {
  require(!weights.empty(), "superposition needs at least one level");
  double wn = 0;
  for (const auto& [idx, w] : weights) wn += std::norm(w);
  if (!(wn > 0)) throw DegenerateSuperposition("all superposition weights vanish");
  wn = std::sqrt(wn);

  const auto dim = Eigen::Index(problem.dimension());
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd dpsi = Eigen::VectorXcd::Zero(dim);
  for (const auto& [idx, w] : weights) {
    const PerturbedLevel level = perturbation_ket(problem, idx);
    const double phase =
        std::fmod(problem.unperturbed_energies[idx] * t / problem.units.hbar, 2.0 * std::numbers::pi);
    const cplx a = (w / wn) * std::polar(1.0, -phase);
    psi(Eigen::Index(idx)) += a;
    dpsi += a * problem.coupling * level.ket;
    dpsi(Eigen::Index(idx)) +=
        a * problem.coupling * cplx(0.0, -t * level.e1 / problem.units.hbar);
  }
  return {StateVector(problem.basis(), psi), StateVector(problem.basis(), dpsi)};
}

}  // namespace gravprobe
