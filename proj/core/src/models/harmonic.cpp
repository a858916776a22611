#include "gravprobe/models/harmonic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravprobe/errors.hpp"

namespace gravprobe::models {

namespace {

constexpr const char* kHoUnit = "(hbar m omega)^2/(M_P c)^4";

QfiResult in_ho_units(const HarmonicProbe& probe, QfiResult r) {
  const double e = probe.epsilon();
  r.unit_label = kHoUnit;
  r.unit_factor = e * e;
  return r;
}

HarmonicProbe with_truncation(const HarmonicProbe& probe, int dims, std::size_t n) {
  HarmonicProbe p = probe;
  p.dims = dims;
  p.truncation = n;
  return p;
}

std::vector<std::pair<std::size_t, cplx>> equal_pair(std::size_t a, std::size_t b) {
  const double w = 1.0 / std::sqrt(2.0);
  return {{a, w}, {b, w}};
}

}  // namespace

void HarmonicProbe::validate() const {
  units.validate();
  require(dims == 1 || dims == 2, "oscillator dimension must be 1 or 2");
  require(omega > 0 && std::isfinite(omega), "omega must be positive");
  require(truncation >= 2, "Fock truncation must be at least 2");
}

Scale HarmonicProbe::scale() const {
  return scale_for_length(units, std::sqrt(units.hbar / (units.probe_mass * omega)));
}

double HarmonicProbe::epsilon() const {
  const double pc = units.planck_momentum();
  return units.probe_mass * units.hbar * omega / (pc * pc);
}

Eigen::MatrixXd ho_position_power(std::size_t n, int k) {
  require(n >= 1 && k >= 0, "invalid Fock size or power");
  const auto big = Eigen::Index(n + std::size_t(k));
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(big, big);
  for (Eigen::Index m = 0; m + 1 < big; ++m) {
    x(m, m + 1) = std::sqrt(double(m + 1));
    x(m + 1, m) = x(m, m + 1);
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(big, big);
  for (int i = 0; i < k; ++i) p = p * x;
  return p.topLeftCorner(Eigen::Index(n), Eigen::Index(n));
}

PerturbationProblem ho_problem(const HarmonicProbe& probe) {
  probe.validate();
  const std::size_t n = probe.truncation;
  if (probe.dims == 1) {
    std::vector<double> energies(n);
    for (std::size_t k = 0; k < n; ++k) energies[k] = double(k) + 0.5;
    const Eigen::MatrixXd h1 = 0.25 * ho_position_power(n, 4);
    return PerturbationProblem(std::move(energies),
                               HermitianOperator(BasisDescriptor::spectral(n), h1),
                               UnitSystem::natural(), probe.epsilon());
  }

  std::vector<std::vector<int>> labels;
  for (std::size_t nx = 0; nx < n; ++nx)
    for (std::size_t ny = 0; ny < n; ++ny) labels.push_back({int(nx), int(ny)});
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
    const int ta = a[0] + a[1], tb = b[0] + b[1];
    return ta != tb ? ta < tb : a[0] < b[0];
  });

  const Eigen::MatrixXd x2 = ho_position_power(n, 2);
  const Eigen::MatrixXd x4 = ho_position_power(n, 4);
  const auto dim = Eigen::Index(labels.size());
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> energies(labels.size());
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int ix = labels[i][0], iy = labels[i][1];
    energies[i] = ix + iy + 1.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int jx = labels[j][0], jy = labels[j][1];
      double v = 2.0 * x2(ix, jx) * x2(iy, jy);
      if (iy == jy) v += x4(ix, jx);
      if (ix == jx) v += x4(iy, jy);
      h1(i, j) = 0.25 * v;
    }
  }
  return PerturbationProblem(std::move(energies),
                             HermitianOperator(BasisDescriptor::spectral(std::move(labels)), h1),
                             UnitSystem::natural(), probe.epsilon());
}

QfiResult ho_eigenstate_qfi(const HarmonicProbe& probe, int n) {
  probe.validate();
  require(n >= 0, "Fock index must be non-negative");
  const double d = n;
  const double poly = (((65 * d + 130) * d + 487) * d + 422) * d + 156;
  const double e = probe.epsilon();

  QfiResult r;
  r.value = e * e * poly / 32.0;
  r.method = QfiMethod::closed_form;
  const PerturbationProblem p = ho_problem(with_truncation(probe, 1, std::size_t(n) + 12));
  const double ket = qfi_perturbative(perturbation_ket(p, std::size_t(n))).value;
  r.metadata["ket_value"] = ket;
  r.metadata["ket_rel_diff"] = std::abs(ket - r.value) / r.value;
  if (r.metadata["ket_rel_diff"] > 1e-10)
    throw NumericalInconsistency("oscillator eigenstate QFI disagrees with its perturbation ket");
  return in_ho_units(probe, r);
}

QfiResult ho_superposition_qfi(const HarmonicProbe& probe, int n, double t) {
  probe.validate();
  require(n >= 0, "Fock index must be non-negative");
  const double e = probe.epsilon();
  const double wt = probe.omega * t;
  const double d = n;

  QfiResult r;
  r.value = e * e * wt * wt * 9.0 * d * d * (1 + d) * (1 + d) / 4.0;
  r.method = QfiMethod::closed_form;
  const std::vector<double> e1{0.75 * e, 0.75 * (2 * d * d + 2 * d + 1) * e};
  const double var_form = qfi_commuting_superposition({0.5, 0.5}, e1, wt).value;
  r.metadata["variance_form"] = var_form;
  r.metadata["variance_rel_diff"] = r.value != 0 ? std::abs(var_form - r.value) / r.value : 0.0;
  return in_ho_units(probe, r);
}

QfiResult ho_perturbed_superposition_qfi(const HarmonicProbe& probe, std::pair<int, int> pair,
                                         double t, double gamma) {
  probe.validate();
  require(probe.dims == 1, "perturbed superpositions are one-dimensional");
  require(pair.first >= 0 && pair.second > pair.first, "pair must be two distinct levels (a < b)");
  const std::size_t n = probe.truncation;
  if (n < std::size_t(pair.second) + 8)
    throw TruncationError("Fock truncation must exceed the highest level by 8");

  const PerturbationProblem p = ho_problem(probe);
  const PerturbedLevel la = perturbation_ket(p, std::size_t(pair.first));
  const PerturbedLevel lb = perturbation_ket(p, std::size_t(pair.second));
  const double tau = probe.omega * t;
  const double eps = probe.epsilon();
  const Eigen::MatrixXd h0 = Eigen::VectorXd::Map(p.unperturbed_energies.data(), Eigen::Index(n)).asDiagonal();
  const Eigen::MatrixXd h1 = p.h1.real_matrix();

  // the family is parametrized by g = gamma * eps, the coefficient of h1
  auto evolved = [&](double g) {
    auto unit_level = [&](PerturbedLevel l) {
      l.coupling = 1.0;
      return perturbed_state(l, g).state;
    };
    const StateVector psi0 = superpose({{1.0, unit_level(la)}, {1.0, unit_level(lb)}});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0 + g * h1);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
    Eigen::VectorXcd c = v.adjoint() * psi0.amplitudes();
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      const double phase = std::fmod(es.eigenvalues()(k) * tau, 2.0 * std::numbers::pi);
      c(k) *= std::polar(1.0, -phase);
    }
    return StateVector(p.basis(), v * c);
  };

  const double g0 = gamma * eps;
  const StateVector at = evolved(g0);
  const double top = std::norm(at[n - 1]);
  if (top > 1e-10) throw TruncationError("evolved state populates the Fock cutoff");

  StateFamily family{evolved, {}};
  QfiResult r = qfi_from_fidelity(family, g0, 1e-6);
  r.value *= eps * eps;
  r.metadata["top_population"] = top;
  return in_ho_units(probe, r);
}

QfiResult ho_perturbed_superposition_linear(const HarmonicProbe& probe, std::pair<int, int> pair,
                                            double t) {
  probe.validate();
  require(probe.dims == 1, "perturbed superpositions are one-dimensional");
  require(pair.first >= 0 && pair.second > pair.first, "pair must be two distinct levels (a < b)");
  const auto n = std::max(probe.truncation, std::size_t(pair.second) + 8);
  const PerturbationProblem p = ho_problem(with_truncation(probe, 1, n));
  const auto tangent = superposition_tangent(
      p, equal_pair(std::size_t(pair.first), std::size_t(pair.second)), probe.omega * t);
  QfiResult r = qfi_pure(tangent.psi, tangent.dpsi);
  r.method = QfiMethod::perturbative_ket;
  return in_ho_units(probe, r);
}

std::string to_string(Ho2dState s) {
  switch (s) {
    case Ho2dState::ground:
      return "|0,0>";
    case Ho2dState::excited_x:
      return "|1,0>";
    case Ho2dState::ground_plus_y:
      return "(|0,0>+|0,1>)/sqrt2";
    case Ho2dState::excited_x_plus_y:
      return "(|1,0>+|0,1>)/sqrt2";
  }
  return "?";
}

namespace {

// static first-order QFI of an equal superposition (or single level) in
// a problem, after rotating each degenerate block the levels touch
QfiResult static_qfi(const PerturbationProblem& problem, const std::vector<std::size_t>& levels) {
  PerturbationProblem p = problem;
  const double tol = p.default_degeneracy_tol();
  for (std::size_t lv : levels) {
    std::vector<std::size_t> block;
    for (std::size_t m = 0; m < p.dimension(); ++m)
      if (std::abs(p.unperturbed_energies[m] - p.unperturbed_energies[lv]) <= tol) block.push_back(m);
    if (block.size() < 2) continue;
    GoodBasis gb = degenerate_good_basis(p, block);
    if (!gb.block_rotation.isIdentity(1e-12))
      throw UnsupportedProbe("probe level is not a good zeroth-order state");
    p = gb.problem;
  }
  if (levels.size() == 1) return qfi_perturbative(perturbation_ket(p, levels.front()));
  const double w = 1.0 / std::sqrt(double(levels.size()));
  std::vector<std::pair<std::size_t, cplx>> weights;
  for (auto lv : levels) weights.emplace_back(lv, w);
  const auto tangent = superposition_tangent(p, weights, 0.0);
  QfiResult r = qfi_pure(tangent.psi, tangent.dpsi);
  r.method = QfiMethod::perturbative_ket;
  return r;
}

}  // namespace

QfiResult ho2d_qfi(const HarmonicProbe& probe, Ho2dState state) {
  probe.validate();
  if (probe.dims != 2) throw UnsupportedProbe("two-dimensional states need a 2D oscillator");
  if (probe.truncation < 9) throw TruncationError("2D table states need at least 9 levels per axis");
  const PerturbationProblem p = ho_problem(with_truncation(probe, 2, std::min<std::size_t>(probe.truncation, 12)));
  const auto& b = p.basis();
  std::vector<std::size_t> levels;
  switch (state) {
    case Ho2dState::ground:
      levels = {b.index_of({0, 0})};
      break;
    case Ho2dState::excited_x:
      levels = {b.index_of({1, 0})};
      break;
    case Ho2dState::ground_plus_y:
      levels = {b.index_of({0, 0}), b.index_of({0, 1})};
      break;
    case Ho2dState::excited_x_plus_y:
      levels = {b.index_of({0, 1}), b.index_of({1, 0})};
      break;
    default:
      throw UnsupportedProbe("unknown 2D state");
  }
  return in_ho_units(probe, static_qfi(p, levels));
}

std::pair<QfiResult, QfiResult> ho2d_axis_qfis(const HarmonicProbe& probe, Ho2dState state) {
  probe.validate();
  const PerturbationProblem p = ho_problem(with_truncation(probe, 1, 12));
  auto eig = [&](std::size_t n) { return in_ho_units(probe, static_qfi(p, {n})); };
  auto sup = [&]() { return in_ho_units(probe, static_qfi(p, {0, 1})); };
  switch (state) {
    case Ho2dState::ground:
      return {eig(0), eig(0)};
    case Ho2dState::excited_x:
      return {eig(1), eig(0)};
    case Ho2dState::ground_plus_y:
      return {eig(0), sup()};
    case Ho2dState::excited_x_plus_y:
      return {sup(), sup()};
  }
  throw UnsupportedProbe("unknown 2D state");
}

double ho2d_weighted_ratio(const HarmonicProbe& probe, Ho2dState state) {
  HarmonicProbe p2 = probe;
  p2.dims = 2;
  p2.truncation = std::max<std::size_t>(probe.truncation, 9);
  const auto [ax, ay] = ho2d_axis_qfis(p2, state);
  return ho2d_qfi(p2, state).value / (ax.value + ay.value);
}

}  // namespace gravprobe::models
