#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <random>

#include "gravprobe/errors.hpp"
#include "gravprobe/metrology.hpp"
#include "gravprobe/models.hpp"
#include "gravprobe/oracle.hpp"
#include "gravprobe/perturb.hpp"
#include "probecli/commands.hpp"

namespace probecli {

namespace gm = gravprobe::models;
namespace go = gravprobe::oracle;
using gravprobe::BasisDescriptor;
using gravprobe::cplx;
using gravprobe::HermitianOperator;
using gravprobe::PerturbationProblem;
using gravprobe::StateFamily;
using gravprobe::StateVector;
using gravprobe::UnitSystem;

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::VectorXcd random_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

Eigen::MatrixXcd random_hermitian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

// k random full-rank positive effects rescaled to sum to one: E_k = S^-1/2 B_k S^-1/2
gravprobe::Povm random_povm(Rng& rng, const BasisDescriptor& basis, std::size_t k) {
  const auto n = Eigen::Index(basis.dimension());
  std::vector<Eigen::MatrixXcd> b;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) g.col(c) = random_vector(rng, n);
    const Eigen::MatrixXcd a = g * g.adjoint();
    s += a;
    b.push_back(a);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  const Eigen::MatrixXcd inv_sqrt = es.operatorInverseSqrt();
  std::vector<HermitianOperator> effects;
  for (const auto& a : b) effects.emplace_back(basis, Eigen::MatrixXcd(inv_sqrt * a * inv_sqrt));
  return gravprobe::Povm(std::move(effects));
}

gravprobe::Povm random_projective(Rng& rng, const BasisDescriptor& basis) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(random_hermitian(rng, Eigen::Index(basis.dimension())));
  std::vector<HermitianOperator> effects;
  for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i) {
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    effects.emplace_back(basis, Eigen::MatrixXcd(v * v.adjoint()));
  }
  return gravprobe::Povm(std::move(effects));
}

double asymmetry(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / std::max(1.0, m.cwiseAbs().maxCoeff());
}

StateFamily perturbed_family(const gravprobe::PerturbedLevel& level) {
  return {[level](double g) { return gravprobe::perturbed_state(level, g).state; }, {}};
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void hilbert_checks(ValidationReport& rep, Rng& rng) {
  const gm::HarmonicProbe ho1{1, 1.0, UnitSystem::natural(), 30};
  const gm::HarmonicProbe ho2{2, 1.0, UnitSystem::natural(), 10};
  gm::FiniteWellProbe fsw;
  fsw.depth = std::sqrt(250.0);
  const std::vector<std::pair<std::string, Eigen::MatrixXcd>> ops{
      {"ho1d.h1", gm::ho_problem(ho1).h1.matrix()},
      {"ho2d.h1", gm::ho_problem(ho2).h1.matrix()},
      {"isw.h1", gm::isw_problem(gm::InfiniteWellProbe{}, 12).h1.matrix()},
      {"fsw.h1", gm::fsw_problem(gm::fsw_bound_states(fsw)).h1.matrix()},
      {"oracle.ho.h0", go::discretize(ho1, 128).h0.matrix()},
      {"oracle.ho.h1", go::discretize(ho1, 128).h1.matrix()},
      {"oracle.fsw.h0", go::discretize(fsw, 128).h0.matrix()},
  };
  for (const auto& [name, m] : ops)
    rep.add_measure("hilbert.hermitian." + name, 0, asymmetry(m), asymmetry(m), 0,
                    "max |h_ij - conj(h_ji)| / max |h|");

  const auto basis = BasisDescriptor::spectral(16);
  const StateVector psi(basis, random_vector(rng, 16));
  std::vector<double> energies(16);
  for (auto& e : energies) e = uniform(rng, -50, 50);
  const StateVector moved = gravprobe::evolve_diagonal(psi, energies, 7.3);
  const double drift = (moved.amplitudes().cwiseAbs() - psi.amplitudes().cwiseAbs()).cwiseAbs().maxCoeff() /
                       psi.amplitudes().cwiseAbs().maxCoeff();
  rep.add_measure("hilbert.diagonal_evolution_keeps_moduli", 0, drift, drift, 1e-14, "");

  const auto p = gm::ho_problem(ho1);
  const auto n = Eigen::Index(p.dimension());
  const StateVector a(p.basis(), random_vector(rng, n)), b(p.basis(), random_vector(rng, n));
  const cplx lhs = gravprobe::inner(gravprobe::apply(p.h1, a), b);
  const cplx rhs = gravprobe::inner(a, gravprobe::apply(p.h1, b));
  rep.add_measure("hilbert.self_adjoint", std::abs(lhs), std::abs(rhs),
                  std::abs(lhs - rhs) / std::abs(lhs), 1e-10, "<Ha|b> against <a|Hb>");
}

void perturb_checks(ValidationReport& rep) {
  const gm::HarmonicProbe ho{1, 1.0, UnitSystem::natural(), 40};
  const auto p = gm::ho_problem(ho);
  double worst = 0;
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto level = gravprobe::perturbation_ket(p, n);
    for (std::size_t m = 0; m < p.dimension(); ++m) {
      if (m == n) continue;
      const cplx lhs = level.ket(Eigen::Index(m)) *
                       (p.unperturbed_energies[n] - p.unperturbed_energies[m]);
      const cplx h = p.h1(m, n);
      worst = std::max(worst, std::abs(lhs - h) / std::max(1.0, std::abs(h)));
    }
  }
  rep.add_measure("perturb.ket_coefficients", 0, worst, worst, 1e-12,
                  "c_m (E_n - E_m) against h1[m][n], HO n <= 10");

  double trunc = 0;
  for (int n = 0; n <= 10; ++n) {
    const std::size_t dim = std::size_t(n) + 9;
    const auto a = gravprobe::perturbation_ket(gm::ho_problem({1, 1.0, UnitSystem::natural(), dim}), std::size_t(n));
    const auto b =
        gravprobe::perturbation_ket(gm::ho_problem({1, 1.0, UnitSystem::natural(), dim + 8}), std::size_t(n));
    trunc = std::max(trunc, std::abs(a.ket_norm2() - b.ket_norm2()) / b.ket_norm2());
  }
  rep.add_measure("perturb.truncation_converged", 0, trunc, trunc, 1e-12,
                  "||ket||^2 with N = n + 9 against N + 8");

  const auto h = go::fock_hamiltonian(ho);
  const std::vector<double> gammas{1e-4, 3e-5, 1e-5, 3e-6, 1e-6};
  const auto e0 = go::diagonalize_all(h, 0.0);
  for (std::size_t n = 0; n < 3; ++n) {
    std::vector<double> res;
    for (double g : gammas) {
      const auto e = go::diagonalize_all(h, g);
      res.push_back(std::abs(e.energies[n] - e0.energies[n] -
                             g * h.coupling * gravprobe::first_order_energy(p, n)));
    }
    const double slope = loglog_slope(gammas, res);
    rep.add_measure("perturb.oracle_residual_slope.n=" + std::to_string(n), 2, slope,
                    std::abs(slope - 2), 0.1, "exact Fock eigenvalues against E0 + gamma E1");
  }
}

void metrology_checks(ValidationReport& rep, Rng& rng) {
  // cfi <= qfi on a phase family with known QFI and on a perturbed level
  {
    const auto basis = BasisDescriptor::spectral(6);
    const Eigen::MatrixXcd hm = random_hermitian(rng, 6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
    const StateVector psi0 = StateVector(basis, random_vector(rng, 6)).normalized();
    StateFamily fam{[=](double g) {
                      Eigen::VectorXcd phases(6);
                      for (Eigen::Index i = 0; i < 6; ++i)
                        phases(i) = std::polar(1.0, -g * es.eigenvalues()(i));
                      const Eigen::MatrixXcd u =
                          es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
                      return StateVector(basis, u * psi0.amplitudes());
                    },
                    {}};
    const HermitianOperator hop(basis, hm);
    const double mean = gravprobe::expectation(hop, psi0).real();
    const double second = gravprobe::apply(hop, psi0).amplitudes().squaredNorm();
    const double q = 4 * (second - mean * mean);
    double worst = 0;
    for (int k = 0; k < 6; ++k) {
      const auto povm = k % 2 ? random_projective(rng, basis) : random_povm(rng, basis, 3 + k);
      const double c = gravprobe::cfi(povm, fam, 0.3, 1e-5).value;
      worst = std::max(worst, c / q);
    }
    rep.add_measure("metrology.cfi_below_qfi.phase_family", 1, worst, std::max(0.0, worst - 1), 1e-8,
                    "max CFI/QFI over random POVMs");

    const auto p = gm::ho_problem({1, 1.0, UnitSystem::natural(), 12});
    const auto level = gravprobe::perturbation_ket(p, 0);
    const auto fam2 = perturbed_family(level);
    const double q2 = gravprobe::qfi_from_fidelity(fam2, 0.01, 1e-5).value;
    double worst2 = 0;
    for (int k = 0; k < 6; ++k) {
      const auto povm = k % 2 ? random_projective(rng, p.basis()) : random_povm(rng, p.basis(), 3 + k);
      worst2 = std::max(worst2, gravprobe::cfi(povm, fam2, 0.01, 1e-5).value / q2);
    }
    rep.add_measure("metrology.cfi_below_qfi.perturbed_level", 1, worst2,
                    std::max(0.0, worst2 - 1), 1e-8, "max CFI/QFI over random POVMs");
  }

  {
    const auto p = gm::ho_problem({1, 1.0, UnitSystem::natural(), 20});
    std::vector<double> e1;
    for (std::size_t n = 0; n < 10; ++n) e1.push_back(gravprobe::first_order_energy(p, n));
    const auto probe = gravprobe::optimal_two_level_probe(e1);
    const double t = 2.5;
    const double q = gravprobe::qfi_commuting_superposition({0.5, 0.5}, {e1[probe.low], e1[probe.high]}, t).value;
    rep.add("metrology.two_level_gap_law", std::pow(t * probe.max_gap, 2), q, 1e-12,
            "(t dE1/hbar)^2 for the extreme pair");
    const double q1 = gravprobe::qfi_commuting_superposition({0.5, 0.5}, {e1[probe.low], e1[probe.high]}, 1).value;
    rep.add("metrology.time_scaling.commuting", 6.25 * q1, q, 1e-12, "QFI(t) = t^2 QFI(1)");
    const gm::InfiniteWellProbe isw{1, 1.0, {3}, UnitSystem::natural()};
    const double a = gm::isw_closed_forms(isw, 3.7).value, b = gm::isw_closed_forms(isw, 1.0).value;
    rep.add("metrology.time_scaling.isw", 3.7 * 3.7 * b, a, 1e-12, "QFI(t) = t^2 QFI(1)");
  }

  // Bures route against the ket norm on the first-order family of each model
  std::vector<std::pair<std::string, gravprobe::PerturbedLevel>> levels;
  {
    const auto ho = gm::ho_problem({1, 1.0, UnitSystem::natural(), 40});
    levels.emplace_back("ho.n=0", gravprobe::perturbation_ket(ho, 0));
    levels.emplace_back("ho.n=1", gravprobe::perturbation_ket(ho, 1));
    gm::FiniteWellProbe fp;
    fp.depth = std::sqrt(250.0);
    levels.emplace_back("fsw.ground", gravprobe::perturbation_ket(gm::fsw_problem(gm::fsw_bound_states(fp)), 0));
    levels.emplace_back("isw.ground", gravprobe::perturbation_ket(gm::isw_problem(gm::InfiniteWellProbe{}, 12), 0));
  }
  for (const auto& [name, level] : levels) {
    const auto fam = perturbed_family(level);
    const double pert = gravprobe::qfi_perturbative(level).value;
    const double bures = gravprobe::qfi_from_fidelity(fam, 1e-6).value;
    if (pert == 0.0)
      rep.add_measure("metrology.bures_vs_ket." + name, 0, bures, std::abs(bures), 1e-12,
                      "H1 diagonal: no information at first order");
    else
      rep.add("metrology.bures_vs_ket." + name, pert, bures, 1e-3, "gamma = 1e-6");

    const auto psi = fam(1e-6);
    const auto d = gravprobe::family_derivative(fam, 1e-6, 1e-5);
    const auto sld = gravprobe::sld_pure(psi, d);
    const double mean = std::abs(gravprobe::expectation(sld, psi));
    rep.add_measure("metrology.sld_zero_mean." + name, 0, mean, mean, 1e-10, "tr(rho L)");
  }

  {
    const gm::FreeGaussianProbe fp{1.0, 1.0, UnitSystem::natural()};
    const auto h = go::discretize(fp, 1024);
    const auto fam = go::oracle_state_family(h, go::EvolvedRecipe{go::free_packet(h), 1.0});
    const double grid = gravprobe::qfi_from_fidelity(fam, 1e-6).value;
    rep.add("metrology.bures_vs_closed_form.free", gm::free_gaussian_qfi(fp, 1.0).value, grid, 1e-3,
            "momentum grid, exact evolution, gamma = 1e-6");
  }

  {
    // energy measurement on the finite-well ground state: gap closes as gamma^2
    gm::FiniteWellProbe fp;
    fp.depth = std::sqrt(250.0);
    const auto p = gm::fsw_problem(gm::fsw_bound_states(fp));
    const auto level = gravprobe::perturbation_ket(p, 0);
    const auto fam = perturbed_family(level);
    const double q = gravprobe::qfi_perturbative(level).value;
    const auto povm = gravprobe::Povm::projective(p.basis());
    std::vector<double> gs{1e-6, 3e-6, 1e-5, 3e-5}, gaps;
    for (double g : gs) gaps.push_back((q - gravprobe::cfi(povm, fam, g, g / 100).value) / q);
    const double slope = loglog_slope(gs, gaps);
    rep.add_measure("metrology.energy_measurement_gap_slope", 2, slope, std::max(0.0, 2 - slope),
                    0.1, "log-log slope of (QFI - CFI_E)/QFI");
  }
}

void model_checks(ValidationReport& rep, Rng& rng, const RunConfig& config) {
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p0 = uniform(rng, -5, 5), sigma = uniform(rng, 0.05, 5), t = uniform(rng, 0.1, 3);
    const auto q = gm::free_gaussian_qfi({p0, sigma, UnitSystem::natural()}, t);
    const double alt =
        gm::free_gaussian_qfi_from_energy(UnitSystem::natural(), 0.5 * (p0 * p0 + sigma * sigma), sigma, t);
    worst = std::max(worst, std::abs(q.value - alt) / q.value);
  }
  rep.add_measure("models.free_dual_forms", 0, worst, worst, 1e-12, "100 random (p0, sigma)");

  const auto isw = gm::isw_problem(gm::InfiniteWellProbe{}, 12).h1.matrix();
  Eigen::MatrixXcd off = isw;
  off.diagonal().setZero();
  const double offr = off.cwiseAbs().maxCoeff() / isw.cwiseAbs().maxCoeff();
  rep.add_measure("models.isw_h1_diagonal", 0, offr, offr, 1e-12, "max off-diagonal / max entry");

  double form = 0;
  for (const auto& probe : {gm::InfiniteWellProbe{1, 1.0, {2}, UnitSystem::natural()},
                            gm::InfiniteWellProbe{1, 0.7, {5}, UnitSystem::natural()},
                            gm::InfiniteWellProbe{2, 1.3, {2, 3}, UnitSystem::natural()},
                            gm::InfiniteWellProbe{3, 2.0, {2, 2, 2}, UnitSystem::natural()},
                            gm::InfiniteWellProbe{1, 1e-9, {4}, UnitSystem::si()}})
    form = std::max(form, gm::isw_closed_forms(probe, 1.5).metadata.at("energy_form_rel_diff"));
  rep.add_measure("models.isw_energy_form", 0, form, form, 1e-12, "two closed forms agree");

  const auto ho = gm::ho_problem({1, 1.0, UnitSystem::natural(), 30}).h1.matrix();
  double forbidden = 0;
  for (Eigen::Index m = 0; m < ho.rows(); ++m)
    for (Eigen::Index n = 0; n < ho.cols(); ++n) {
      const auto d = std::abs(m - n);
      if (d != 0 && d != 2 && d != 4) forbidden = std::max(forbidden, std::abs(ho(m, n)));
    }
  rep.add_measure("models.ho_selection_rules", 0, forbidden, forbidden, 0,
                  "largest element with |m-n| not in {0,2,4}");

  const CommandResult table1 = cmd_table1(config);
  for (const auto& r : table1.report.records())
    rep.add_measure("models." + r.name, r.expected, r.computed, r.rel_error, r.tolerance, r.detail);

  const gm::InfiniteWellProbe isw2{2, 1.0, {1, 1}, UnitSystem::natural()};
  std::pair<int, int> best{0, 0};
  double emin = std::numeric_limits<double>::infinity();
  for (int nx = 1; nx <= 10; ++nx)
    for (int ny = 1; ny <= 10; ++ny) {
      const double e = gm::isw_first_order_energy(isw2, {nx, ny});
      if (e < emin) {
        emin = e;
        best = {nx, ny};
      }
    }
  const double miss = best == std::pair<int, int>{1, 1} ? 0.0 : 1.0;
  rep.add_measure("models.isw2d_min_e1_at_(1,1)", 0, miss, miss, 0,
                  "argmin (" + std::to_string(best.first) + "," + std::to_string(best.second) + ")");

  const gm::HarmonicProbe ho2{2, 1.0, UnitSystem::natural(), 12};
  rep.add("models.entanglement_not_a_resource",
          gm::ho2d_qfi(ho2, gm::Ho2dState::excited_x).reduced(),
          gm::ho2d_qfi(ho2, gm::Ho2dState::excited_x_plus_y).reduced(), 1e-9,
          "QFI(|1,0>) against QFI((|1,0>+|0,1>)/sqrt2)");
}

void oracle_checks(ValidationReport& rep) {
  const gm::HarmonicProbe ho{1, 1.0, UnitSystem::natural(), 40};
  const auto h = go::discretize(ho, 256);
  const auto base = go::diagonalize(h, 0.0, 4, false);
  const std::vector<double> gammas{1e-4, 3e-5, 1e-5, 3e-6, 1e-6};
  for (std::size_t n = 0; n < 2; ++n) {
    const double e1 = h.coupling * gravprobe::expectation(h.h1, base.states[n]).real();
    std::vector<double> res;
    for (double g : gammas)
      res.push_back(std::abs(go::diagonalize(h, g, 4, false).energies[n] - base.energies[n] - g * e1));
    const double slope = loglog_slope(gammas, res);
    rep.add_measure("oracle.first_order_law_slope.n=" + std::to_string(n), 2, slope,
                    std::abs(slope - 2), 0.1, "grid eigenvalues against E0 + gamma E1");

    const double d = 1e-5;
    const double de = (go::diagonalize(h, d, 4, false).energies[n] -
                       go::diagonalize(h, -d, 4, false).energies[n]) / (2 * d);
    rep.add("oracle.hellmann_feynman.n=" + std::to_string(n), e1, de, 1e-6,
            "dE/dgamma against <psi|H1|psi>");
  }

  {
    // phase gauge: scrambling the global phase per gamma leaves the fidelity route unchanged
    const auto fam = go::oracle_state_family(h, go::EigenstateRecipe{0});
    const StateFamily scrambled{[&](double g) {
                                  return fam(g).scaled(std::polar(1.0, 1e4 * g + 0.3));
                                },
                                {}};
    const double a = gravprobe::qfi_from_fidelity(fam, 1e-6).value;
    const double b = gravprobe::qfi_from_fidelity(scrambled, 1e-6).value;
    // 1 - F ~ 1e-12 here, so round-off alone moves the estimate by ~1e-10
    rep.add("oracle.global_phase_invariance", a, b, 1e-8, "fidelity QFI under per-gamma phases");
  }

  auto spectral = [&](const std::string& name, const go::ModelSpec& model) {
    const auto a = go::diagonalize_all(go::discretize(model, 256), 0.0);
    const auto b = go::diagonalize_all(go::discretize(model, 512), 0.0);
    double worst = 0;
    for (std::size_t i = 0; i < 64; ++i)
      worst = std::max(worst, std::abs(a.energies[i] - b.energies[i]) / std::abs(b.energies[i]));
    rep.add_measure("oracle.spectral_convergence." + name, 0, worst, worst, 1e-8,
                    "lowest quarter, 256 against 512 points");
  };
  spectral("ho", ho);
  spectral("isw", gm::InfiniteWellProbe{});
}

void cli_checks(ValidationReport& rep, const RunConfig& config) {
  RunConfig one = config;
  one.workers = 1;
  one.ratio.max_n = 12;
  one.ho.t_sweep = {0.1, 2.0, 8, false};
  RunConfig many = one;
  many.workers = 3;
  std::size_t diff = 0, unlabeled = 0, no_method = 0;
  for (auto cmd : {cmd_ratio_surface, cmd_ho_figure, cmd_table1}) {
    const auto r1 = cmd(one), r2 = cmd(many);
    for (std::size_t i = 0; i < r1.tables.size(); ++i) {
      const Provenance prov{r1.command, config_hash(one), "natural"};
      if (render_table(r1.tables[i], OutputFormat::csv, prov) !=
              render_table(r2.tables[i], OutputFormat::csv, prov) ||
          render_table(r1.tables[i], OutputFormat::json, prov) !=
              render_table(r2.tables[i], OutputFormat::json, prov))
        ++diff;
      bool has_qfi = false, has_method = false;
      for (const auto& c : r1.tables[i].columns) {
        if (c.unit.empty()) ++unlabeled;
        has_qfi = has_qfi || c.name.rfind("qfi", 0) == 0;
        has_method = has_method || c.name == "method";
      }
      if (has_qfi && !has_method) ++no_method;
    }
  }
  rep.add_measure("probecli.deterministic_across_workers", 0, double(diff), double(diff), 0,
                  "tables differing between 1 and 3 workers");
  rep.add_measure("probecli.units_and_method_tags", 0, double(unlabeled + no_method),
                  double(unlabeled + no_method), 0, "columns without units or QFI tables without method");

  RunConfig mutated = config;
  mutated.seed = 77;
  mutated.cmp.omega_sweep = {2.5e12, 7.25e14, 13, true};
  mutated.fsw.v0_values = {0.1, 1.0 / 3.0};
  mutated.tolerance = 1e-7;
  std::size_t broken = 0;
  for (const auto& c : {config, mutated})
    if (!(parse_config(serialize(c)) == c)) ++broken;
  rep.add_measure("probecli.config_round_trip", 0, double(broken), double(broken), 0,
                  "parse(serialize(c)) != c");
}

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
  CommandResult res{"validate", resolve_units(config, "validate"), {}, {}};
  if (!config.validation) return res;
  Rng rng(config.seed);
  auto& rep = res.report;
  hilbert_checks(rep, rng);
  perturb_checks(rep);
  metrology_checks(rep, rng);
  model_checks(rep, rng, config);
  oracle_checks(rep);
  cli_checks(rep, config);
  return res;
}

}  // namespace probecli
