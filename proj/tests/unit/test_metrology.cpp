#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gravprobe/errors.hpp"
#include "gravprobe/metrology.hpp"
#include "gravprobe/models.hpp"
#include "gravprobe/oracle.hpp"
#include "oracles.hpp"

using namespace gravprobe;
using testing_oracles::rel;

namespace {

const BasisDescriptor kTwo = BasisDescriptor::spectral(2);

// cos(theta) e0 + e^{i gamma} sin(theta) e1
StateFamily phase_family(double theta) {
  return {[theta](double g) {
            Eigen::VectorXcd v(2);
            v << std::cos(theta), std::polar(std::sin(theta), g);
            return StateVector(kTwo, v);
          },
          [theta](double g) {
            Eigen::VectorXcd v(2);
            v << 0, cplx(0, 1) * std::polar(std::sin(theta), g);
            return StateVector(kTwo, v);
          }};
}

StateFamily perturbed(const PerturbedLevel& level) {
  return {[level](double g) { return perturbed_state(level, g).state; }, {}};
}

HermitianOperator projector(const StateVector& psi) {
  return HermitianOperator(psi.basis(), Eigen::MatrixXcd(psi.amplitudes() * psi.amplitudes().adjoint()));
}

}  // namespace

TEST_CASE("pure-state QFI") {
  const auto fam = phase_family(std::numbers::pi / 4);
  for (double g : {0.0, 0.4, 2.0}) CHECK(rel(qfi_pure(fam(g), fam.derivative(g)).value, 1.0) < 1e-14);
  CHECK(qfi_pure(fam(0.3), StateVector(kTwo, Eigen::VectorXcd::Zero(2))).value == 0.0);
  const auto psi = fam(0.3);
  CHECK(std::abs(qfi_pure(psi, psi.scaled(cplx(0, 1))).value) < 1e-15);
  CHECK_THROWS_AS(qfi_pure(psi, StateVector::basis_state(BasisDescriptor::spectral(3), 0)), BasisMismatch);
  // sin^2(2 theta) for an unbalanced pair
  CHECK(rel(qfi_pure(phase_family(0.3)(0.1), phase_family(0.3).derivative(0.1)).value,
            std::pow(std::sin(0.6), 2)) < 1e-14);
}

TEST_CASE("gauge fixing and numerical derivatives") {
  const auto fam = phase_family(0.3);
  const auto fixed = gauge_fixed(fam(0.2).scaled(std::polar(1.0, 1.1)));
  CHECK(std::abs(fixed[0].imag()) < 1e-15);
  CHECK(fixed[0].real() > 0);
  const auto d = family_derivative(fam, 0.2, 1e-3);
  CHECK((d.amplitudes() - fam.derivative(0.2).amplitudes()).norm() < 1e-10);
}

TEST_CASE("perturbative QFI") {
  const auto ho = models::ho_problem({1, 1.0, UnitSystem::natural(), 30});
  CHECK(rel(qfi_perturbative(perturbation_ket(ho, 0)).value, 39.0 / 8) < 1e-13);
  CHECK(rel(qfi_perturbative(perturbation_ket(ho, 1)).value, 315.0 / 8) < 1e-13);
  const PerturbationProblem diag({0, 1, 2}, HermitianOperator::diagonal(BasisDescriptor::spectral(3), {3, 1, 2}));
  CHECK(qfi_perturbative(perturbation_ket(diag, 1)).value == 0.0);
  CHECK(qfi_perturbative(perturbation_ket(ho, 0)).method == QfiMethod::perturbative_ket);
}

TEST_CASE("commuting superpositions") {
  CHECK(qfi_commuting_superposition({1.0, 0.0}, {1.0, 5.0}, 3.0).value == 0.0);
  CHECK(rel(qfi_commuting_superposition({0.5, 0.5}, {0.0, 2.0}, 1.0).value, 4.0) < 1e-15);
  // (t dE1 / hbar)^2 with hbar != 1
  CHECK(rel(qfi_commuting_superposition({0.5, 0.5}, {1.0, 4.0}, 2.0, 0.5).value, 144.0) < 1e-14);
  // weighted variance for three levels
  const std::vector<double> w{0.2, 0.3, 0.5}, e{1, 2, 4};
  double mean = 0, sq = 0;
  for (int i = 0; i < 3; ++i) {
    mean += w[i] * e[i];
    sq += w[i] * e[i] * e[i];
  }
  CHECK(rel(qfi_commuting_superposition(w, e, 1.5).value, 4 * 2.25 * (sq - mean * mean)) < 1e-14);
  CHECK_THROWS_AS(qfi_commuting_superposition({0.5, 0.6}, {0, 1}, 1), InvalidDistribution);
  CHECK_THROWS_AS(qfi_commuting_superposition({1.5, -0.5}, {0, 1}, 1), InvalidDistribution);
}

TEST_CASE("optimal two-level probe") {
  std::vector<double> isw;
  for (int n = 1; n <= 7; ++n) isw.push_back(std::pow(n, 4));
  auto p = optimal_two_level_probe(isw);
  CHECK(p.low == 0);
  CHECK(p.high == 6);
  CHECK(p.max_gap == 2400.0);

  const auto ho = models::ho_problem({1, 1.0, UnitSystem::natural(), 20});
  std::vector<double> e1;
  for (std::size_t n = 0; n <= 5; ++n) e1.push_back(first_order_energy(ho, n));
  p = optimal_two_level_probe(e1);
  CHECK(p.low == 0);
  CHECK(p.high == 5);
  REQUIRE(p.recipe.size() == 2);
  CHECK(std::abs(std::norm(p.recipe[0].second) - 0.5) < 1e-15);

  p = optimal_two_level_probe({2, 1, 3, 1, 3});
  CHECK(p.low == 1);
  CHECK(p.high == 2);
  CHECK_THROWS_AS(optimal_two_level_probe({4, 4, 4}), NoInformationError);
}

TEST_CASE("symmetric logarithmic derivative") {
  const auto fam = phase_family(0.7);
  const auto psi = fam(0.4), d = fam.derivative(0.4);
  const auto sld = sld_pure(psi, d);
  CHECK(std::abs(expectation(sld, psi)) < 1e-15);
  const double second = apply(sld, psi).amplitudes().squaredNorm();
  CHECK(std::abs(second - qfi_pure(psi, d).value) < 1e-10);

  // two-level evolved probe (|m> + |M>)/sqrt2 with shifts e1_m, e1_M:
  // SLD = i t dE1 (|m><M| e^{i t dE} - h.c.)
  const double t = 1.7, gamma = 0.05, em = 0.5, eM = 2.5, e1m = 0.75, e1M = 18.75;
  const double Em = em + gamma * e1m, EM = eM + gamma * e1M;
  Eigen::VectorXcd v(2), dv(2);
  v << std::polar(1.0, -Em * t), std::polar(1.0, -EM * t);
  dv << cplx(0, -t * e1m) * v(0), cplx(0, -t * e1M) * v(1);
  v /= std::sqrt(2.0);
  dv /= std::sqrt(2.0);
  const auto L = sld_pure(StateVector(kTwo, v), StateVector(kTwo, dv));
  const cplx offdiag = cplx(0, t * (e1M - e1m)) * std::polar(1.0, t * (EM - Em));
  CHECK(std::abs(L(0, 1) - offdiag) < 1e-10);
  CHECK(std::abs(L(1, 0) - std::conj(offdiag)) < 1e-10);
  CHECK(std::abs(L(0, 0)) < 1e-10);
  CHECK(std::abs(L(1, 1)) < 1e-10);
}

TEST_CASE("POVM validation") {
  CHECK_THROWS_AS(Povm({}), InvalidArgument);
  CHECK_THROWS_AS(Povm({HermitianOperator::diagonal(kTwo, {1, 0})}), InvalidArgument);
  CHECK_THROWS_AS(Povm({HermitianOperator::diagonal(kTwo, {1.5, 1}), HermitianOperator::diagonal(kTwo, {-0.5, 0})}),
                  InvalidArgument);
  CHECK_THROWS_AS(Povm({HermitianOperator::diagonal(kTwo, {1, 0}),
                        HermitianOperator::diagonal(BasisDescriptor::spectral({{0}, {5}}), {0, 1})}),
                  BasisMismatch);
  CHECK(Povm::projective(BasisDescriptor::spectral(5)).size() == 5);
}

TEST_CASE("classical Fisher information") {
  const auto ho = models::ho_problem({1, 1.0, UnitSystem::natural(), 20});
  const auto level = perturbation_ket(ho, 0);
  const auto fam = perturbed(level);

  // the family's own projector and its complement saturate the QFI
  const double g0 = 0.01;
  const auto psi = fam(g0);
  const auto proj = projector(psi);
  const Eigen::MatrixXcd comp = Eigen::MatrixXcd::Identity(20, 20) - proj.matrix();
  const Povm own({proj, HermitianOperator(ho.basis(), comp)});
  const double q = qfi_pure(psi, family_derivative(fam, g0, 1e-4)).value;
  // the complement probability is 1 - |<psi0|psi>|^2 ~ q h^2/4, so h must keep
  // it well above round-off
  CHECK(rel(cfi(own, fam, g0, 3e-4).value, q) < 1e-6);

  // a parameter-independent family carries nothing
  const StateFamily still{[&](double) { return psi; }, {}};
  CHECK(cfi(Povm::projective(ho.basis()), still, 0.0, 1e-4).value == 0.0);

  // energy measurement: p(k) = gamma^2 |c_k|^2 / (1 + gamma^2 s)
  const double g = 1e-3, s = level.ket_norm2();
  const auto state = fam(g);
  for (int k = 1; k < 6; ++k) {
    const double expected = g * g * std::norm(level.ket(k)) / (1 + g * g * s);
    CHECK(std::abs(std::norm(state[std::size_t(k)]) - expected) <= 1e-12 * expected);
  }
  const auto energy = Povm::projective(ho.basis());
  const double qk = qfi_perturbative(level).value;
  double last = 1;
  for (double gg : {1e-2, 1e-3, 1e-4}) {
    const double gap = (qk - cfi(energy, fam, gg, gg / 100).value) / qk;
    CHECK(gap >= -1e-6);
    CHECK(gap < last);
    last = gap;
  }
  CHECK(last < 1e-6);

  // a kinked family whose probability leaves zero linearly
  const StateFamily kink{[](double x) {
                           Eigen::VectorXcd v(2);
                           v << 1, std::sqrt(std::max(x, 0.0));
                           return StateVector(kTwo, v / v.norm());
                         },
                         {}};
  CHECK_THROWS_AS(cfi(Povm::projective(kTwo), kink, 0.0, 1e-3), SingularOutcomeError);
}

TEST_CASE("random POVMs never beat the QFI") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  const BasisDescriptor b = BasisDescriptor::spectral(3);
  const StateFamily fam{[&](double g) {
                          Eigen::VectorXcd v(3);
                          v << std::cos(g), std::sin(g) * std::polar(0.6, 0.4 * g), std::polar(0.3, 2 * g);
                          return StateVector(b, v / v.norm());
                        },
                        {}};
  const double g0 = 0.37;
  const double q = qfi_pure(fam(g0), family_derivative(fam, g0, 1e-4)).value;
  for (int trial = 0; trial < 20; ++trial) {
    // full-rank effects G_k G_k^dagger normalized by S^{-1/2}
    const int k = 2 + trial % 4;
    std::vector<Eigen::MatrixXcd> gs;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < k; ++i) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::NullaryExpr(3, 3, [&] { return cplx(n01(rng), n01(rng)); });
      gs.push_back(m * m.adjoint());
      total += gs.back();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(total);
    const Eigen::MatrixXcd inv_sqrt =
        es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    std::vector<HermitianOperator> effects;
    for (const auto& m : gs) effects.emplace_back(b, Eigen::MatrixXcd(inv_sqrt * m * inv_sqrt));
    CHECK(cfi(Povm(effects), fam, g0, 1e-5).value <= q * (1 + 1e-8));
  }
}

TEST_CASE("fidelity") {
  const StateVector e0 = StateVector::basis_state(kTwo, 0), e1 = StateVector::basis_state(kTwo, 1);
  const StateVector plus = superpose({{1.0, e0}, {1.0, e1}});
  CHECK(fidelity(plus, plus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(e0, e1) == 0.0);
  CHECK(fidelity(plus, e0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(infidelity(plus, e0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(fidelity(e0, StateVector::basis_state(BasisDescriptor::spectral(3), 0)), BasisMismatch);
}

TEST_CASE("QFI from fidelity") {
  const auto fam = phase_family(std::numbers::pi / 4);
  CHECK(std::abs(qfi_from_fidelity(fam, 0.3, 1e-3).value - 1.0) < 1e-6);
  const StateFamily still{[&](double) { return fam(0.0); }, {}};
  CHECK(qfi_from_fidelity(still, 0.0).value == 0.0);
  CHECK_THROWS_AS(qfi_from_fidelity(fam, 0.0, 1.0), InvalidArgument);

  const auto h = oracle::fock_hamiltonian({1, 1.0, UnitSystem::natural(), 40});
  const auto ofam = oracle::oracle_state_family(h, oracle::EigenstateRecipe{0});
  CHECK(rel(qfi_from_fidelity(ofam, 0.0, 1e-6).value, 39.0 / 8) < 1e-3);
}

TEST_CASE("position Fisher decomposition") {
  const Grid1d grid{-12, 12, 1025, Axis::position};
  // real family: Gaussian of width e^gamma; QFI = CFI = 2
  const GridStateFamily real{[](double g, const Grid1d& gr) {
                               const double s = std::exp(g);
                               Eigen::VectorXcd v(Eigen::Index(gr.points));
                               for (std::size_t i = 0; i < gr.points; ++i) {
                                 const double x = gr.point(i);
                                 v(Eigen::Index(i)) = std::exp(-x * x / (4 * s * s)) / std::pow(2 * std::numbers::pi * s * s, 0.25) *
                                                      std::sqrt(gr.spacing());
                               }
                               return StateVector(BasisDescriptor::grid1d(gr), v);
                             },
                             grid};
  const auto dr = position_fisher_decomposition(real, 0.0, 1e-4);
  CHECK(rel(dr.cfi_position, 2.0) < 1e-6);
  CHECK(std::abs(dr.phase_spread) < 1e-12);
  CHECK(std::abs(dr.phase_mean) < 1e-12);
  CHECK(std::abs(dr.radial_overlap) < 1e-8);
  CHECK(rel(dr.qfi(), 2.0) < 1e-6);

  // pure phase e^{i gamma x} r(x), unit Gaussian: cfi_position 0, QFI = 4 <x^2> = 4
  const GridStateFamily phase{[&](double g, const Grid1d& gr) {
                                auto s = real.evaluator(0.0, gr);
                                Eigen::VectorXcd v = s.amplitudes();
                                for (std::size_t i = 0; i < gr.points; ++i) v(Eigen::Index(i)) *= std::polar(1.0, g * gr.point(i));
                                return StateVector(s.basis(), v);
                              },
                              grid};
  const auto dp = position_fisher_decomposition(phase, 0.2, 1e-4);
  CHECK(std::abs(dp.cfi_position) < 1e-12);
  CHECK(rel(dp.phase_spread, 4.0) < 1e-6);
  CHECK(std::abs(dp.phase_mean) < 1e-12);
  CHECK(rel(dp.qfi(), 4.0) < 1e-6);

  // amplitude appears at a node of the modulus: the phase is undefined there
  const GridStateFamily node{[](double g, const Grid1d& gr) {
                               Eigen::VectorXcd v(Eigen::Index(gr.points));
                               for (std::size_t i = 0; i < gr.points; ++i) {
                                 const double x = gr.point(i);
                                 v(Eigen::Index(i)) = cplx(x, g) * std::exp(-x * x / 2);
                               }
                               return StateVector(BasisDescriptor::grid1d(gr), v / v.norm());
                             },
                             Grid1d{-8, 8, 257, Axis::position}};
  CHECK_THROWS_AS(position_fisher_decomposition(node, 0.0, 1e-4), PhaseUndefinedError);
}
