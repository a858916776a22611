#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gravprobe/errors.hpp"
#include "gravprobe/metrology.hpp"
#include "gravprobe/models.hpp"
#include "gravprobe/oracle.hpp"
#include "oracles.hpp"

using namespace gravprobe;
using namespace gravprobe::oracle;
using testing_oracles::rel;

namespace {

constexpr double pi = std::numbers::pi;
const UnitSystem kNat = UnitSystem::natural();

models::FiniteWellProbe deep_well() {
  models::FiniteWellProbe p;
  p.depth = std::sqrt(250.0);
  return p;
}

}  // namespace

TEST_CASE("unperturbed grid spectra") {
  const auto isw = diagonalize(discretize(models::InfiniteWellProbe{}, 512), 0.0, 10);
  for (int n = 1; n <= 10; ++n) CHECK(rel(isw.energies[std::size_t(n - 1)], 0.5 * n * n * pi * pi) < 1e-8);

  const auto ho = diagonalize(discretize(models::HarmonicProbe{1, 1.0, kNat, 40}, 256), 0.0, 11);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(ho.energies[std::size_t(n)] - (n + 0.5)) < 1e-8 * (n + 0.5));

  // ascending, orthonormal
  for (std::size_t i = 1; i < ho.energies.size(); ++i) CHECK(ho.energies[i] > ho.energies[i - 1]);
  for (std::size_t i = 0; i < ho.states.size(); ++i)
    for (std::size_t j = 0; j < ho.states.size(); ++j)
      CHECK(std::abs(inner(ho.states[i], ho.states[j]) - cplx(i == j ? 1 : 0, 0)) < 1e-9);

  const auto fock = diagonalize(fock_hamiltonian({1, 1.0, kNat, 40}), 0.0, 10, false);
  for (int n = 0; n < 10; ++n) CHECK(fock.energies[std::size_t(n)] == n + 0.5);
}

TEST_CASE("finite well grid energies against the transcendental roots") {
  const auto p = deep_well();
  const auto s = models::fsw_bound_states(p);
  const auto h = discretize(p, 2048);
  const auto grid = diagonalize(h, 0.0, s.count());
  for (std::size_t n = 0; n < s.count(); ++n) CHECK(rel(grid.energies[n], s.levels[n].energy) < 1e-6);
  // coarse grids fail the halving check
  CHECK_THROWS_AS(diagonalize(discretize(p, 128), 0.0, s.count()), GridResolutionError);
}

TEST_CASE("first-order shifts of the oscillator grid") {
  const auto h = discretize(models::HarmonicProbe{1, 1.0, kNat, 40}, 256);
  const double gamma = 1e-6;
  const auto a = diagonalize(h, 0.0, 4, false), b = diagonalize(h, gamma, 4, false);
  for (int n = 0; n < 4; ++n) {
    const double e1 = 0.75 * (1 + 2 * n + 2 * n * n);
    // second order from the ladder elements: sum_m |h_mn|^2 / (n - m)
    double e2 = 0;
    for (int m = std::max(0, n - 4); m <= n + 4; ++m)
      if (m != n) e2 += std::pow(testing_oracles::fock_x4(m, n) / 4, 2) / double(n - m);
    const double shift = b.energies[std::size_t(n)] - a.energies[std::size_t(n)];
    CHECK(std::abs(shift - gamma * e1) <= 2 * gamma * gamma * std::abs(e2));
    CHECK(std::abs(shift - gamma * e1 - gamma * gamma * e2) < 1e-11);
  }
}

TEST_CASE("exact evolution") {
  const auto h = discretize(models::HarmonicProbe{1, 1.0, kNat, 40}, 256);
  const auto sp = diagonalize(h, 0.0, 4, false);
  const auto psi = superpose({{1.0, sp.states[0]}, {1.0, sp.states[2]}});
  CHECK((evolve_exact(h, 0.0, psi, 0.0).amplitudes() - psi.amplitudes()).norm() < 1e-12);
  const auto moved = evolve_exact(h, 0.0, sp.states[1], 3.3);
  CHECK(std::abs(fidelity(moved, sp.states[1]) - 1) < 1e-12);
  // relative phase of a two-level superposition: exp(-i dE t)
  const auto two = evolve_exact(h, 0.0, psi, 0.9);
  const cplx r = inner(sp.states[2], two) / inner(sp.states[0], two);
  CHECK(std::abs(r - std::polar(1.0, -2.0 * 0.9)) < 1e-10);
  CHECK_THROWS_AS(evolve_exact(h, 0.0, StateVector::basis_state(BasisDescriptor::spectral(3), 0), 1.0),
                  BasisMismatch);

  // free packet on the momentum grid: |psi(p)|^2 is conserved
  const auto hf = discretize(models::FreeGaussianProbe{1.0, 0.5, kNat}, 512);
  const auto packet = free_packet(hf);
  const auto later = evolve_exact(hf, 0.0, packet, 5.0);
  CHECK((later.amplitudes().cwiseAbs() - packet.amplitudes().cwiseAbs()).norm() < 1e-13);
  CHECK_THROWS_AS(free_packet(h), UnsupportedProbe);
}

TEST_CASE("fidelity QFI from the oracle families") {
  const auto ho = discretize(models::HarmonicProbe{1, 1.0, kNat, 40}, 256);
  const auto fam = oracle_state_family(ho, EigenstateRecipe{0});
  CHECK(rel(qfi_from_fidelity(fam, 0.0, 1e-6).value, 39.0 / 8) < 1e-3);

  // the sine basis diagonalizes p^4 together with p^2: no information
  const auto isw = discretize(models::InfiniteWellProbe{}, 256);
  CHECK(std::abs(qfi_from_fidelity(oracle_state_family(isw, EigenstateRecipe{0}), 0.0, 1e-6).value) < 1e-6);

  // superposition of levels 1 and 2 against the closed form
  const auto sup = oracle_state_family(isw, EigenSuperpositionRecipe{{{0, 1.0}, {1, 1.0}}, 1.0});
  const double closed = models::isw_closed_forms({1, 1.0, {2}, kNat}, 1.0).value;
  CHECK(rel(qfi_from_fidelity(sup, 0.0, 1e-6).value, closed) < 1e-4);

  // free packet against its closed form
  const models::FreeGaussianProbe fp{1.0, 1.0, kNat};
  const auto hf = discretize(fp, 1024);
  const auto ff = oracle_state_family(hf, EvolvedRecipe{free_packet(hf), 1.0});
  CHECK(rel(qfi_from_fidelity(ff, 0.0, 1e-6).value, models::free_gaussian_qfi(fp, 1.0).value) < 1e-3);

  CHECK_THROWS_AS(oracle_state_family(ho, EigenstateRecipe{200}), InvalidArgument);
}

TEST_CASE("bound-state share of the finite-well grid sum") {
  // psi'' jumps at the wall, so the grid p^4 elements converge as 1/N; one
  // Richardson step in N recovers the bound-state ket sum
  const auto p = deep_well();
  const double v0 = p.depth;
  const double q1 = grid_first_order_qfi(discretize(p, 1024), 0, v0);
  const double q2 = grid_first_order_qfi(discretize(p, 2048), 0, v0);
  const double expected = models::fsw_ground_qfi(p).value;
  CHECK(std::abs(q2 - expected) < std::abs(q1 - expected));
  CHECK(rel(2 * q2 - q1, expected) < 1e-3);
  // the continuum adds to the full sum
  CHECK(grid_first_order_qfi(discretize(p, 1024), 0) > 2 * expected);
}

TEST_CASE("unsupported discretizations") {
  const models::HarmonicProbe ho{1, 1.0, kNat, 40};
  CHECK_THROWS_AS(discretize(ho, 300), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(ho, 64), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(ho, 8192), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(models::FreeGaussianProbe{}, 256, Boundary::hard_wall), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(models::InfiniteWellProbe{}, 256, Boundary::periodic), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(models::InfiniteWellProbe{2, 1.0, {2, 1}, kNat}, 256), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(deep_well(), 256, Boundary::periodic), UnsupportedDiscretization);
  CHECK_THROWS_AS(discretize(models::HarmonicProbe{2, 1.0, kNat, 12}, 128), UnsupportedDiscretization);
  CHECK_THROWS_AS(fock_hamiltonian({2, 1.0, kNat, 12}), UnsupportedDiscretization);
  CHECK_THROWS_AS(diagonalize(discretize(ho, 128), 0.0, 33), InvalidArgument);
}

TEST_CASE("two-dimensional oscillator grid") {
  const auto h = discretize(models::HarmonicProbe{2, 1.0, kNat, 12}, 32);
  const auto sp = diagonalize(h, 0.0, 6, false);
  const double expected[] = {1, 2, 2, 3, 3, 3};
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(sp.energies[i] - expected[i]) < 1e-6);
  const auto fam = oracle_state_family(h, EigenstateRecipe{0});
  CHECK(rel(qfi_from_fidelity(fam, 0.0, 1e-6).value, 17.0) < 1e-3);
}
