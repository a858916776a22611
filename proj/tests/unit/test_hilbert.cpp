#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "gravprobe/errors.hpp"
#include "gravprobe/hilbert.hpp"
#include "gravprobe/models/harmonic.hpp"
#include "gravprobe/units.hpp"

using namespace gravprobe;

namespace {

const BasisDescriptor kBasis = BasisDescriptor::spectral(4);

StateVector e(std::size_t i) { return StateVector::basis_state(kBasis, i); }

}  // namespace

TEST_CASE("basis descriptors validate their shape") {
  CHECK(kBasis.dimension() == 4);
  CHECK(kBasis.index_of({2}) == 2);
  CHECK_THROWS_AS(kBasis.index_of({9}), IndexError);
  CHECK_THROWS_AS(BasisDescriptor::spectral({{0}, {0}}), InvalidArgument);
  CHECK_THROWS_AS(BasisDescriptor::spectral(1), InvalidArgument);
  CHECK_THROWS_AS(BasisDescriptor::grid1d(Grid1d{0, 1, 4, Axis::position}), InvalidArgument);
  CHECK_THROWS_AS(BasisDescriptor::grid1d(Grid1d{1, 0, 16, Axis::position}), InvalidArgument);
  CHECK_THROWS_AS(dirichlet_grid(1.0, 7), InvalidArgument);

  const Grid1d g = dirichlet_grid(1.0, 9);
  CHECK(g.spacing() == doctest::Approx(0.2));
  CHECK(g.point(0) == doctest::Approx(-0.8));
  CHECK(g.point(8) == doctest::Approx(0.8));
  CHECK(BasisDescriptor::grid2d({g, g}).dimension() == 81);
}

TEST_CASE("inner products") {
  const StateVector plus = superpose({{1.0, e(0)}, {1.0, e(1)}});
  CHECK(std::abs(inner(plus, plus) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(inner(e(0), e(1))) == 0.0);
  CHECK(std::abs(inner(plus, e(0)) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
  const StateVector other = StateVector::basis_state(BasisDescriptor::spectral(5), 0);
  CHECK_THROWS_AS(inner(e(0), other), BasisMismatch);
}

TEST_CASE("superpose normalizes and rejects zero norm") {
  const StateVector s = superpose({{1.0, e(0)}, {1.0, e(1)}});
  CHECK(s[0].real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s[1].real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(s[2]) == 0.0);
  CHECK(std::abs(s.norm() - 1) < 1e-12);

  const StateVector two = superpose({{2.0, e(0)}});
  CHECK(two[0] == cplx(1, 0));

  CHECK_THROWS_AS(superpose({{0.0, e(0)}, {0.0, e(1)}}), DegenerateSuperposition);
  CHECK_THROWS_AS(superpose({{1.0, e(0)}, {-1.0, e(0)}}), DegenerateSuperposition);
  CHECK_THROWS_AS(StateVector(kBasis, Eigen::VectorXcd::Zero(4)).normalized(), DegenerateSuperposition);
}

TEST_CASE("diagonal evolution") {
  const std::vector<double> energies{0.5, 1.5, 2.5, 3.5};
  const StateVector s = superpose({{1.0, e(0)}, {1.0, e(2)}});
  const StateVector same = evolve_diagonal(s, energies, 0.0);
  CHECK((same.amplitudes() - s.amplitudes()).norm() == 0.0);

  const StateVector stationary = evolve_diagonal(e(1), energies, 7.3);
  CHECK(std::abs(std::abs(stationary[1]) - 1) < 1e-15);

  // relative phase of the two components is exp(-i dE t / hbar)
  const double t = 0.77, hbar = 1.3;
  const StateVector moved = evolve_diagonal(s, energies, t, hbar);
  const cplx relative = moved[2] / moved[0];
  const cplx expected = std::polar(1.0, -(energies[2] - energies[0]) * t / hbar);
  CHECK(std::abs(relative - expected) < 1e-14);
  CHECK(std::abs(moved.norm() - 1) < 1e-14);

  CHECK_THROWS_AS(evolve_diagonal(s, {1.0, 2.0}, 1.0), BasisMismatch);
}

TEST_CASE("hermitian operators and their action") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, cplx(0, 1), cplx(0, -1), 2;
  const BasisDescriptor b2 = BasisDescriptor::spectral(2);
  const HermitianOperator h(b2, m);
  CHECK(std::abs(h(0, 1) - std::conj(h(1, 0))) == 0.0);
  CHECK_FALSE(h.is_real());

  Eigen::MatrixXcd bad = m;
  bad(0, 1) = 3;
  CHECK_THROWS_AS(HermitianOperator(b2, bad), InvalidArgument);
  CHECK_THROWS_AS(HermitianOperator(kBasis, m), BasisMismatch);

  const auto id = HermitianOperator::diagonal(kBasis, {1, 1, 1, 1});
  const StateVector s = superpose({{1.0, e(0)}, {cplx(0, 2), e(3)}});
  CHECK((apply(id, s).amplitudes() - s.amplitudes()).norm() == 0.0);

  const auto diag = HermitianOperator::diagonal(kBasis, {0.5, 1.5, 2.5, 3.5});
  CHECK((apply(diag, e(2)).amplitudes() - 2.5 * e(2).amplitudes()).norm() == 0.0);
  CHECK(expectation(diag, e(3)).real() == 3.5);
  CHECK(expectation(HermitianOperator::zero(kBasis), s) == cplx(0, 0));
}

TEST_CASE("the quartic oscillator term only reaches n = 0, 2, 4 from the ground state") {
  const auto p = models::ho_problem({1, 1.0, UnitSystem::natural(), 12});
  const StateVector ground = StateVector::basis_state(p.basis(), 0);
  const StateVector out = apply(p.h1, ground);
  for (std::size_t n = 0; n < out.dimension(); ++n) {
    const bool allowed = n == 0 || n == 2 || n == 4;
    CHECK((std::abs(out[n]) > 0) == allowed);
  }
  // X^4 |0> = 3|0> + 6 sqrt2 |2> + sqrt24 |4>, h1 = X^4/4
  CHECK(out[0].real() == doctest::Approx(0.75));
  CHECK(out[2].real() == doctest::Approx(1.5 * std::sqrt(2.0)));
  CHECK(out[4].real() == doctest::Approx(std::sqrt(24.0) / 4));
}

TEST_CASE("unit systems") {
  const UnitSystem n = UnitSystem::natural();
  CHECK(n.hbar == 1.0);
  CHECK(n.c == 1.0);
  CHECK(n.planck_mass == 1.0);
  CHECK(n.probe_mass == 1.0);
  const UnitSystem si = UnitSystem::si();
  CHECK(si.planck_mass == 2.176e-8);
  CHECK(si.hbar == 1.054e-34);
  CHECK(si.c == 2.99e8);
  CHECK(si.probe_mass == 1e-27);
  CHECK(unit_mode_from_string(to_string(UnitMode::si)) == UnitMode::si);
  CHECK_THROWS(unit_mode_from_string("imperial"));

  const Scale s = scale_for_length(si, 2e-9);
  CHECK(s.energy == doctest::Approx(si.hbar * si.hbar / (si.probe_mass * 4e-18)));
  CHECK(s.time * s.energy == doctest::Approx(si.hbar));
  const double k = si.hbar / (2e-9 * si.planck_momentum());
  CHECK(s.coupling == doctest::Approx(k * k));
}
