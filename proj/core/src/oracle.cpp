#include "gravprobe/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravprobe/errors.hpp"

namespace gravprobe::oracle {

namespace {

constexpr double pi = std::numbers::pi;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// orthogonal, symmetric sine transform: S_jk = sqrt(2/(N+1)) sin(j k pi/(N+1))
Eigen::MatrixXd sine_transform(std::size_t n) {
  const auto N = Eigen::Index(n);
  Eigen::MatrixXd s(N, N);
  const double f = std::sqrt(2.0 / double(n + 1));
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index k = 0; k < N; ++k) s(j, k) = f * std::sin(double((j + 1) * (k + 1)) * pi / double(n + 1));
  return s;
}

Eigen::MatrixXd from_modes(const Eigen::MatrixXd& s, const Eigen::VectorXd& d) {
  return s * d.asDiagonal() * s;
}

// mode wavenumbers of a Dirichlet box of width w
Eigen::VectorXd box_wavenumbers(std::size_t n, double w) {
  Eigen::VectorXd k(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < k.size(); ++i) k(i) = double(i + 1) * pi / w;
  return k;
}

// <phi_m| V0 theta(|x| > a) |phi_n> for the sine modes of [-L, L]
Eigen::MatrixXd step_galerkin(const Eigen::VectorXd& k, double a, double L, double v0) {
  const double w = 2 * L;
  auto I = [&](double q) {
    if (std::abs(q) < 1e-300) return 2 * a;
    return (std::sin(q * (L + a)) - std::sin(q * (L - a))) / q;
  };
  const auto n = k.size();
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index j = m; j < n; ++j) {
      const double inside = (I(k(m) - k(j)) - I(k(m) + k(j))) / w;
      const double val = v0 * ((m == j ? 1.0 : 0.0) - inside);
      v(m, j) = val;
      v(j, m) = val;
    }
  return v;
}

// periodic spectral operator sum_m k_m^p e^{i k_m (x_j - x_l)} / N, p even
Eigen::MatrixXd periodic_power(std::size_t n, double period, int p) {
  const auto N = Eigen::Index(n);
  const double h = period / double(n);
  Eigen::VectorXd kernel = Eigen::VectorXd::Zero(N);
  for (Eigen::Index d = 0; d < N; ++d) {
    double sum = 0;
    for (long m = -long(n) / 2; m < long(n) / 2; ++m) {
      const double k = 2 * pi * double(m) / period;
      sum += std::pow(k, p) * std::cos(k * double(d) * h);
    }
    kernel(d) = sum / double(n);
  }
  Eigen::MatrixXd out(N, N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index l = 0; l < N; ++l) out(j, l) = kernel(std::abs(j - l));
  return out;
}

DiscretizedHamiltonian assemble(const ModelSpec& model, std::size_t resolution, Boundary boundary,
                                BasisDescriptor basis, const Eigen::MatrixXd& h0,
                                const Eigen::MatrixXd& h1, const Scale& scale) {
  return DiscretizedHamiltonian{basis,    HermitianOperator(basis, h0), HermitianOperator(basis, h1),
                                boundary, scale.coupling,               scale,
                                model,    resolution};
}

void check_1d_resolution(std::size_t n) {
  if (!power_of_two(n) || n < 128 || n > 4096)
    throw UnsupportedDiscretization("1D resolution must be a power of two in [128, 4096]");
}

DiscretizedHamiltonian discretize_free(const models::FreeGaussianProbe& p, std::size_t n,
                                       Boundary b) {
  if (b != Boundary::periodic)
    throw UnsupportedDiscretization("free particle uses the momentum (Fourier) representation");
  p.validate();
  check_1d_resolution(n);
  // momentum unit sigma: length hbar/sigma
  const Scale sc = scale_for_length(p.units, p.units.hbar / p.sigma);
  const double c = p.p0 / p.sigma;
  const Grid1d grid{c - 12.0, c + 12.0, n, Axis::momentum};
  Eigen::VectorXd k2(static_cast<Eigen::Index>(n)), k4(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double q = grid.point(i);
    k2(Eigen::Index(i)) = 0.5 * q * q;
    k4(Eigen::Index(i)) = q * q * q * q;
  }
  return assemble(p, n, b, BasisDescriptor::grid1d(grid), Eigen::MatrixXd(k2.asDiagonal()),
                  Eigen::MatrixXd(k4.asDiagonal()), sc);
}

DiscretizedHamiltonian discretize_isw(const models::InfiniteWellProbe& p, std::size_t n,
                                      Boundary b) {
  if (b != Boundary::hard_wall) throw UnsupportedDiscretization("infinite well needs hard walls");
  p.validate();
  if (p.dims != 1) throw UnsupportedDiscretization("grid oracle covers the 1D infinite well");
  check_1d_resolution(n);
  const Scale sc = scale_for_length(p.units, p.width);
  const Eigen::MatrixXd s = sine_transform(n);
  const Eigen::VectorXd k = box_wavenumbers(n, 1.0);
  const Eigen::VectorXd k2 = 0.5 * k.array().square();
  const Eigen::VectorXd k4 = k.array().pow(4);
  return assemble(p, n, b, BasisDescriptor::grid1d(dirichlet_grid(0.0, 1.0, n)),
                  from_modes(s, k2), from_modes(s, k4), sc);
}

DiscretizedHamiltonian discretize_fsw(const models::FiniteWellProbe& p, std::size_t n,
                                      Boundary b) {
  if (b != Boundary::hard_wall)
    throw UnsupportedDiscretization("finite well uses a hard-walled box");
  p.validate();
  check_1d_resolution(n);
  const Scale sc = scale_for_length(p.units, p.half_width);
  const double L = p.box();
  const double v0 = 0.5 * p.z0() * p.z0();
  const Eigen::MatrixXd s = sine_transform(n);
  const Eigen::VectorXd k = box_wavenumbers(n, 2 * L);
  const Eigen::VectorXd k2 = 0.5 * k.array().square();
  const Eigen::VectorXd k4 = k.array().pow(4);
  Eigen::MatrixXd h0 = from_modes(s, k2) + s * step_galerkin(k, 1.0, L, v0) * s;
  return assemble(p, n, b, BasisDescriptor::grid1d(dirichlet_grid(L, n)), h0, from_modes(s, k4),
                  sc);
}

DiscretizedHamiltonian discretize_ho(const models::HarmonicProbe& p, std::size_t n, Boundary b) {
  p.validate();
  const Scale sc = p.scale();
  if (p.dims == 2) {
    if (b != Boundary::hard_wall) throw UnsupportedDiscretization("2D oscillator uses hard walls");
    if (!power_of_two(n) || n < 16 || n > 64)
      throw UnsupportedDiscretization("2D resolution must be a power of two in [16, 64] per axis");
    const double L = 7.0;
    const Grid1d g = dirichlet_grid(L, n);
    const Eigen::MatrixXd s = sine_transform(n);
    const Eigen::VectorXd k = box_wavenumbers(n, 2 * L);
    const Eigen::MatrixXd t1 = from_modes(s, 0.5 * k.array().square().matrix());
    const Eigen::MatrixXd p2 = from_modes(s, k.array().square().matrix());
    const Eigen::MatrixXd p4 = from_modes(s, k.array().pow(4).matrix());
    const auto N = Eigen::Index(n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd h0 = Eigen::kroneckerProduct(t1, id).eval() + Eigen::kroneckerProduct(id, t1).eval();
    for (Eigen::Index ix = 0; ix < N; ++ix)
      for (Eigen::Index iy = 0; iy < N; ++iy) {
        const double x = g.point(std::size_t(ix)), y = g.point(std::size_t(iy));
        h0(ix * N + iy, ix * N + iy) += 0.5 * (x * x + y * y);
      }
    Eigen::MatrixXd h1 = Eigen::kroneckerProduct(p4, id).eval() + Eigen::kroneckerProduct(id, p4).eval() +
                         2.0 * Eigen::kroneckerProduct(p2, p2).eval();
    return assemble(p, n, b, BasisDescriptor::grid2d(Grid2d{g, g}), h0, h1, sc);
  }
  check_1d_resolution(n);
  if (b == Boundary::hard_wall) {
    const double L = 14.0;
    const Grid1d g = dirichlet_grid(L, n);
    const Eigen::MatrixXd s = sine_transform(n);
    const Eigen::VectorXd k = box_wavenumbers(n, 2 * L);
    Eigen::MatrixXd h0 = from_modes(s, 0.5 * k.array().square().matrix());
    for (std::size_t j = 0; j < n; ++j) h0(Eigen::Index(j), Eigen::Index(j)) += 0.5 * g.point(j) * g.point(j);
    return assemble(p, n, b, BasisDescriptor::grid1d(g), h0, from_modes(s, k.array().pow(4).matrix()), sc);
  }
  const double L = 14.0;
  const Grid1d g{-L, L - 2 * L / double(n), n, Axis::position};
  Eigen::MatrixXd h0 = 0.5 * periodic_power(n, 2 * L, 2);
  for (std::size_t j = 0; j < n; ++j) h0(Eigen::Index(j), Eigen::Index(j)) += 0.5 * g.point(j) * g.point(j);
  return assemble(p, n, b, BasisDescriptor::grid1d(g), h0, periodic_power(n, 2 * L, 4), sc);
}

}  // namespace

DiscretizedHamiltonian discretize(const ModelSpec& model, std::size_t resolution,
                                  std::optional<Boundary> boundary) {
  return std::visit(
      [&](const auto& p) -> DiscretizedHamiltonian {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, models::FreeGaussianProbe>)
          return discretize_free(p, resolution, boundary.value_or(Boundary::periodic));
        else if constexpr (std::is_same_v<T, models::InfiniteWellProbe>)
          return discretize_isw(p, resolution, boundary.value_or(Boundary::hard_wall));
        else if constexpr (std::is_same_v<T, models::FiniteWellProbe>)
          return discretize_fsw(p, resolution, boundary.value_or(Boundary::hard_wall));
        else
          return discretize_ho(p, resolution, boundary.value_or(Boundary::hard_wall));
      },
      model);
}

DiscretizedHamiltonian fock_hamiltonian(const models::HarmonicProbe& probe) {
  probe.validate();
  if (probe.dims != 1) throw UnsupportedDiscretization("Fock oracle covers the 1D oscillator");
  const std::size_t n = probe.truncation;
  const auto big = Eigen::Index(n + 4);
  // physical p~ = i (a^dagger - a)/sqrt 2, so p~^4 = (a^dagger - a)^4 / 4
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(big, big);
  for (Eigen::Index m = 0; m + 1 < big; ++m) {
    y(m + 1, m) = std::sqrt(double(m + 1));
    y(m, m + 1) = -y(m + 1, m);
  }
  const Eigen::MatrixXd y2 = y * y;
  const Eigen::MatrixXd p4 = 0.25 * (y2 * y2).topLeftCorner(Eigen::Index(n), Eigen::Index(n));
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t k = 0; k < n; ++k) h0(Eigen::Index(k), Eigen::Index(k)) = double(k) + 0.5;
  return assemble(probe, 0, Boundary::hard_wall, BasisDescriptor::spectral(n), h0, p4,
                  probe.scale());
}

namespace {

struct Eigenpairs {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Eigenpairs solve_real(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericalInconsistency("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
}

bool is_diagonal(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd off = m;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() == 0.0;
}

// m(i, j) == m(N-1-i, N-1-j): commutes with the grid reflection
bool reflection_symmetric(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n % 2 != 0) return false;
  const double tol = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.reverse()).cwiseAbs().maxCoeff() <= tol;
}

// solve the even and odd sectors separately and merge in ascending order
Eigenpairs solve_by_parity(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows(), h = n / 2;
  const Eigen::MatrixXd a = m.topLeftCorner(h, h);
  const Eigen::MatrixXd b = m.topRightCorner(h, h).rowwise().reverse();
  const Eigenpairs even = solve_real(a + b);
  const Eigenpairs odd = solve_real(a - b);
  Eigenpairs out{Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Index ie = 0, io = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const bool take_even = io >= h || (ie < h && even.values(ie) <= odd.values(io));
    const Eigenpairs& src = take_even ? even : odd;
    const Eigen::Index i = take_even ? ie++ : io++;
    const Eigen::VectorXcd u = src.vectors.col(i);
    out.values(k) = src.values(i);
    out.vectors.col(k).head(h) = r * u;
    out.vectors.col(k).tail(h) = (take_even ? r : -r) * u.reverse();
  }
  return out;
}

Eigenpairs solve(const DiscretizedHamiltonian& h, double gamma) {
  const double g = gamma * h.coupling;
  if (h.h0.is_real() && h.h1.is_real()) {
    const Eigen::MatrixXd m = h.h0.real_matrix() + g * h.h1.real_matrix();
    if (is_diagonal(m)) {
      const Eigen::Index n = m.rows();
      std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) order[std::size_t(i)] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index x, Eigen::Index y) { return m(x, x) < m(y, y); });
      Eigenpairs out{Eigen::VectorXd(n), Eigen::MatrixXcd::Zero(n, n)};
      for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = m(order[std::size_t(k)], order[std::size_t(k)]);
        out.vectors(order[std::size_t(k)], k) = 1.0;
      }
      return out;
    }
    if (h.basis.is_grid1d() && reflection_symmetric(m)) return solve_by_parity(m);
    return solve_real(m);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.h0.matrix() + g * h.h1.matrix());
  if (es.info() != Eigen::Success) throw NumericalInconsistency("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Spectrum to_spectrum(const DiscretizedHamiltonian& h, const Eigenpairs& e, std::size_t levels) {
  Spectrum s;
  for (std::size_t i = 0; i < levels; ++i) {
    s.energies.push_back(e.values(Eigen::Index(i)));
    s.states.push_back(gauge_fixed(StateVector(h.basis, e.vectors.col(Eigen::Index(i)))));
  }
  return s;
}

std::size_t min_resolution(const DiscretizedHamiltonian& h) { return h.basis.is_grid2d() ? 16 : 128; }

}  // namespace

Spectrum diagonalize(const DiscretizedHamiltonian& h, double gamma, std::size_t levels,
                     bool check_convergence) {
  require(levels >= 1, "ask for at least one level");
  if (levels > h.basis.dimension() / 4)
    throw InvalidArgument("levels must not exceed a quarter of the basis dimension");
  Spectrum s = to_spectrum(h, solve(h, gamma), levels);
  if (!check_convergence || h.resolution == 0) return s;

  const std::size_t other = h.resolution / 2 >= min_resolution(h) ? h.resolution / 2 : h.resolution * 2;
  const DiscretizedHamiltonian h2 = discretize(h.model, other, h.boundary);
  const Eigenpairs e2 = solve(h2, gamma);
  for (std::size_t i = 0; i < levels; ++i) {
    const double a = s.energies[i], b = e2.values(Eigen::Index(i));
    const double delta = std::abs(a - b) / std::max(std::abs(a), 1e-300);
    s.convergence.push_back(delta);
    if (delta > 1e-6)
      throw GridResolutionError("level " + std::to_string(i) + " moved by " + std::to_string(delta) +
                                " under grid doubling");
  }
  return s;
}

Spectrum diagonalize_all(const DiscretizedHamiltonian& h, double gamma) {
  return to_spectrum(h, solve(h, gamma), h.basis.dimension());
}

StateVector evolve_exact(const DiscretizedHamiltonian& h, double gamma, const StateVector& psi0,
                         double t) {
  if (!(psi0.basis() == h.basis)) throw BasisMismatch("initial state is not on the oracle basis");
  const Eigenpairs e = solve(h, gamma);
  const double tau = t / h.scale.time;
  Eigen::VectorXcd c = e.vectors.adjoint() * psi0.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k)
    c(k) *= std::polar(1.0, -std::fmod(e.values(k) * tau, 2 * pi));
  return {h.basis, e.vectors * c};
}

StateVector free_packet(const DiscretizedHamiltonian& h) {
  const auto* p = std::get_if<models::FreeGaussianProbe>(&h.model);
  if (!p) throw UnsupportedProbe("free packet needs a free-particle discretization");
  const Grid1d& g = h.basis.grid();
  const double c = p->p0 / p->sigma;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.points));
  for (std::size_t i = 0; i < g.points; ++i) {
    const double d = g.point(i) - c;
    v(Eigen::Index(i)) = std::exp(-0.25 * d * d);
  }
  return StateVector(h.basis, v).normalized();
}

StateFamily oracle_state_family(const DiscretizedHamiltonian& h, const Recipe& recipe) {
  if (const auto* r = std::get_if<EigenstateRecipe>(&recipe)) {
    if (r->level >= h.basis.dimension() / 4)
      throw InvalidArgument("eigenstate level beyond the trusted quarter of the spectrum");
    const std::size_t level = r->level;
    return {[h, level](double gamma) { return to_spectrum(h, solve(h, gamma), level + 1).states[level]; },
            {}};
  }
  if (const auto* r = std::get_if<EvolvedRecipe>(&recipe)) {
    const StateVector psi0 = r->initial.normalized();
    const double t = r->t;
    return {[h, psi0, t](double gamma) { return evolve_exact(h, gamma, psi0, t); }, {}};
  }
  const auto& r = std::get<EigenSuperpositionRecipe>(recipe);
  std::size_t top = 0;
  for (const auto& [lv, w] : r.weights) top = std::max(top, lv);
  if (top >= h.basis.dimension() / 4)
    throw InvalidArgument("superposition level beyond the trusted quarter of the spectrum");
  const Spectrum s0 = to_spectrum(h, solve(h, 0.0), top + 1);
  std::vector<Term> terms;
  for (const auto& [lv, w] : r.weights) terms.push_back({w, s0.states[lv]});
  const StateVector psi0 = superpose(terms);
  const double t = r.t;
  return {[h, psi0, t](double gamma) { return evolve_exact(h, gamma, psi0, t); }, {}};
}

double grid_first_order_qfi(const DiscretizedHamiltonian& h, std::size_t level,
                            std::optional<double> max_energy) {
  const Eigenpairs e = solve(h, 0.0);
  if (level >= std::size_t(e.values.size())) throw IndexError("level out of range");
  const Eigen::VectorXcd col = h.h1.matrix() * e.vectors.col(Eigen::Index(level));
  const double en = e.values(Eigen::Index(level));
  double sum = 0;
  for (Eigen::Index m = 0; m < e.values.size(); ++m) {
    if (m == Eigen::Index(level)) continue;
    if (max_energy && e.values(m) >= *max_energy) continue;
    const cplx v = e.vectors.col(m).dot(col);
    const double gap = en - e.values(m);
    sum += std::norm(v) / (gap * gap);
  }
  return 4.0 * h.coupling * h.coupling * sum;
}

}  // namespace gravprobe::oracle
