#include "gravprobe/models/finite_well.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../quadrature.hpp"
#include "gravprobe/errors.hpp"

namespace gravprobe::models {

namespace {

constexpr double pi = std::numbers::pi;

// sign of the quantization mismatch inside branch k; negative at the lower
// end, positive at the upper end
double mismatch(int parity, double u, double z0) {
  const double w = std::sqrt(std::max(z0 * z0 - u * u, 0.0));
  return parity > 0 ? u * std::tan(u) - w : -u / std::tan(u) - w;
}

double bisect(int parity, double lo, double hi, double z0) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mismatch(parity, mid, z0) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

FswLevel make_level(int parity, double u, double z0) {
  FswLevel l;
  l.parity = parity;
  l.u = u;
  l.kappa = std::sqrt(std::max(z0 * z0 - u * u, 0.0));
  l.energy = 0.5 * u * u;
  l.edge = parity > 0 ? std::cos(u) : std::sin(u);
  const double inside = parity > 0 ? 1.0 + std::sin(2 * u) / (2 * u) : 1.0 - std::sin(2 * u) / (2 * u);
  const double outside = l.edge * l.edge / l.kappa;
  l.amplitude = 1.0 / std::sqrt(inside + outside);
  return l;
}

}  // namespace

void FiniteWellProbe::validate() const {
  units.validate();
  require(half_width > 0 && std::isfinite(half_width), "well half-width must be positive");
  require(depth > 0 && std::isfinite(depth), "well depth must be positive");
  require(box_half_width == 0.0 || box_half_width > 1.0, "box must enclose the well");
  require(grid_points >= 8, "grid needs at least eight points");
}

double FiniteWellProbe::z0() const {
  return half_width * std::sqrt(2 * units.probe_mass * depth) / units.hbar;
}

double FiniteWellProbe::box() const {
  if (box_half_width > 0) return box_half_width;
  return 1.0 + std::max(4.0, 24.0 / z0());
}

double FswLevel::value(double x) const {
  const double ax = std::abs(x);
  if (ax <= 1.0) return amplitude * (parity > 0 ? std::cos(u * x) : std::sin(u * x));
  const double tail = amplitude * edge * std::exp(-kappa * (ax - 1.0));
  return parity > 0 || x > 0 ? tail : -tail;
}

double FswLevel::second_derivative(double x) const {
  return std::abs(x) <= 1.0 ? -u * u * value(x) : kappa * kappa * value(x);
}

FswSpectrum fsw_bound_states(const FiniteWellProbe& probe) {
  probe.validate();
  FswSpectrum s;
  s.z0 = probe.z0();
  s.scale = scale_for_length(probe.units, probe.half_width);
  const double z0 = s.z0;

  // branch k covers u in ((k-1) pi/2, k pi/2); odd k even parity
  for (int k = 1; (k - 1) * pi / 2 < z0; ++k) {
    const int parity = (k % 2 == 1) ? 1 : -1;
    const double lo = (k - 1) * pi / 2;
    const double hi = std::min(k * pi / 2, z0);
    if (hi <= lo) break;
    const double u = bisect(parity, lo, hi, z0);
    if (!(u > lo && u < hi + 1e-12)) throw NumericalInconsistency("bound-state root left its bracket");
    s.levels.push_back(make_level(parity, u, z0));
  }

  const double unit = s.scale.energy;
  const double shrink = 1.0 / ((1.0 + 1.0 / z0) * (1.0 + 1.0 / z0));
  for (std::size_t n = 0; n < s.levels.size(); ++n) {
    const double exact = s.levels[n].energy * unit;
    const double k = (n + 1) * pi / 2;
    const double approx = 0.5 * k * k * shrink * unit;
    s.energies.push_back(exact);
    s.approx_energies.push_back(approx);
    s.approx_max_rel_error = std::max(s.approx_max_rel_error, std::abs(approx - exact) / exact);
  }
  return s;
}

double fsw_p4_element(const FswLevel& m, const FswLevel& n) {
  if (m.parity != n.parity) return 0.0;
  const double um2 = m.u * m.u, un2 = n.u * n.u;
  auto f = [&](double x) {
    const double a = m.parity > 0 ? std::cos(m.u * x) : std::sin(m.u * x);
    const double b = n.parity > 0 ? std::cos(n.u * x) : std::sin(n.u * x);
    return a * b;
  };
  static const auto rule = detail::gauss_legendre(16);
  const int panels = 4 + int(std::ceil((m.u + n.u) / pi));
  const double coarse = detail::integrate(f, -1.0, 1.0, panels, rule);
  const double fine = detail::integrate(f, -1.0, 1.0, 2 * panels, rule);
  if (std::abs(fine - coarse) > 1e-4 * std::max(std::abs(fine), 1e-12 * 2.0))
    throw GridResolutionError("finite-well matrix element quadrature did not settle");

  const double inside = um2 * un2 * fine;
  // both tails: int_1^inf kappa_m^2 kappa_n^2 e^{-(kappa_m + kappa_n)(x - 1)} dx, twice
  const double km2 = m.kappa * m.kappa, kn2 = n.kappa * n.kappa;
  const double outside = 2.0 * km2 * kn2 * m.edge * n.edge / (m.kappa + n.kappa);
  return m.amplitude * n.amplitude * (inside + outside);
}

PerturbationProblem fsw_problem(const FswSpectrum& spectrum) {
  const auto n = spectrum.count();
  require(n >= 2, "need at least two bound states");
  Eigen::MatrixXd h1(n, n);
  std::vector<double> energies(n);
  std::vector<std::vector<int>> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    energies[i] = spectrum.levels[i].energy;
    labels[i] = {int(i)};
    for (std::size_t j = i; j < n; ++j) {
      const double v = fsw_p4_element(spectrum.levels[i], spectrum.levels[j]);
      h1(i, j) = v;
      h1(j, i) = v;
    }
  }
  return PerturbationProblem(std::move(energies),
                             HermitianOperator(BasisDescriptor::spectral(std::move(labels)), h1),
                             UnitSystem::natural(), spectrum.scale.coupling);
}

QfiResult fsw_ground_qfi(const FiniteWellProbe& probe) {
  const FswSpectrum s = fsw_bound_states(probe);
  QfiResult r;
  r.method = QfiMethod::perturbative_ket;
  r.unit_label = "(hbar/(a M_P c))^4";
  r.unit_factor = s.scale.coupling * s.scale.coupling;
  r.metadata["bound_states"] = double(s.count());
  r.metadata["z0"] = s.z0;
  r.metadata["ground_energy"] = s.count() > 0 ? s.energies.front() : 0.0;
  r.notes.push_back("bound states only; continuum contribution omitted");
  if (s.count() < 2) {
    r.value = 0.0;
    return r;
  }
  const PerturbationProblem p = fsw_problem(s);
  const PerturbedLevel level = perturbation_ket(p, 0);
  const QfiResult q = qfi_perturbative(level);
  r.value = q.value;
  r.metadata["ket_norm2"] = level.ket_norm2();
  return r;
}

StateVector fsw_level_state(const FswLevel& level, const Grid1d& grid) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(grid.points));
  const double w = std::sqrt(grid.spacing());
  for (std::size_t i = 0; i < grid.points; ++i) v(Eigen::Index(i)) = w * level.value(grid.point(i));
  return {BasisDescriptor::grid1d(grid), v};
}

}  // namespace gravprobe::models
