#include "gravprobe/models/infinite_well.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "../quadrature.hpp"
#include "gravprobe/errors.hpp"

namespace gravprobe::models {

namespace {

constexpr double pi = std::numbers::pi;

double sum_squares(const std::vector<int>& n) {
  double s = 0;
  for (int k : n) s += double(k) * k;
  return s;
}

}  // namespace

void InfiniteWellProbe::validate() const {
  units.validate();
  require(dims >= 1 && dims <= 3, "well dimension must be 1, 2 or 3");
  require(width > 0 && std::isfinite(width), "well width must be positive");
  require(int(quantum_numbers.size()) == dims, "one quantum number per axis");
  for (int n : quantum_numbers) require(n >= 1, "quantum numbers start at 1");
}

double isw_first_order_energy(const InfiniteWellProbe& probe, const std::vector<int>& n) {
  require(int(n.size()) == probe.dims, "one quantum number per axis");
  const auto& u = probe.units;
  const double k = pi * u.hbar / probe.width;
  const double s = sum_squares(n);
  return k * k * k * k * s * s / (u.probe_mass * u.planck_momentum() * u.planck_momentum());
}

QfiResult isw_closed_forms(const InfiniteWellProbe& probe, double t) {
  probe.validate();
  const auto& u = probe.units;
  const double d = probe.dims;
  const double s = sum_squares(probe.quantum_numbers);
  const double a = probe.width;

  // (t hbar/(m a^2))^2 (hbar/(a M_P c))^4 pi^8 ((sum n^2)^2 - d^2)^2
  const double f1 = t * u.hbar / (u.probe_mass * a * a);
  const double f2 = u.hbar / (a * u.planck_momentum());
  const double pi8 = std::pow(pi, 8);
  const double g = s * s - d * d;
  const double value = f1 * f1 * f2 * f2 * f2 * f2 * pi8 * g * g;

  // mean energy of the equal superposition and the energy form of the same
  // number: 256 (t E/hbar)^2 (m E/(M_P c)^2)^2 g^2/(s + d)^4
  const double mean_energy = pi * pi * u.hbar * u.hbar * (d + s) / (4 * u.probe_mass * a * a);
  const double e1 = t * mean_energy / u.hbar;
  const double e2 = u.probe_mass * mean_energy / (u.planck_momentum() * u.planck_momentum());
  const double ratio = g * g / std::pow(s + d, 4);
  const double energy_form = 256.0 * e1 * e1 * e2 * e2 * ratio;

  QfiResult r;
  r.value = value;
  r.method = QfiMethod::closed_form;
  r.metadata["mean_energy"] = mean_energy;
  r.metadata["energy_form"] = energy_form;
  r.metadata["energy_form_rel_diff"] = value != 0 ? std::abs(energy_form - value) / value : 0.0;
  r.metadata["e1_ground"] = isw_first_order_energy(probe, std::vector<int>(probe.dims, 1));
  r.metadata["e1_partner"] = isw_first_order_energy(probe, probe.quantum_numbers);
  return r;
}

PerturbationProblem isw_problem(const InfiniteWellProbe& probe, int nmax) {
  probe.validate();
  require(probe.dims == 1, "the sine-basis problem is one-dimensional");
  require(nmax >= 2, "need at least two levels");
  const Scale sc = scale_for_length(probe.units, probe.width);

  // phi_n(x) = sqrt 2 sin(n pi x) on [0, 1], phi_n'' = -(n pi)^2 phi_n
  const auto rule = detail::gauss_legendre(24);
  const int panels = 2 * nmax;
  Eigen::MatrixXd h1(nmax, nmax);
  std::vector<double> energies(nmax);
  std::vector<std::vector<int>> labels(nmax);
  for (int m = 1; m <= nmax; ++m) {
    energies[m - 1] = 0.5 * (m * pi) * (m * pi);
    labels[m - 1] = {m};
    for (int n = m; n <= nmax; ++n) {
      const double km = m * pi, kn = n * pi;
      auto f = [&](double x) {
        return 2.0 * km * km * std::sin(km * x) * kn * kn * std::sin(kn * x);
      };
      const double v = detail::integrate(f, 0.0, 1.0, panels, rule);
      h1(m - 1, n - 1) = v;
      h1(n - 1, m - 1) = v;
    }
  }
  return PerturbationProblem(std::move(energies),
                             HermitianOperator(BasisDescriptor::spectral(std::move(labels)), h1),
                             UnitSystem::natural(), sc.coupling);
}

Ratio isw_weighted_ratio(const std::vector<int>& q) {
  const auto d = std::int64_t(q.size());
  require(d >= 1 && d <= 3, "well dimension must be 1, 2 or 3");
  bool excited = false;
  for (int n : q) {
    require(n >= 1 && n <= 100, "quantum numbers must lie in [1, 100]");
    excited = excited || n != 1;
  }
  if (!excited) throw NoInformationError("ratio is undefined for the all-ground state");
  std::int64_t s = 0;
  for (int n : q) s += std::int64_t(n) * n;
  const std::int64_t g = s * s - d * d;
  Ratio r{g * g, 0};
  for (int n : q) {
    const std::int64_t n4 = std::int64_t(n) * n * n * n - 1;
    r.den += n4 * n4;
  }
  const std::int64_t c = std::gcd(r.num, r.den);
  r.num /= c;
  r.den /= c;
  return r;
}

}  // namespace gravprobe::models
