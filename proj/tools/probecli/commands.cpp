#include "probecli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "gravprobe/metrology.hpp"
#include "gravprobe/models.hpp"
#include "probecli/parallel.hpp"

namespace probecli {

namespace gm = gravprobe::models;
using gravprobe::UnitMode;
using gravprobe::UnitSystem;

namespace {

constexpr const char* kHoUnit = "(hbar m omega)^2/(M_P c)^4";
constexpr const char* kNatural = "natural";

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Cell integer(long long v) { return std::int64_t(v); }

UnitSystem unit_system(UnitMode mode, double si_mass = gravprobe::kSiProbeMass) {
  return mode == UnitMode::natural ? UnitSystem::natural() : UnitSystem::si(si_mass);
}

// strict interior local maxima of a sampled curve
std::vector<std::size_t> interior_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1])) continue;
    // flat tops count once, at their first sample
    std::size_t j = i;
    while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
    if (j + 1 < y.size() && y[j + 1] < y[i]) peaks.push_back(i);
    i = j;
  }
  return peaks;
}

}  // namespace

UnitMode resolve_units(const RunConfig& config, const std::string& command) {
  UnitMode natural_choice = UnitMode::natural;
  bool fixed = false;
  if (command == "fsw-figure" || command == "ho-figure") fixed = true;
  if (command == "comparison") {
    natural_choice = UnitMode::si;
    fixed = true;
  }
  if (!config.units) return natural_choice;
  if (fixed && *config.units != natural_choice)
    throw ConfigError(command + " runs in " + gravprobe::to_string(natural_choice) + " units only");
  return *config.units;
}

CommandResult cmd_table1(const RunConfig& config) {
  CommandResult res{"table1", resolve_units(config, "table1"), {}, {}};
  gm::HarmonicProbe p1{1, config.ho.omega, unit_system(res.units), config.ho.truncation};
  gm::HarmonicProbe p2 = p1;
  p2.dims = 2;
  p1.validate();

  struct Row {
    std::string a, b;
    gm::Ho2dState state;
    double qa, qb, q2, ratio;
    std::int64_t rn, rd;  // exact ratio
  };
  const auto q1_eig = [&](int n) { return gm::ho_eigenstate_qfi(p1, n).reduced(); };
  const double sup = gm::ho2d_axis_qfis(p2, gm::Ho2dState::excited_x_plus_y).first.reduced();
  std::vector<Row> rows{
      {"|0>", "|0>", gm::Ho2dState::ground, q1_eig(0), q1_eig(0), 0, 0, 68, 39},
      {"|0>", "|1>", gm::Ho2dState::excited_x, q1_eig(0), q1_eig(1), 0, 0, 100, 59},
      {"|0>", "(|0>+|1>)/sqrt2", gm::Ho2dState::ground_plus_y, q1_eig(0), sup, 0, 0, 46, 27},
      {"(|0>+|1>)/sqrt2", "(|0>+|1>)/sqrt2", gm::Ho2dState::excited_x_plus_y, sup, sup, 0, 0, 100,
       59},
  };
  const double exact_2d[] = {17, 75, 46, 75};

  Table t{"table1",
          {{"state_x", "-"},
           {"state_y", "-"},
           {"state_2d", "-"},
           {"qfi_1d_x", kHoUnit},
           {"qfi_1d_y", kHoUnit},
           {"qfi_2d", kHoUnit},
           {"weighted_ratio", "1"},
           {"method", "-"}},
          {},
          {{"omega", num(config.ho.omega)}}};
  auto& rep = res.report;
  rep.add("table1.qfi_1d.|0>", 39.0 / 8, q1_eig(0), 1e-9);
  rep.add("table1.qfi_1d.|1>", 315.0 / 8, q1_eig(1), 1e-9);
  rep.add("table1.qfi_1d.(|0>+|1>)/sqrt2", 177.0 / 8, sup, 1e-9);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    r.q2 = gm::ho2d_qfi(p2, r.state).reduced();
    r.ratio = gm::ho2d_weighted_ratio(p2, r.state);
    t.add({r.a, r.b, gm::to_string(r.state), r.qa, r.qb, r.q2, r.ratio,
           std::string("perturbative_ket")});
    rep.add("table1.qfi_2d." + gm::to_string(r.state), exact_2d[i], r.q2, 1e-9);
    rep.add("table1.ratio." + gm::to_string(r.state), double(r.rn) / double(r.rd), r.ratio, 1e-9,
            std::to_string(r.rn) + "/" + std::to_string(r.rd));
  }
  res.tables.push_back(std::move(t));
  return res;
}

CommandResult cmd_fsw_figure(const RunConfig& config) {
  CommandResult res{"fsw-figure", resolve_units(config, "fsw-figure"), {}, {}};
  const auto& fc = config.fsw;

  struct Point {
    double a, v0, energy, qfi;
    std::size_t bound;
  };
  auto eval = [](double a, double v0) {
    gm::FiniteWellProbe probe;
    probe.half_width = a;
    probe.depth = v0;
    const auto spec = gm::fsw_bound_states(probe);
    const auto q = gm::fsw_ground_qfi(probe);
    return Point{a, v0, spec.energies.front(), q.value, spec.count()};
  };

  // (curve parameter, swept points)
  auto sweep_family = [&](const std::vector<double>& fixed, const std::vector<double>& xs,
                          bool fixed_is_a) {
    const std::size_t n = fixed.size() * xs.size();
    auto pts = parallel_map(n, config.workers, [&](std::size_t k) {
      const double f = fixed[k / xs.size()], x = xs[k % xs.size()];
      return fixed_is_a ? eval(f, x) : eval(x, f);
    });
    return pts;
  };

  const auto v0s = fc.v0_sweep.points();
  const auto as = fc.a_sweep.points();
  const auto vs_v0 = sweep_family(fc.a_values, v0s, true);
  const auto vs_a = sweep_family(fc.v0_values, as, false);

  const std::vector<Column> cols{{"a", kNatural},        {"V0", kNatural},
                                 {"bound_states", "1"}, {"ground_energy", kNatural},
                                 {"qfi", kNatural},      {"method", "-"}};
  Table t_v0{"fsw_qfi_vs_v0", cols, {}, {}};
  Table t_a{"fsw_qfi_vs_a", cols, {}, {}};
  for (const auto& p : vs_v0)
    t_v0.add({p.a, p.v0, integer(long(p.bound)), p.energy, p.qfi, std::string("perturbative_ket")});
  for (const auto& p : vs_a)
    t_a.add({p.a, p.v0, integer(long(p.bound)), p.energy, p.qfi, std::string("perturbative_ket")});

  // energy panel: same curves ordered by ground-state energy
  Table t_e{"fsw_qfi_vs_energy",
            {{"V0", kNatural}, {"ground_energy", kNatural}, {"a", kNatural},
             {"bound_states", "1"}, {"qfi", kNatural}, {"method", "-"}},
            {},
            {}};
  for (std::size_t c = 0; c < fc.v0_values.size(); ++c) {
    std::vector<Point> curve(vs_a.begin() + long(c * as.size()),
                             vs_a.begin() + long((c + 1) * as.size()));
    std::stable_sort(curve.begin(), curve.end(),
                     [](const Point& x, const Point& y) { return x.energy < y.energy; });
    for (const auto& p : curve)
      t_e.add({p.v0, p.energy, p.a, integer(long(p.bound)), p.qfi, std::string("perturbative_ket")});
  }
  for (auto* t : {&t_v0, &t_a, &t_e}) t->metadata["continuum"] = "omitted";

  auto& rep = res.report;
  std::size_t zero_violations = 0;
  for (const auto* set : {&vs_v0, &vs_a})
    for (const auto& p : *set)
      if (p.bound < 2 && p.qfi != 0.0) ++zero_violations;
  rep.add_measure("fsw.qfi_zero_below_two_bound_states", 0, double(zero_violations),
                  double(zero_violations), 0, "rows with N_s < 2 and QFI != 0");

  std::vector<double> argmax;
  for (std::size_t c = 0; c < fc.a_values.size(); ++c) {
    std::vector<double> y;
    for (std::size_t i = 0; i < v0s.size(); ++i) y.push_back(vs_v0[c * v0s.size() + i].qfi);
    const auto peaks = interior_maxima(y);
    std::string where;
    for (auto i : peaks) where += (where.empty() ? "" : ";") + num(v0s[i]);
    rep.add_measure("fsw.single_interior_maximum.a=" + num(fc.a_values[c]), 1, double(peaks.size()),
                    std::abs(double(peaks.size()) - 1.0), 0, "maxima at V0=" + where);
    // location of the largest interior maximum; the curve may climb again
    // towards the sweep edge as the bound-state p^4 couplings grow
    std::size_t top = peaks.empty() ? 0 : peaks.front();
    for (auto i : peaks)
      if (y[i] > y[top]) top = i;
    argmax.push_back(peaks.empty() ? std::nan("") : v0s[top]);
  }
  std::size_t order_violations = 0;
  std::string locs;
  for (std::size_t c = 0; c < argmax.size(); ++c) {
    locs += (c ? ";" : "") + num(argmax[c]);
    if (c && !((fc.a_values[c] - fc.a_values[c - 1]) * (argmax[c] - argmax[c - 1]) < 0))
      ++order_violations;
  }
  rep.add_measure("fsw.maximum_location_decreases_with_a", 0, double(order_violations),
                  double(order_violations), 0, "interior maximum at V0=" + locs);

  for (std::size_t c = 0; c < fc.v0_values.size(); ++c) {
    const auto begin = vs_a.begin() + long(c * as.size());
    const std::vector<Point> curve(begin, begin + long(as.size()));
    const std::string tag = "V0=" + num(fc.v0_values[c]);
    std::size_t below = 0, below_nonzero = 0;
    double peak = 0, e_nonzero_max = -1, zero_e_violations = 0;
    for (const auto& p : curve) {
      if (p.bound < 2) {
        ++below;
        if (p.qfi != 0) ++below_nonzero;
      }
      peak = std::max(peak, p.qfi);
      if (p.qfi > 0) e_nonzero_max = std::max(e_nonzero_max, p.energy);
    }
    rep.add_measure("fsw.vs_a.vanishes_below_threshold." + tag, 0, double(below_nonzero),
                    below == 0 ? 1.0 : double(below_nonzero), 0,
                    std::to_string(below) + " sampled widths below the threshold");
    // power-law tail over the upper half of the sweep
    std::vector<double> tx, ty;
    for (std::size_t i = as.size() / 2; i < as.size(); ++i)
      if (curve[i].qfi > 0) {
        tx.push_back(std::log(curve[i].a));
        ty.push_back(std::log(curve[i].qfi));
      }
    double slope = 0;
    if (tx.size() >= 2) {
      double mx = 0, my = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < tx.size(); ++i) {
        mx += tx[i] / double(tx.size());
        my += ty[i] / double(tx.size());
      }
      for (std::size_t i = 0; i < tx.size(); ++i) {
        sxx += (tx[i] - mx) * (tx[i] - mx);
        sxy += (tx[i] - mx) * (ty[i] - my);
      }
      slope = sxy / sxx;
    }
    const bool below_peak = peak > 0 && curve.back().qfi < peak;
    rep.add_measure("fsw.vs_a.decays_at_large_a." + tag, -0.5, slope,
                    below_peak ? std::max(0.0, slope + 0.5) : 1.0, 0,
                    "log-log tail slope must be <= -0.5; QFI(a_max)/max = " +
                        num(curve.back().qfi / (peak > 0 ? peak : 1.0)));
    for (const auto& p : curve)
      if (p.qfi == 0 && p.energy < e_nonzero_max) ++zero_e_violations;
    rep.add_measure("fsw.vs_energy.vanishes_above_threshold." + tag, 0, zero_e_violations,
                    zero_e_violations, 0,
                    "zero-QFI rows below the highest informative energy " + num(e_nonzero_max));
  }

  res.tables.push_back(std::move(t_v0));
  res.tables.push_back(std::move(t_a));
  res.tables.push_back(std::move(t_e));
  return res;
}

CommandResult cmd_ho_figure(const RunConfig& config) {
  CommandResult res{"ho-figure", resolve_units(config, "ho-figure"), {}, {}};
  const auto& hc = config.ho;
  const gm::HarmonicProbe probe{1, hc.omega, UnitSystem::natural(), hc.truncation};
  probe.validate();

  std::vector<std::pair<int, int>> pairs;
  for (int n : hc.partners) {
    pairs.emplace_back(0, n);
    pairs.emplace_back(1, n);
  }
  const auto ts = hc.t_sweep.points();
  const std::size_t total = ts.size() * pairs.size();
  auto values = parallel_map(total, config.workers, [&](std::size_t k) {
    const auto pair = pairs[k % pairs.size()];
    const double t = ts[k / pairs.size()];
    return gm::ho_perturbed_superposition_qfi(probe, pair, t, hc.gamma).reduced();
  });

  Table tab{"ho_qfi_vs_t",
            {{"t", "1/omega"},
             {"low", "-"},
             {"high", "-"},
             {"qfi", kHoUnit},
             {"method", "-"}},
            {},
            {{"gamma", num(hc.gamma)}, {"omega", num(hc.omega)}}};
  for (std::size_t k = 0; k < total; ++k) {
    const auto pair = pairs[k % pairs.size()];
    tab.add({ts[k / pairs.size()], integer(pair.first), integer(pair.second), values[k],
             std::string("fidelity_fd")});
  }

  auto& rep = res.report;
  double min_value = std::numeric_limits<double>::infinity();
  for (double v : values) min_value = std::min(min_value, v);
  rep.add_measure("ho.curves_nonnegative", 0, min_value, min_value < 0 ? -min_value : 0.0, 0,
                  "minimum QFI over all curves");

  const double t_ref = 1.0 / hc.omega;
  for (int n : hc.partners) {
    const double q0 = gm::ho_perturbed_superposition_qfi(probe, {0, n}, t_ref, hc.gamma).reduced();
    const double q1 = gm::ho_perturbed_superposition_qfi(probe, {1, n}, t_ref, hc.gamma).reduced();
    const double shortfall = q1 > q0 ? 0.0 : (q0 - q1) / q0;
    rep.add_measure("ho.hierarchy_t1.n=" + std::to_string(n), q0, q1, shortfall, 0,
                    "QFI(1,n) must exceed QFI(0,n)=" + num(q0) + " at omega t = 1");

    // late times: the phase term of the commuting-superposition law dominates
    const double t_max = ts.back();
    const double law = gm::ho_superposition_qfi(probe, n, t_max).reduced();
    const double q_late = gm::ho_perturbed_superposition_qfi(probe, {0, n}, t_max, hc.gamma).reduced();
    rep.add("ho.large_t_law.(0," + std::to_string(n) + ")", law, q_late, 0.05,
            "omega t = " + num(t_max * hc.omega));
  }
  res.tables.push_back(std::move(tab));
  return res;
}

CommandResult cmd_comparison(const RunConfig& config) {
  CommandResult res{"comparison", resolve_units(config, "comparison"), {}, {}};
  const auto& cc = config.cmp;
  const UnitSystem units = UnitSystem::si(cc.mass);
  const double mev = gravprobe::mev_per_c(units);
  const double ev = gravprobe::electron_volts(units);

  const auto sigmas = cc.sigma_sweep.points();
  const auto widths = cc.width_sweep.points();
  const auto omegas = cc.omega_sweep.points();

  struct Sample {
    double energy, qfi;
  };
  auto free_pts = parallel_map(sigmas.size(), config.workers, [&](std::size_t i) {
    const auto q = gm::free_gaussian_qfi({cc.p0 * mev, sigmas[i] * mev, units}, cc.time);
    return Sample{q.metadata.at("h0") / ev, q.value};
  });
  auto isw_pts = parallel_map(widths.size(), config.workers, [&](std::size_t i) {
    const gm::InfiniteWellProbe probe{1, widths[i] * 1e-9, {4}, units};
    const auto q = gm::isw_closed_forms(probe, cc.time);
    return Sample{q.metadata.at("mean_energy") / ev, q.value};
  });
  auto ho_pts = parallel_map(omegas.size(), config.workers, [&](std::size_t i) {
    const gm::HarmonicProbe probe{1, omegas[i], units, 16};
    const auto q = gm::ho_perturbed_superposition_linear(probe, {1, 4}, cc.time);
    // (E_1 + E_4)/2 = 3 hbar omega
    return Sample{3.0 * units.hbar * omegas[i] / ev, q.value};
  });

  auto make = [&](const std::string& name, const std::string& param, const std::string& unit,
                  const std::vector<double>& xs, const std::vector<Sample>& s, const Range& range,
                  const std::string& method) {
    Table t{name,
            {{param, unit}, {"energy", "eV"}, {"qfi", "1"}, {"in_range", "-"}, {"method", "-"}},
            {},
            {{"t", num(cc.time) + "s"},
             {"mass", num(cc.mass) + "kg"},
             {"range", num(range.lo) + ".." + num(range.hi) + "[" + unit + "]"}}};
    for (std::size_t i = 0; i < xs.size(); ++i)
      t.add({xs[i], s[i].energy, s[i].qfi, std::string(range.contains(xs[i]) ? "in" : "out"), method});
    return t;
  };
  res.tables.push_back(make("comparison_free", "sigma", "MeV/c", sigmas, free_pts, cc.sigma_range,
                            "closed_form"));
  res.tables.push_back(
      make("comparison_isw", "a", "nm", widths, isw_pts, cc.width_range, "closed_form"));
  res.tables.push_back(
      make("comparison_ho", "omega", "1/s", omegas, ho_pts, cc.omega_range, "perturbative_ket"));

  auto extreme = [](const std::vector<double>& xs, const std::vector<Sample>& s, const Range& r,
                    bool want_max) {
    double best = want_max ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!r.contains(xs[i])) continue;
      best = want_max ? std::max(best, s[i].qfi) : std::min(best, s[i].qfi);
    }
    return best;
  };
  auto& rep = res.report;
  const double ho_min = extreme(omegas, ho_pts, cc.omega_range, false);
  const double isw_max = extreme(widths, isw_pts, cc.width_range, true);
  const double gap = std::log10(ho_min / isw_max);
  rep.add_measure("comparison.ho_min_above_isw_max", isw_max, ho_min, gap > 0 ? 0.0 : 1.0, 0,
                  "in-range points; log10(HO min / ISW max) = " + num(gap));
  rep.add_measure("comparison.log10_gap", 0, gap, 0, 0, "reported only");

  // free packet: QFI -> 0 as sigma -> 0
  double peak = 0;
  for (const auto& s : free_pts) peak = std::max(peak, s.qfi);
  const double first = free_pts.front().qfi / peak;
  bool decreasing = true;
  for (std::size_t i = 1; i < std::min<std::size_t>(free_pts.size(), 20); ++i)
    decreasing = decreasing && free_pts[i].qfi > free_pts[i - 1].qfi;
  rep.add_measure("comparison.free_vanishes_small_sigma", 0, first, decreasing ? first : 1.0, 1e-6,
                  "QFI(sigma_min)/max QFI, increasing over the first samples");
  return res;
}

CommandResult cmd_ratio_surface(const RunConfig& config) {
  CommandResult res{"ratio-surface", resolve_units(config, "ratio-surface"), {}, {}};
  const int nmax = config.ratio.max_n;
  Table surf{"ratio_surface_2d",
             {{"nx", "-"}, {"ny", "-"}, {"numerator", "1"}, {"denominator", "1"}, {"ratio", "1"}},
             {},
             {{"state", "(|1,1>+|nx,ny>)/sqrt2"}}};
  double best = 0;
  std::pair<int, int> at{0, 0};
  for (int nx = 1; nx <= nmax; ++nx)
    for (int ny = 1; ny <= nmax; ++ny) {
      if (nx == 1 && ny == 1) continue;  // no superposition
      const auto r = gm::isw_weighted_ratio({nx, ny});
      surf.add({integer(nx), integer(ny), integer(r.num), integer(r.den), r.value()});
      if (r.value() > best) {
        best = r.value();
        at = {nx, ny};
      }
    }
  Table diag3{"ratio_diagonal_3d",
              {{"n", "-"}, {"numerator", "1"}, {"denominator", "1"}, {"ratio", "1"}},
              {},
              {{"state", "(|1,1,1>+|n,n,n>)/sqrt2"}}};
  for (int n = 2; n <= nmax; ++n) {
    const auto r = gm::isw_weighted_ratio({n, n, n});
    diag3.add({integer(n), integer(r.num), integer(r.den), r.value()});
  }

  auto& rep = res.report;
  rep.add("ratio.max_over_grid", 8, best,
          0, "at (" + std::to_string(at.first) + "," + std::to_string(at.second) + ")");
  rep.add_measure("ratio.max_on_diagonal", 1, at.first == at.second ? 1 : 0,
                  at.first == at.second ? 0 : 1, 0, "");
  std::size_t off = 0;
  for (int n = 2; n <= nmax; ++n)
    if (!(gm::isw_weighted_ratio({n, n}) == gm::Ratio{8, 1})) ++off;
  rep.add_measure("ratio.diagonal_equals_8", 0, double(off), double(off), 0,
                  "diagonal entries (n,n), n >= 2, differing from 8");
  const auto r41 = gm::isw_weighted_ratio({4, 1});
  rep.add_measure("ratio.(4,1)_below_8", 8, r41.value(), r41.value() < 8 ? 0 : 1, 0,
                  std::to_string(r41.num) + "/" + std::to_string(r41.den));
  off = 0;
  for (int n = 2; n <= nmax; ++n)
    if (!(gm::isw_weighted_ratio({n, n, n}) == gm::Ratio{27, 1})) ++off;
  rep.add_measure("ratio.3d_diagonal_equals_27", 0, double(off), double(off), 0, "");

  res.tables.push_back(std::move(surf));
  res.tables.push_back(std::move(diag3));
  return res;
}

std::vector<std::string> write_result(CommandResult& result, const RunConfig& config) {
  if (!config.validation) result.report = ValidationReport{};
  if (config.tolerance) result.report.override_tolerance(*config.tolerance);
  const Provenance prov{result.command, config_hash(config), gravprobe::to_string(result.units)};
  const std::filesystem::path dir(config.out);
  std::vector<std::string> paths;
  for (const auto& t : result.tables) paths.push_back(write_table(t, dir, config.format, prov).string());
  std::string stem = result.command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  paths.push_back(
      write_table(result.report.to_table(stem + "_validation"), dir, config.format, prov).string());
  return paths;
}

}  // namespace probecli
