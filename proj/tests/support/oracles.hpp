#pragma once

// Test-side reference values, computed without the library's own helpers.

#include <cmath>
#include <functional>
#include <numbers>

namespace testing_oracles {

inline double rel(double computed, double expected) {
  return expected == 0 ? std::abs(computed) : std::abs(computed - expected) / std::abs(expected);
}

// composite Simpson on [a, b] with an even panel count
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// <m|X^4|n> for X = a + a^dagger from the ladder algebra
inline double fock_x4(int m, int n) {
  if (m < n) std::swap(m, n);
  const double k = n;
  switch (m - n) {
    case 0: return 6 * k * k + 6 * k + 3;
    case 2: return (4 * k + 6) * std::sqrt((k + 1) * (k + 2));
    case 4: return std::sqrt((k + 1) * (k + 2) * (k + 3) * (k + 4));
    default: return 0.0;
  }
}

// 4 ||psi1_n||^2 for h1 = X^4/4 and E_n = n + 1/2
inline double fock_ket_qfi(int n) {
  double s = 0;
  for (int m = std::max(0, n - 4); m <= n + 4; ++m) {
    if (m == n) continue;
    const double c = fock_x4(m, n) / 4 / double(n - m);
    s += c * c;
  }
  return 4 * s;
}

// finite-well root u of the even (parity +1) or odd condition by Newton on
// bisection of the pole-free cosine/sine form
inline double fsw_root(int parity, int branch, double z0) {
  const double pi = std::numbers::pi;
  // even: u sin u - w cos u = 0; odd: u cos u + w sin u = 0; w = sqrt(z0^2 - u^2)
  auto g = [&](double u) {
    const double w = std::sqrt(std::max(z0 * z0 - u * u, 0.0));
    return parity > 0 ? u * std::sin(u) - w * std::cos(u) : u * std::cos(u) + w * std::sin(u);
  };
  double lo = (branch - 1) * pi / 2, hi = std::min(branch * pi / 2, z0);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gl = g(lo), gm = g(mid);
    if ((gl < 0) == (gm < 0))
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace testing_oracles
