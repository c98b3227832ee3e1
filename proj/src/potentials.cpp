#include "pdmdirac/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

namespace {
constexpr Complex kI(0.0, 1.0);
}

ComplexPotentialSamples schrodingerizing_potential(const MassProfile& profile,
                                                   const Grid& grid) {
  ComplexPotentialSamples out(grid);
  const auto m = profile.mass_on(grid);
  const auto dm = profile.dmass_on(grid);
  const auto d2m = profile.d2mass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());
  for (int i = 0; i < grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(m[k] > kSingularMassGuard * mmax))
      throw SingularNodeError("schrodingerizing potential: vanishing mass", k, grid.node(i));
    out.values[k] = kI * dm[k] / (2.0 * m[k]);
    out.dvalues[k] = kI * (d2m[k] * m[k] - dm[k] * dm[k]) / (2.0 * m[k] * m[k]);
  }
  out.analytic_derivative = true;
  return out;
}

void attach_numeric_derivative(ComplexPotentialSamples& samples) {
  const int n = samples.grid.n;
  const double h = samples.grid.spacing();
  auto& d = samples.dvalues;
  const auto& v = samples.values;
  d.assign(static_cast<std::size_t>(n), Complex(0.0));
  for (int i = 1; i + 1 < n; ++i)
    d[static_cast<std::size_t>(i)] =
        (v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
  // One-sided second-order stencils at the ends.
  if (n >= 3) {
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[static_cast<std::size_t>(n - 1)] =
        (3.0 * v[static_cast<std::size_t>(n - 1)] - 4.0 * v[static_cast<std::size_t>(n - 2)] +
         v[static_cast<std::size_t>(n - 3)]) /
        (2.0 * h);
  }
  samples.analytic_derivative = false;
}

EffectivePotentialField effective_potential_general(const MassProfile& profile,
                                                    const ComplexPotentialSamples& V,
                                                    double energy) {
  if (V.values.size() != static_cast<std::size_t>(V.grid.n) ||
      V.dvalues.size() != static_cast<std::size_t>(V.grid.n))
    throw std::invalid_argument("effective_potential_general: malformed potential samples");
  const Grid& grid = V.grid;
  EffectivePotentialField out(grid);
  out.analytic_derivative = V.analytic_derivative;

  const auto m = profile.mass_on(grid);
  const auto dm = profile.dmass_on(grid);
  const auto d2m = profile.d2mass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());

  for (int i = 0; i < grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(m[k] > kSingularMassGuard * mmax)) {
      out.excluded.push_back(k);
      continue;
    }
    const double ratio = dm[k] / m[k];
    const Complex v = V.values[k];
    const Complex dv = V.dvalues[k];
    out.values[k] = m[k] * m[k] + 0.75 * ratio * ratio - 0.5 * d2m[k] / m[k] +
                    (2.0 * v - kI * ratio) * energy - v * v - kI * dv + kI * ratio * v;
  }
  return out;
}

std::vector<double> effective_potential_reduced(const MassProfile& profile,
                                                const Grid& grid) {
  auto m = profile.mass_on(grid);
  for (auto& v : m) v = v * v;
  return m;
}

}  // namespace pdmdirac
