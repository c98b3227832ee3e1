#include "pdmdirac/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/special_functions/hermite.hpp>

#include "pdmdirac/banded.hpp"

namespace pdmdirac {

namespace {

// Adaptive Simpson quadrature, plain recursion with an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double recursion_step(double K, int j, double a_j) {
  if (j < 0) throw std::invalid_argument("recursion_step: j must be >= 0");
  return (2.0 * j + 1.0 - K) / ((j + 1.0) * (j + 2.0)) * a_j;
}

HermiteSeries hermite_series(double K, double a0, double a1, int max_index) {
  if (max_index < 1) throw std::invalid_argument("hermite_series: max_index must be >= 1");
  HermiteSeries s;
  s.K = K;
  s.coefficients.assign(static_cast<std::size_t>(max_index) + 1, 0.0);
  s.coefficients[0] = a0;
  s.coefficients[1] = a1;
  for (int j = 0; j + 2 <= max_index; ++j)
    s.coefficients[static_cast<std::size_t>(j) + 2] =
        recursion_step(K, j, s.coefficients[static_cast<std::size_t>(j)]);
  int last_nonzero = -1;
  for (int j = 0; j <= max_index; ++j)
    if (s.coefficients[static_cast<std::size_t>(j)] != 0.0) last_nonzero = j;
  s.terminated = last_nonzero <= max_index - 2;
  return s;
}

double hermite(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  return boost::math::hermite(static_cast<unsigned>(n), xi);
}

std::vector<double> analytic_energies(double mu, std::span<const int> n_list) {
  if (!(mu > 0.0)) throw std::invalid_argument("analytic_energies: mu must be > 0");
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    if (n <= 0 || n % 2 == 0)
      throw std::invalid_argument("analytic_energies: n must be odd and positive");
    out.push_back(std::sqrt((2.0 * n + 1.0) * mu));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScalarField analytic_eigenfunction(double mu, int n, const Grid& grid) {
  if (!(mu > 0.0)) throw std::invalid_argument("analytic_eigenfunction: mu must be > 0");
  if (n <= 0 || n % 2 == 0)
    throw std::invalid_argument("analytic_eigenfunction: n must be odd and positive");
  if (grid.x_lo < -1e-12)
    throw std::invalid_argument("analytic_eigenfunction: grid must lie in [0, x_hi]");

  const double root_mu = std::sqrt(mu);
  auto unnormalised = [&](double x) {
    return std::exp(-0.5 * mu * x * x) * hermite(n, root_mu * x);
  };
  const double norm2 = integrate([&](double x) { const double u = unnormalised(x); return u * u; },
                                 grid.x_lo, grid.x_hi, 1e-13);
  const double amplitude = 1.0 / std::sqrt(norm2);

  ScalarField field(grid);
  for (int i = 0; i < grid.n; ++i)
    field.values[static_cast<std::size_t>(i)] = amplitude * unnormalised(grid.node(i));
  return field;
}

Spectrum numeric_energies(double mu, const Grid& grid, int k) {
  if (!(mu > 0.0)) throw std::invalid_argument("numeric_energies: mu must be > 0");
  if (std::abs(grid.x_lo) > 1e-12)
    throw std::invalid_argument("numeric_energies: grid must start at x = 0");
  auto op = second_derivative_operator(grid, Boundary::Dirichlet);
  for (int i = 0; i < op.active_nodes(); ++i) {
    const double x = op.node_position(i);
    op.add(i, 0, Complex(mu * mu * x * x));
  }
  Spectrum spec = eigen_solve(op, k, EigenSortMode::SmallestReal);
  for (auto& lambda : spec.eigenvalues) lambda = std::sqrt(lambda.real());
  return spec;
}

}  // namespace pdmdirac
