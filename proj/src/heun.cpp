#include "pdmdirac/heun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/ivp.hpp"

namespace pdmdirac {

namespace {
constexpr Complex kI(0.0, 1.0);

double sech(double z) { return 1.0 / std::cosh(z); }

/// Matching window half-width: sech(a L) = eps  =>  L = acosh(1/eps)/a.
double auto_window(double a) { return std::acosh(1e12) / a; }

struct PlaneWaveSplit {
  Complex incoming;  // coefficient of e^{+iEx}
  Complex outgoing;  // coefficient of e^{-iEx}
};

PlaneWaveSplit split_plane_waves(double E, double x, Complex phi, Complex dphi) {
  PlaneWaveSplit s;
  s.incoming = (E * phi - kI * dphi) / (2.0 * E) * std::exp(-kI * E * x);
  s.outgoing = (E * phi + kI * dphi) / (2.0 * E) * std::exp(kI * E * x);
  return s;
}

}  // namespace

double HeunParameters::fuchsian_residual() const {
  return std::abs(alpha + beta + 1.0 - (gamma + delta + epsilon));
}

HeunParameters map_to_heun(double m0, double a, double E) {
  if (!(a > 0.0)) throw std::invalid_argument("map_to_heun: a must be > 0");
  HeunParameters p;
  p.scaled_energy = E / a;
  p.scaled_mass = m0 / a;
  p.gamma = 0.0;
  p.delta = 0.5;
  p.epsilon = 0.5;
  p.d = -1.0;
  p.alpha = kI * p.scaled_energy;
  p.beta = -kI * p.scaled_energy;
  p.q = p.scaled_mass * p.scaled_mass;
  return p;
}

Complex heun_first_derivative_coefficient(const HeunParameters& p, double y) {
  return Complex(p.gamma / y + p.delta / (y - 1.0) + p.epsilon / (y - p.d));
}

Complex heun_zeroth_order_coefficient(const HeunParameters& p, double y) {
  return (p.alpha * p.beta * y - p.q) / (y * (y - 1.0) * (y - p.d));
}

double equation_first_derivative_coefficient(double xi) {
  return 0.5 / (xi + 1.0) + 0.5 / (xi - 1.0);
}

double equation_zeroth_order_coefficient(double m0, double a, double E, double xi) {
  const double ee = E / a, mu0 = m0 / a;
  return (ee * ee * xi - mu0 * mu0) / (xi * (xi + 1.0) * (xi - 1.0));
}

double cosh_coordinate_map(double x, double a) { return std::cosh(a * x); }

double inverse_cosh_map(double xi, double a, int branch) {
  if (xi < 1.0) throw std::domain_error("inverse_cosh_map: xi must be >= 1");
  const double x = std::acosh(xi) / a;
  return branch >= 0 ? x : -x;
}

Complex FrobeniusSeries::value(double xi) const {
  const double t = xi - 1.0;
  Complex sum(0.0);
  for (std::size_t k = coefficients.size(); k-- > 0;) sum = sum * t + coefficients[k];
  if (exponent == 0.0) return sum;
  return std::pow(t, exponent) * sum;
}

Complex FrobeniusSeries::derivative(double xi) const {
  const double t = xi - 1.0;
  Complex sum(0.0), dsum(0.0);
  for (std::size_t k = coefficients.size(); k-- > 1;)
    dsum = dsum * t + static_cast<double>(k) * coefficients[k];
  for (std::size_t k = coefficients.size(); k-- > 0;) sum = sum * t + coefficients[k];
  if (exponent == 0.0) return dsum;
  return exponent * std::pow(t, exponent - 1.0) * sum + std::pow(t, exponent) * dsum;
}

double FrobeniusSeries::recurrence_residual() const {
  const double s = exponent;
  const double ee = scaled_energy, mu0 = scaled_mass;
  double worst = 0.0;
  const auto& c = coefficients;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double sk = s + static_cast<double>(k);
    const Complex A = sk * (2.0 * sk - 1.0);
    const Complex B = (sk - 1.0) * (3.0 * sk - 4.0) + (ee * ee - mu0 * mu0);
    const Complex C = (sk - 2.0) * (sk - 2.0) + Complex(ee * ee);
    Complex acc = A * c[k] + B * c[k - 1];
    if (k >= 2) acc += C * c[k - 2];
    double scale = std::abs(A * c[k]) + std::abs(B * c[k - 1]);
    if (k >= 2) scale += std::abs(C * c[k - 2]);
    if (scale == 0.0) scale = 1.0;
    worst = std::max(worst, std::abs(acc) / scale);
  }
  return worst;
}

FrobeniusSeries frobenius_at_one(double m0, double a, double E, double exponent_s,
                                 int order) {
  if (!(a > 0.0)) throw std::invalid_argument("frobenius_at_one: a must be > 0");
  if (exponent_s != 0.0 && exponent_s != 0.5)
    throw std::invalid_argument("frobenius_at_one: exponent must be 0 or 1/2");
  if (order < 1 || order > 200)
    throw std::invalid_argument("frobenius_at_one: order must be in [1, 200]");

  // Indicial guard: the exponents differ by 1/2, so A(k) below never vanishes
  // for k >= 1; check anyway in case of future parameter changes.
  FrobeniusSeries series;
  series.exponent = exponent_s;
  series.scaled_energy = E / a;
  series.scaled_mass = m0 / a;
  series.radius_guard = 1.0;  // singularities of the equation at xi = 0 and -1
  auto& c = series.coefficients;
  c.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
  c[0] = 1.0;
  const double ee = series.scaled_energy, mu0 = series.scaled_mass;
  for (int k = 1; k <= order; ++k) {
    const double sk = exponent_s + k;
    const double A = sk * (2.0 * sk - 1.0);
    if (A == 0.0)
      throw std::logic_error("frobenius_at_one: indicial clash in recurrence");
    const Complex B = (sk - 1.0) * (3.0 * sk - 4.0) + Complex(ee * ee - mu0 * mu0);
    const Complex C = (sk - 2.0) * (sk - 2.0) + Complex(ee * ee);
    Complex acc = B * c[static_cast<std::size_t>(k) - 1];
    if (k >= 2) acc += C * c[static_cast<std::size_t>(k) - 2];
    c[static_cast<std::size_t>(k)] = -acc / A;
  }
  return series;
}

ScalarField free_state(double m0, double a, double E, const Grid& grid) {
  if (!(E > 0.0)) throw std::invalid_argument("free_state: E must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("free_state: a must be > 0");

  const double L = std::max(auto_window(a), std::max(std::abs(grid.x_lo), std::abs(grid.x_hi)));
  // Transmitted plane wave t e^{iEx} on the right; integrate right to left.
  OdeState y0 = {std::exp(kI * E * L), kI * E * std::exp(kI * E * L)};
  auto rhs = [m0, a, E](double x, const OdeState& y, OdeState& dydx) {
    dydx[0] = y[1];
    dydx[1] = (m0 * m0 * sech(a * x) - E * E) * y[0];
  };

  // Dense output wants nodes ordered along the direction of travel; the last
  // node must reach -L where the barrier is negligible and the incident
  // amplitude can be read off.
  std::vector<double> nodes(grid.nodes());
  std::reverse(nodes.begin(), nodes.end());
  if (nodes.back() > -L) nodes.push_back(-L);
  const Trajectory traj = integrate_ivp(rhs, y0, L, -L, 1e-12, nodes);

  const auto split = split_plane_waves(E, -L, traj.back()[0], traj.back()[1]);

  ScalarField field(grid);
  for (int i = 0; i < grid.n; ++i)
    field.values[static_cast<std::size_t>(i)] =
        traj.y[static_cast<std::size_t>(grid.n - 1 - i)][0] / split.incoming;
  return field;
}

ScatteringCoefficients transmission(double m0, double a, double E,
                                    double window_half_width) {
  if (!(E > 0.0)) throw std::invalid_argument("transmission: E must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("transmission: a must be > 0");
  double L = window_half_width;
  if (L == 0.0) {
    L = auto_window(a);
  } else if (!(sech(a * L) < 1e-12)) {
    throw std::invalid_argument(
        "transmission: matching window too small; barrier not negligible there");
  }

  OdeState y0 = {std::exp(kI * E * L), kI * E * std::exp(kI * E * L)};
  auto rhs = [m0, a, E](double x, const OdeState& y, OdeState& dydx) {
    dydx[0] = y[1];
    dydx[1] = (m0 * m0 * sech(a * x) - E * E) * y[0];
  };
  const Trajectory traj = integrate_ivp(rhs, y0, L, -L, 1e-12);
  const auto split = split_plane_waves(E, -L, traj.back()[0], traj.back()[1]);

  ScatteringCoefficients out;
  const double inc2 = std::norm(split.incoming);
  out.transmission = 1.0 / inc2;
  out.reflection = std::norm(split.outgoing) / inc2;
  return out;
}

}  // namespace pdmdirac
