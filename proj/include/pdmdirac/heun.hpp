#pragma once

#include <vector>

#include "pdmdirac/grid.hpp"

namespace pdmdirac {

/// General-Heun parameter set for the hyperbolic-mass equation in
/// xi = cosh(ax).  The Fuchsian relation alpha + beta + 1 = gamma + delta +
/// epsilon ties the exponent sums.
struct HeunParameters {
  Complex alpha;  // +i E/a
  Complex beta;   // -i E/a
  double gamma = 0.0;
  double delta = 0.5;
  double epsilon = 0.5;
  double d = -1.0;  // fourth singular point
  double q = 0.0;   // accessory parameter (mu0^2, fixed by term matching)
  double scaled_energy = 0.0;  // E/a
  double scaled_mass = 0.0;    // m0/a

  double fuchsian_residual() const;
};

/// Parameter map for  phi'' + [(1/2)/(xi+1) + (1/2)/(xi-1)] phi'
///                      + (EE^2 xi - mu0^2)/(xi (xi+1)(xi-1)) phi = 0
/// with EE = E/a, mu0 = m0/a.  q and alpha*beta are fixed by matching the
/// mapped Heun coefficients against this equation term by term (q = mu0^2,
/// alpha beta = EE^2), not by transcription.
HeunParameters map_to_heun(double m0, double a, double E);

/// Coefficient of phi' in the Heun form at y, sum of gamma/y, delta/(y-1),
/// epsilon/(y-d).
Complex heun_first_derivative_coefficient(const HeunParameters& p, double y);
/// Coefficient of phi: (alpha beta y - q) / (y (y-1)(y-d)).
Complex heun_zeroth_order_coefficient(const HeunParameters& p, double y);

/// Same two coefficients straight from the hyperbolic-mass equation; the
/// term-matching oracle compares these against the mapped parameters.
double equation_first_derivative_coefficient(double xi);
double equation_zeroth_order_coefficient(double m0, double a, double E, double xi);

double cosh_coordinate_map(double x, double a);
/// Nonnegative-x branch by default; branch = -1 selects x <= 0.
double inverse_cosh_map(double xi, double a, int branch = +1);

/// Frobenius solution around xi = 1 with characteristic exponent s in
/// {0, 1/2}: u(xi) = (xi-1)^s sum_k c_k (xi-1)^k, c_0 = 1.  Coefficients come
/// from the exact three-term recurrence obtained by substituting the series
/// into the equation written in t = xi - 1:
///   t(1+t)(2+t) u'' + (1+t)^2 u' + (EE^2 (1+t) - mu0^2) u = 0.
struct FrobeniusSeries {
  double exponent = 0.0;
  std::vector<Complex> coefficients;
  double scaled_energy = 0.0;
  double scaled_mass = 0.0;
  double radius_guard = 1.0;  // distance from xi=1 to the nearest other singularity

  Complex value(double xi) const;
  Complex derivative(double xi) const;
  /// Max residual of the recurrence over retained orders (exact-arithmetic
  /// identity; nonzero only through rounding).
  double recurrence_residual() const;
};

FrobeniusSeries frobenius_at_one(double m0, double a, double E, double exponent_s,
                                 int order);

/// Free scattering state of -phi'' + m0^2 sech(a x) phi = E^2 phi for E > 0,
/// integrated with unit-amplitude incoming plane-wave data from the right
/// matching window and normalised so the incident wave has amplitude 1.
ScalarField free_state(double m0, double a, double E, const Grid& grid);

struct ScatteringCoefficients {
  double transmission = 0.0;
  double reflection = 0.0;
};

/// Plane-wave matching outside |x| = window_half_width (chosen automatically
/// so that m0^2 sech(a x) < 1e-12 m0^2 when not given).  Throws
/// std::invalid_argument when a supplied window is too small.
ScatteringCoefficients transmission(double m0, double a, double E,
                                    double window_half_width = 0.0);

}  // namespace pdmdirac
