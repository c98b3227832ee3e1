#pragma once

#include <span>
#include <vector>

#include "pdmdirac/eigensolve.hpp"
#include "pdmdirac/grid.hpp"

namespace pdmdirac {

/// Power-series solution h(xi) = sum a_j xi^j of h'' - 2 xi h' + (K-1) h = 0
/// with K = E^2/mu.  The recursion a_{j+2} = (2j+1-K)/((j+1)(j+2)) a_j
/// terminates exactly when K = 2n+1 on the branch whose seed parity matches n.
struct HermiteSeries {
  double K = 0.0;
  std::vector<double> coefficients;
  bool terminated = false;
};

/// One step of the recursion: a_{j+2} from a_j.
double recursion_step(double K, int j, double a_j);

/// Generate coefficients a_0..a_{max_index} from the seeds (a0, a1).
HermiteSeries hermite_series(double K, double a0, double a1, int max_index);

/// Physicists' Hermite polynomial H_n(xi).
double hermite(int n, double xi);

/// E_n = sqrt((2n+1) mu), ascending; n must be odd and positive (the
/// wave function has to vanish at x = 0 where the linear mass vanishes).
std::vector<double> analytic_energies(double mu, std::span<const int> n_list);

/// phi1^(n)(x) = A_n exp(-mu x^2 / 2) H_n(sqrt(mu) x), L2-normalised on
/// [0, x_hi] with A_n from quadrature.  The Gaussian exponent is -mu x^2/2:
/// that is the only exponent for which the reduced-equation residual
/// vanishes (see README's note on the eigenfunction normal form).
ScalarField analytic_eigenfunction(double mu, int n, const Grid& grid);

/// Dirichlet eigensolve of -d2/dx2 + mu^2 x^2 on the half-line grid; returns
/// E = +sqrt(lambda) for the k lowest lambda (eigenvalues field carries E).
Spectrum numeric_energies(double mu, const Grid& grid, int k);

}  // namespace pdmdirac
