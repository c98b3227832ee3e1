#pragma once

#include <vector>

#include "pdmdirac/banded.hpp"

namespace pdmdirac {

enum class EigenClassification { Real, ConjugatePair, Complex };

enum class EigenSortMode { SmallestReal, SmallestRealMagnitude };

/// Eigenvalues sorted by real part, with per-pair residuals ||Hv - lv||/||v||
/// and a real / conjugate-pair / complex classification.  An eigenvalue is
/// classified Real when |Im l| < 1e-8 * max(1, |l|).
struct Spectrum {
  std::vector<Complex> eigenvalues;
  std::vector<double> residuals;
  std::vector<EigenClassification> classification;
  std::vector<std::vector<Complex>> eigenvectors;  // matching eigenvalues

  int n_real() const;
  int n_conjugate_pairs() const;
  double max_imag() const;
  double max_residual() const;
  /// Every non-real eigenvalue has a conjugate partner within
  /// tol * max(1, |l|).
  bool conjugation_closed(double tol) const;
};

inline constexpr double kRealClassificationTol = 1e-8;
inline constexpr int kScalarDimCap = 4096;
inline constexpr int kSpinorDimCap = 8192;

/// Dense eigensolve of the (generally non-Hermitian) operator at desk scale.
/// Returns the k eigenpairs selected by `mode` (all pairs if k <= 0), sorted
/// ascending by real part.  Specialised LAPACK paths are used for real
/// symmetric tridiagonal, real general and complex Hermitian matrices; the
/// fallback is the general complex solver.  Throws EigenSolveError on
/// non-convergence or when a returned pair violates the 1e-8 residual
/// contract.
Spectrum eigen_solve(const BandedComplexOperator& op, int k = -1,
                     EigenSortMode mode = EigenSortMode::SmallestReal);

}  // namespace pdmdirac
