#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdmdirac/banded.hpp"
#include "pdmdirac/eigensolve.hpp"
#include "pdmdirac/potentials.hpp"
#include "pdmdirac/profiles.hpp"

namespace pdmdirac {

/// Fixed (1+1)D representation: gamma0 = [[0,1],[1,0]], gamma1 = [[0,-1],[1,0]],
/// alpha = gamma0 gamma1 = diag(1,-1), beta = gamma0.
struct DiracRepresentation {
  static Eigen::Matrix2cd gamma0();
  static Eigen::Matrix2cd gamma1();
  static Eigen::Matrix2cd alpha();
  static Eigen::Matrix2cd beta();
};

/// 2n x 2n coupled Dirac operator with blocks
///   [ -i d/dx + V      m      ]
///   [      m       +i d/dx + V ]
/// (mass couples the components pointwise).
BandedComplexOperator build_coupled_operator(const MassProfile& profile,
                                             const ComplexPotentialSamples& V,
                                             const Grid& grid, Boundary boundary);

/// Sample-based overload for symmetrised extensions (PT checks on half-line
/// profiles use an odd mass extension that is not a valid MassProfile).
BandedComplexOperator build_coupled_operator(std::span<const double> mass_on_grid,
                                             std::span<const Complex> V_on_grid,
                                             const Grid& grid, Boundary boundary);

/// Scalar operator for the decoupled phi1 component with the schrodingerizing
/// potential inserted:  L = -d2/dx2 + (m'/m) d/dx + [m^2 - g^2 + g'] with
/// g = m'/(2m).  The energy dependence of the decoupled equation cancels for
/// this V, so L phi1 = E^2 phi1 is an honest linear eigenproblem; L is real
/// and PT-symmetric but not Hermitian.
BandedComplexOperator build_decoupled_operator(const MassProfile& profile,
                                               const Grid& grid, Boundary boundary);

/// Nodewise residual of the decoupled phi1 equation
///   -phi'' + (m'/m) phi' + [2EV - V^2 - iV' - i(m'/m)(E-V)] phi - (E^2-m^2) phi
/// with phi', phi'' from the grid's central stencils; returned on the n-2
/// interior nodes.
std::vector<Complex> decoupled_phi1_residual(const MassProfile& profile,
                                             const ComplexPotentialSamples& V,
                                             double energy, const ScalarField& phi1);

enum class TransformDirection { Forward, Inverse };

struct TransformResult {
  ScalarField field;
  std::vector<std::size_t> excluded;  // singular nodes (value left zero)
};

/// phi = m^(-1/2) phi1 (forward) or phi1 = m^(1/2) phi (inverse); the round
/// trip is the identity away from singular nodes.
TransformResult similarity_transform(const MassProfile& profile, const ScalarField& phi1,
                                     TransformDirection direction);

/// phi2 = ((E - V) phi1 + i phi1') / m.  The derivative is taken from dphi1
/// when given, else from central differences (second order, one-sided at the
/// ends).
ScalarField reconstruct_phi2(const MassProfile& profile, const ComplexPotentialSamples& V,
                             double energy, const ScalarField& phi1,
                             const ScalarField* dphi1 = nullptr);

enum class PtInvolution { Identity, Sigma3 };

struct PtSymmetryReport {
  double delta = 0.0;          // || Pi Gamma conj(H) Gamma Pi - H ||_max
  int n_eigenvalues = 0;
  int n_real = 0;
  int n_conjugate_pairs = 0;
  double max_im_eig = 0.0;
  bool conjugation_closed = true;  // at 1e-10 relative
};

/// Matrix-level PT check: Pi is spatial index reversal, Gamma the chosen
/// spinor involution, conjugation is elementwise.  Requires a grid symmetric
/// about the origin.  When with_spectrum is set the report also carries the
/// spectrum's reality and conjugation-closure statistics.
PtSymmetryReport pt_symmetry_check(const BandedComplexOperator& op, PtInvolution gamma,
                                   bool with_spectrum = true);

/// Split an interleaved eigenvector of a block-2 operator into a SpinorField
/// on the full grid (Dirichlet boundary nodes padded with zeros).
SpinorField spinor_from_eigenvector(const BandedComplexOperator& op,
                                    std::span<const Complex> eigenvector);

}  // namespace pdmdirac
