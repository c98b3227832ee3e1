#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdmdirac/grid.hpp"

namespace pdmdirac {

enum class Boundary { Dirichlet, Periodic };

/// Banded complex matrix tied to a grid.
///
/// The operator acts on the grid's *active* nodes: all n nodes for Periodic
/// boundaries (neighbours wrap modulo n, period n*h), the n-2 interior nodes
/// for Dirichlet (couplings to the boundary nodes are dropped, which is the
/// matrix form of phi = 0 there).
///
/// block_size 2 interleaves spinor components node-major, so element index
/// 2*node + component. Storage is by diagonals: bands[offset + hb][row holds
/// the coupling row -> row+offset (with periodic wrap in element space).
class BandedComplexOperator {
 public:
  BandedComplexOperator(const Grid& grid, int block_size, int half_bandwidth,
                        Boundary boundary);

  const Grid& grid() const noexcept { return grid_; }
  Boundary boundary() const noexcept { return boundary_; }
  int block_size() const noexcept { return block_size_; }
  int half_bandwidth() const noexcept { return half_bandwidth_; }

  /// Number of nodes the operator acts on (n for Periodic, n-2 for Dirichlet).
  int active_nodes() const noexcept { return active_nodes_; }
  int dim() const noexcept { return block_size_ * active_nodes_; }
  /// Grid index of active node 0 (0 for Periodic, 1 for Dirichlet).
  int active_offset() const noexcept { return boundary_ == Boundary::Dirichlet ? 1 : 0; }
  double node_position(int active_index) const {
    return grid_.node(active_index + active_offset());
  }

  /// Accumulate v into the coupling (node, comp_row) -> (node+dnode, comp_col).
  /// For Dirichlet boundaries a target outside the active range is dropped,
  /// which implements the boundary contraction.
  void add_block(int node, int dnode, int comp_row, int comp_col, Complex v);
  /// Scalar (block_size 1) convenience: coupling node -> node+dnode.
  void add(int node, int dnode, Complex v) { add_block(node, dnode, 0, 0, v); }

  /// Element-level accessor; offset is col-row in element space, |offset| <= hb.
  Complex band_entry(int row, int offset) const;

  std::vector<Complex> apply(std::span<const Complex> v) const;

  Eigen::MatrixXcd to_dense() const;

  /// this * rhs as banded operators (half bandwidths add).
  BandedComplexOperator times(const BandedComplexOperator& rhs) const;
  /// this + rhs (half bandwidth = max of the two).
  BandedComplexOperator plus(const BandedComplexOperator& rhs) const;
  BandedComplexOperator scaled(Complex factor) const;
  /// Conjugate transpose.
  BandedComplexOperator adjoint() const;

  /// Inject a scalar operator into spinor block (comp_row, comp_col), scaled.
  static BandedComplexOperator from_scalar_block(const BandedComplexOperator& scalar_op,
                                                 int comp_row, int comp_col,
                                                 Complex factor);

  bool is_real(double tol = 0.0) const;
  bool is_hermitian(double tol = 0.0) const;
  /// True for a scalar Dirichlet operator with hb = 1, real entries and
  /// symmetric off-diagonals: the fast tridiagonal eigensolver path.
  bool is_real_symmetric_tridiagonal() const;

  /// Plain-text triplet dump "row col re im" for debugging.
  void write_triplets(std::ostream& os) const;

 private:
  int wrap(int element) const;

  Grid grid_;
  int block_size_;
  int half_bandwidth_;
  Boundary boundary_;
  int active_nodes_;
  std::vector<std::vector<Complex>> bands_;  // [offset + hb][row]
};

/// -d^2/dx^2 with the 3-point stencil (-1, 2, -1)/h^2.
BandedComplexOperator second_derivative_operator(const Grid& grid, Boundary boundary);
/// d/dx with the central stencil (-1, 0, +1)/(2h).
BandedComplexOperator first_derivative_operator(const Grid& grid, Boundary boundary);
/// diag(values) over the active nodes of the grid.
BandedComplexOperator diagonal_operator(const Grid& grid, Boundary boundary,
                                        std::span<const Complex> values_on_grid);
BandedComplexOperator diagonal_operator(const Grid& grid, Boundary boundary,
                                        std::span<const double> values_on_grid);

}  // namespace pdmdirac
