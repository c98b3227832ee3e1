#include "pdmdirac/banded.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pdmdirac {

BandedComplexOperator::BandedComplexOperator(const Grid& grid, int block_size,
                                             int half_bandwidth, Boundary boundary)
    : grid_(grid),
      block_size_(block_size),
      half_bandwidth_(half_bandwidth),
      boundary_(boundary),
      active_nodes_(boundary == Boundary::Dirichlet ? grid.n - 2 : grid.n) {
  if (block_size != 1 && block_size != 2)
    throw std::invalid_argument("BandedComplexOperator: block_size must be 1 or 2");
  if (half_bandwidth < 0 || half_bandwidth >= dim())
    throw std::invalid_argument("BandedComplexOperator: bad half_bandwidth");
  if (boundary == Boundary::Periodic && 2 * half_bandwidth + 1 > dim())
    throw std::invalid_argument("BandedComplexOperator: band wider than periodic dimension");
  bands_.assign(static_cast<std::size_t>(2 * half_bandwidth + 1),
                std::vector<Complex>(static_cast<std::size_t>(dim()), Complex(0.0)));
}

int BandedComplexOperator::wrap(int element) const {
  const int d = dim();
  if (boundary_ == Boundary::Periodic) return ((element % d) + d) % d;
  return element;  // caller checks range for Dirichlet
}

void BandedComplexOperator::add_block(int node, int dnode, int comp_row, int comp_col,
                                      Complex v) {
  if (node < 0 || node >= active_nodes_)
    throw std::out_of_range("add_block: node outside active range");
  if (comp_row < 0 || comp_row >= block_size_ || comp_col < 0 || comp_col >= block_size_)
    throw std::out_of_range("add_block: component outside block");
  const int target = node + dnode;
  if (boundary_ == Boundary::Dirichlet && (target < 0 || target >= active_nodes_))
    return;  // coupling into the Dirichlet boundary is dropped
  const int offset = block_size_ * dnode + (comp_col - comp_row);
  if (offset < -half_bandwidth_ || offset > half_bandwidth_)
    throw std::out_of_range("add_block: coupling outside declared bandwidth");
  const int row = block_size_ * node + comp_row;
  bands_[static_cast<std::size_t>(offset + half_bandwidth_)][static_cast<std::size_t>(row)] += v;
}

Complex BandedComplexOperator::band_entry(int row, int offset) const {
  if (row < 0 || row >= dim()) throw std::out_of_range("band_entry: bad row");
  if (offset < -half_bandwidth_ || offset > half_bandwidth_) return Complex(0.0);
  if (boundary_ == Boundary::Dirichlet) {
    const int col = row + offset;
    if (col < 0 || col >= dim()) return Complex(0.0);
  }
  return bands_[static_cast<std::size_t>(offset + half_bandwidth_)][static_cast<std::size_t>(row)];
}

std::vector<Complex> BandedComplexOperator::apply(std::span<const Complex> v) const {
  if (v.size() != static_cast<std::size_t>(dim()))
    throw std::invalid_argument("apply: vector length does not match operator dimension");
  std::vector<Complex> out(static_cast<std::size_t>(dim()), Complex(0.0));
  const int d = dim();
  for (int o = -half_bandwidth_; o <= half_bandwidth_; ++o) {
    const auto& band = bands_[static_cast<std::size_t>(o + half_bandwidth_)];
    for (int r = 0; r < d; ++r) {
      int c = r + o;
      if (boundary_ == Boundary::Periodic) {
        c = ((c % d) + d) % d;
      } else if (c < 0 || c >= d) {
        continue;
      }
      const Complex a = band[static_cast<std::size_t>(r)];
      if (a != Complex(0.0)) out[static_cast<std::size_t>(r)] += a * v[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

Eigen::MatrixXcd BandedComplexOperator::to_dense() const {
  const int d = dim();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
  for (int o = -half_bandwidth_; o <= half_bandwidth_; ++o) {
    const auto& band = bands_[static_cast<std::size_t>(o + half_bandwidth_)];
    for (int r = 0; r < d; ++r) {
      int c = r + o;
      if (boundary_ == Boundary::Periodic) {
        c = ((c % d) + d) % d;
      } else if (c < 0 || c >= d) {
        continue;
      }
      A(r, c) += band[static_cast<std::size_t>(r)];
    }
  }
  return A;
}

BandedComplexOperator BandedComplexOperator::times(const BandedComplexOperator& rhs) const {
  if (!(grid_ == rhs.grid_) || boundary_ != rhs.boundary_ || block_size_ != rhs.block_size_)
    throw std::invalid_argument("times: operator layouts differ");
  const int hb = half_bandwidth_ + rhs.half_bandwidth_;
  BandedComplexOperator out(grid_, block_size_, hb, boundary_);
  const int d = dim();
  for (int o1 = -half_bandwidth_; o1 <= half_bandwidth_; ++o1) {
    const auto& band1 = bands_[static_cast<std::size_t>(o1 + half_bandwidth_)];
    for (int r = 0; r < d; ++r) {
      const Complex a = band1[static_cast<std::size_t>(r)];
      if (a == Complex(0.0)) continue;
      int k = r + o1;
      if (boundary_ == Boundary::Periodic) {
        k = ((k % d) + d) % d;
      } else if (k < 0 || k >= d) {
        continue;
      }
      for (int o2 = -rhs.half_bandwidth_; o2 <= rhs.half_bandwidth_; ++o2) {
        const Complex b =
            rhs.bands_[static_cast<std::size_t>(o2 + rhs.half_bandwidth_)][static_cast<std::size_t>(k)];
        if (b == Complex(0.0)) continue;
        if (boundary_ == Boundary::Dirichlet) {
          const int c = k + o2;
          if (c < 0 || c >= d) continue;
        }
        out.bands_[static_cast<std::size_t>(o1 + o2 + hb)][static_cast<std::size_t>(r)] += a * b;
      }
    }
  }
  return out;
}

BandedComplexOperator BandedComplexOperator::plus(const BandedComplexOperator& rhs) const {
  if (!(grid_ == rhs.grid_) || boundary_ != rhs.boundary_ || block_size_ != rhs.block_size_)
    throw std::invalid_argument("plus: operator layouts differ");
  const int hb = std::max(half_bandwidth_, rhs.half_bandwidth_);
  BandedComplexOperator out(grid_, block_size_, hb, boundary_);
  const int d = dim();
  for (int o = -hb; o <= hb; ++o) {
    auto& dst = out.bands_[static_cast<std::size_t>(o + hb)];
    for (int r = 0; r < d; ++r) {
      Complex s(0.0);
      if (std::abs(o) <= half_bandwidth_)
        s += bands_[static_cast<std::size_t>(o + half_bandwidth_)][static_cast<std::size_t>(r)];
      if (std::abs(o) <= rhs.half_bandwidth_)
        s += rhs.bands_[static_cast<std::size_t>(o + rhs.half_bandwidth_)][static_cast<std::size_t>(r)];
      dst[static_cast<std::size_t>(r)] = s;
    }
  }
  return out;
}

BandedComplexOperator BandedComplexOperator::scaled(Complex factor) const {
  BandedComplexOperator out = *this;
  for (auto& band : out.bands_)
    for (auto& v : band) v *= factor;
  return out;
}

BandedComplexOperator BandedComplexOperator::adjoint() const {
  BandedComplexOperator out(grid_, block_size_, half_bandwidth_, boundary_);
  const int d = dim();
  for (int o = -half_bandwidth_; o <= half_bandwidth_; ++o) {
    auto& dst = out.bands_[static_cast<std::size_t>(o + half_bandwidth_)];
    for (int r = 0; r < d; ++r) {
      int c = r + o;
      if (boundary_ == Boundary::Periodic) {
        c = ((c % d) + d) % d;
      } else if (c < 0 || c >= d) {
        continue;
      }
      // out[r, r+o] = conj(this[c, r]) with this[c, r] stored at band -o, row c.
      dst[static_cast<std::size_t>(r)] =
          std::conj(bands_[static_cast<std::size_t>(-o + half_bandwidth_)][static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

BandedComplexOperator BandedComplexOperator::from_scalar_block(
    const BandedComplexOperator& scalar_op, int comp_row, int comp_col, Complex factor) {
  if (scalar_op.block_size() != 1)
    throw std::invalid_argument("from_scalar_block: input must be scalar");
  const int hb_node = scalar_op.half_bandwidth();
  BandedComplexOperator out(scalar_op.grid(), 2, 2 * hb_node + 1, scalar_op.boundary());
  for (int node = 0; node < scalar_op.active_nodes(); ++node) {
    for (int o = -hb_node; o <= hb_node; ++o) {
      const Complex v = scalar_op.band_entry(node, o);
      if (v == Complex(0.0)) continue;
      out.add_block(node, o, comp_row, comp_col, factor * v);
    }
  }
  return out;
}

bool BandedComplexOperator::is_real(double tol) const {
  for (const auto& band : bands_)
    for (const auto& v : band)
      if (std::abs(v.imag()) > tol) return false;
  return true;
}

bool BandedComplexOperator::is_hermitian(double tol) const {
  const int d = dim();
  for (int o = 0; o <= half_bandwidth_; ++o) {
    for (int r = 0; r < d; ++r) {
      int c = r + o;
      if (boundary_ == Boundary::Periodic) {
        c = ((c % d) + d) % d;
      } else if (c < 0 || c >= d) {
        continue;
      }
      const Complex upper = bands_[static_cast<std::size_t>(o + half_bandwidth_)][static_cast<std::size_t>(r)];
      const Complex lower = bands_[static_cast<std::size_t>(-o + half_bandwidth_)][static_cast<std::size_t>(c)];
      if (std::abs(upper - std::conj(lower)) > tol) return false;
    }
  }
  return true;
}

bool BandedComplexOperator::is_real_symmetric_tridiagonal() const {
  return block_size_ == 1 && half_bandwidth_ == 1 && boundary_ == Boundary::Dirichlet &&
         is_real(0.0) && is_hermitian(0.0);
}

void BandedComplexOperator::write_triplets(std::ostream& os) const {
  const int d = dim();
  char line[96];
  for (int r = 0; r < d; ++r) {
    for (int o = -half_bandwidth_; o <= half_bandwidth_; ++o) {
      int c = r + o;
      if (boundary_ == Boundary::Periodic) {
        c = ((c % d) + d) % d;
      } else if (c < 0 || c >= d) {
        continue;
      }
      const Complex v = bands_[static_cast<std::size_t>(o + half_bandwidth_)][static_cast<std::size_t>(r)];
      if (v == Complex(0.0)) continue;
      std::snprintf(line, sizeof(line), "%d %d %.17g %.17g\n", r, c, v.real(), v.imag());
      os << line;
    }
  }
}

BandedComplexOperator second_derivative_operator(const Grid& grid, Boundary boundary) {
  BandedComplexOperator op(grid, 1, 1, boundary);
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < op.active_nodes(); ++i) {
    op.add(i, 0, Complex(2.0 * inv_h2));
    op.add(i, -1, Complex(-inv_h2));
    op.add(i, +1, Complex(-inv_h2));
  }
  return op;
}

BandedComplexOperator first_derivative_operator(const Grid& grid, Boundary boundary) {
  BandedComplexOperator op(grid, 1, 1, boundary);
  const double c = 1.0 / (2.0 * grid.spacing());
  for (int i = 0; i < op.active_nodes(); ++i) {
    op.add(i, -1, Complex(-c));
    op.add(i, +1, Complex(c));
  }
  return op;
}

BandedComplexOperator diagonal_operator(const Grid& grid, Boundary boundary,
                                        std::span<const Complex> values_on_grid) {
  if (values_on_grid.size() != static_cast<std::size_t>(grid.n))
    throw std::invalid_argument("diagonal_operator: need one value per grid node");
  BandedComplexOperator op(grid, 1, 0, boundary);
  const int off = op.active_offset();
  for (int i = 0; i < op.active_nodes(); ++i)
    op.add(i, 0, values_on_grid[static_cast<std::size_t>(i + off)]);
  return op;
}

BandedComplexOperator diagonal_operator(const Grid& grid, Boundary boundary,
                                        std::span<const double> values_on_grid) {
  std::vector<Complex> vals(values_on_grid.begin(), values_on_grid.end());
  return diagonal_operator(grid, boundary, std::span<const Complex>(vals));
}

}  // namespace pdmdirac
