#include "pdmdirac/dirac_system.hpp"

#include <algorithm>
#include <cmath>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

namespace {
constexpr Complex kI(0.0, 1.0);
}

Eigen::Matrix2cd DiracRepresentation::gamma0() {
  Eigen::Matrix2cd g;
  g << 0, 1, 1, 0;
  return g;
}

Eigen::Matrix2cd DiracRepresentation::gamma1() {
  Eigen::Matrix2cd g;
  g << 0, -1, 1, 0;
  return g;
}

Eigen::Matrix2cd DiracRepresentation::alpha() { return gamma0() * gamma1(); }

Eigen::Matrix2cd DiracRepresentation::beta() { return gamma0(); }

BandedComplexOperator build_coupled_operator(std::span<const double> mass_on_grid,
                                             std::span<const Complex> V_on_grid,
                                             const Grid& grid, Boundary boundary) {
  if (mass_on_grid.size() != static_cast<std::size_t>(grid.n) ||
      V_on_grid.size() != static_cast<std::size_t>(grid.n))
    throw std::invalid_argument("build_coupled_operator: sample length != node count");
  BandedComplexOperator op(grid, 2, 2, boundary);
  const Complex c = kI / (2.0 * grid.spacing());
  const int off = op.active_offset();
  for (int i = 0; i < op.active_nodes(); ++i) {
    const auto k = static_cast<std::size_t>(i + off);
    // diagonal blocks: -i d/dx + V (component 0), +i d/dx + V (component 1)
    op.add_block(i, -1, 0, 0, c);
    op.add_block(i, +1, 0, 0, -c);
    op.add_block(i, -1, 1, 1, -c);
    op.add_block(i, +1, 1, 1, c);
    op.add_block(i, 0, 0, 0, V_on_grid[k]);
    op.add_block(i, 0, 1, 1, V_on_grid[k]);
    // off-diagonal mass coupling, pointwise
    op.add_block(i, 0, 0, 1, mass_on_grid[k]);
    op.add_block(i, 0, 1, 0, mass_on_grid[k]);
  }
  return op;
}

BandedComplexOperator build_coupled_operator(const MassProfile& profile,
                                             const ComplexPotentialSamples& V,
                                             const Grid& grid, Boundary boundary) {
  if (!(V.grid == grid))
    throw std::invalid_argument("build_coupled_operator: potential sampled on another grid");
  const auto m = profile.mass_on(grid);
  return build_coupled_operator(m, V.values, grid, boundary);
}

BandedComplexOperator build_decoupled_operator(const MassProfile& profile,
                                               const Grid& grid, Boundary boundary) {
  const auto m = profile.mass_on(grid);
  const auto dm = profile.dmass_on(grid);
  const auto d2m = profile.d2mass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());

  BandedComplexOperator op(grid, 1, 1, boundary);
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 1.0 / (2.0 * h);
  const int off = op.active_offset();
  for (int i = 0; i < op.active_nodes(); ++i) {
    const auto k = static_cast<std::size_t>(i + off);
    if (!(m[k] > kSingularMassGuard * mmax))
      throw SingularNodeError("decoupled operator: vanishing mass", k, grid.node(i + off));
    const double ratio = dm[k] / m[k];
    const double g = dm[k] / (2.0 * m[k]);
    const double gp = (d2m[k] * m[k] - dm[k] * dm[k]) / (2.0 * m[k] * m[k]);
    const double m0term = m[k] * m[k] - g * g + gp;
    op.add(i, 0, Complex(2.0 * inv_h2 + m0term));
    op.add(i, -1, Complex(-inv_h2 - ratio * inv_2h));
    op.add(i, +1, Complex(-inv_h2 + ratio * inv_2h));
  }
  return op;
}

std::vector<Complex> decoupled_phi1_residual(const MassProfile& profile,
                                             const ComplexPotentialSamples& V,
                                             double energy, const ScalarField& phi1) {
  if (!(phi1.grid == V.grid))
    throw std::invalid_argument("decoupled_phi1_residual: grid mismatch");
  const Grid& grid = phi1.grid;
  const auto m = profile.mass_on(grid);
  const auto dm = profile.dmass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());
  const double h = grid.spacing();

  std::vector<Complex> res(static_cast<std::size_t>(grid.n - 2));
  for (int i = 1; i + 1 < grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(m[k] > kSingularMassGuard * mmax))
      throw SingularNodeError("decoupled residual: vanishing mass", k, grid.node(i));
    const Complex d1 = (phi1.values[k + 1] - phi1.values[k - 1]) / (2.0 * h);
    const Complex d2 = (phi1.values[k + 1] - 2.0 * phi1.values[k] + phi1.values[k - 1]) / (h * h);
    const double ratio = dm[k] / m[k];
    const Complex v = V.values[k];
    const Complex bracket = 2.0 * energy * v - v * v - kI * V.dvalues[k] -
                            kI * ratio * (energy - v);
    res[k - 1] = -d2 + ratio * d1 + bracket * phi1.values[k] -
                 (energy * energy - m[k] * m[k]) * phi1.values[k];
  }
  return res;
}

TransformResult similarity_transform(const MassProfile& profile, const ScalarField& phi1,
                                     TransformDirection direction) {
  const Grid& grid = phi1.grid;
  const auto m = profile.mass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());
  TransformResult out{ScalarField(grid), {}};
  for (int i = 0; i < grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(m[k] > kSingularMassGuard * mmax)) {
      out.excluded.push_back(k);
      continue;
    }
    const double root = std::sqrt(m[k]);
    out.field.values[k] = direction == TransformDirection::Forward
                              ? phi1.values[k] / root
                              : phi1.values[k] * root;
  }
  return out;
}

ScalarField reconstruct_phi2(const MassProfile& profile, const ComplexPotentialSamples& V,
                             double energy, const ScalarField& phi1,
                             const ScalarField* dphi1) {
  if (!(phi1.grid == V.grid))
    throw std::invalid_argument("reconstruct_phi2: grid mismatch");
  const Grid& grid = phi1.grid;
  const auto m = profile.mass_on(grid);
  const double mmax = *std::max_element(m.begin(), m.end());
  const double h = grid.spacing();
  const int n = grid.n;

  auto derivative_at = [&](int i) -> Complex {
    if (dphi1) return dphi1->values[static_cast<std::size_t>(i)];
    const auto& v = phi1.values;
    if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    if (i == n - 1)
      return (3.0 * v[static_cast<std::size_t>(n - 1)] - 4.0 * v[static_cast<std::size_t>(n - 2)] +
              v[static_cast<std::size_t>(n - 3)]) /
             (2.0 * h);
    return (v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
  };

  ScalarField phi2(grid);
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(m[k] > kSingularMassGuard * mmax))
      throw SingularNodeError("reconstruct_phi2: vanishing mass", k, grid.node(i));
    phi2.values[k] =
        ((energy - V.values[k]) * phi1.values[k] + kI * derivative_at(i)) / m[k];
  }
  return phi2;
}

PtSymmetryReport pt_symmetry_check(const BandedComplexOperator& op, PtInvolution gamma,
                                   bool with_spectrum) {
  if (!op.grid().symmetric_about_origin())
    throw std::invalid_argument("pt_symmetry_check: grid must be symmetric about 0");

  const int d = op.dim();
  const int bs = op.block_size();
  const int nodes = op.active_nodes();
  const Eigen::MatrixXcd H = op.to_dense();

  // B = Pi Gamma conj(H) Gamma Pi, with Pi the node reversal (components kept
  // in place) and Gamma either identity or sigma3 per node.
  auto gamma_sign = [&](int element) -> double {
    if (gamma == PtInvolution::Identity || bs == 1) return 1.0;
    return element % 2 == 0 ? 1.0 : -1.0;
  };
  auto reversed = [&](int element) {
    const int node = element / bs;
    const int comp = element % bs;
    return bs * (nodes - 1 - node) + comp;
  };

  double delta = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const Complex transformed =
          gamma_sign(r) * gamma_sign(c) * std::conj(H(reversed(r), reversed(c)));
      delta = std::max(delta, std::abs(transformed - H(r, c)));
    }
  }

  PtSymmetryReport report;
  report.delta = delta;
  if (with_spectrum) {
    const Spectrum spec = eigen_solve(op);
    report.n_eigenvalues = static_cast<int>(spec.eigenvalues.size());
    report.n_real = spec.n_real();
    report.n_conjugate_pairs = spec.n_conjugate_pairs();
    report.max_im_eig = spec.max_imag();
    report.conjugation_closed = spec.conjugation_closed(1e-10);
  }
  return report;
}

SpinorField spinor_from_eigenvector(const BandedComplexOperator& op,
                                    std::span<const Complex> eigenvector) {
  if (op.block_size() != 2)
    throw std::invalid_argument("spinor_from_eigenvector: operator is not block-2");
  if (eigenvector.size() != static_cast<std::size_t>(op.dim()))
    throw std::invalid_argument("spinor_from_eigenvector: vector length mismatch");
  SpinorField field(op.grid());
  const int off = op.active_offset();
  for (int i = 0; i < op.active_nodes(); ++i) {
    field.phi1[static_cast<std::size_t>(i + off)] = eigenvector[static_cast<std::size_t>(2 * i)];
    field.phi2[static_cast<std::size_t>(i + off)] = eigenvector[static_cast<std::size_t>(2 * i + 1)];
  }
  return field;
}

}  // namespace pdmdirac
