#include "pdmdirac/foldy_wouthuysen.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

namespace {

constexpr Complex kI(0.0, 1.0);

BandedComplexOperator momentum_operator(const Grid& grid, Boundary boundary) {
  return first_derivative_operator(grid, boundary).scaled(-kI);
}

/// Left-to-right product of a diag/momentum chain.  Every assembly below goes
/// through this helper so that algebraically equal chains produce bitwise
/// equal matrices.
BandedComplexOperator chain(const std::vector<const BandedComplexOperator*>& ops) {
  BandedComplexOperator acc = *ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) acc = acc.times(*ops[i]);
  return acc;
}

double window_frobenius(const BandedComplexOperator& op, double lo, double hi) {
  const Eigen::MatrixXcd dense = op.to_dense();
  const int bs = op.block_size();
  std::vector<int> keep;
  for (int node = 0; node < op.active_nodes(); ++node) {
    const double x = op.node_position(node);
    if (x >= lo && x <= hi)
      for (int c = 0; c < bs; ++c) keep.push_back(bs * node + c);
  }
  if (keep.size() < 8)
    throw std::invalid_argument("commutator window too thin for the requested grid");
  double sum = 0.0;
  for (int r : keep)
    for (int c : keep) sum += std::norm(dense(r, c));
  return std::sqrt(sum);
}

}  // namespace

bool OrderingParams::satisfies_constraint(double tol) const {
  return std::abs(alpha + beta + gamma + 1.0) <= tol;
}

std::vector<double> mass_power_samples(const MassProfile& profile, const Grid& grid,
                                       double power) {
  const auto m = profile.mass_on(grid);
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m[i] > 0.0) && power < 0.0)
      throw SingularNodeError("mass power: vanishing mass", i, grid.node(static_cast<int>(i)));
    if (power == 0.0)
      out[i] = 1.0;
    else if (power == 1.0)
      out[i] = m[i];
    else if (power == -1.0)
      out[i] = 1.0 / m[i];
    else if (power == 0.5)
      out[i] = std::sqrt(m[i]);
    else if (power == -0.5)
      out[i] = 1.0 / std::sqrt(m[i]);
    else
      out[i] = std::pow(m[i], power);
  }
  return out;
}

BandedComplexOperator von_roos_keo(const MassProfile& profile, const OrderingParams& ord,
                                   const Grid& grid, Boundary boundary) {
  if (!ord.satisfies_constraint())
    throw std::invalid_argument("von_roos_keo: alpha + beta + gamma must equal -1");
  const auto p = momentum_operator(grid, boundary);
  const auto ma = diagonal_operator(grid, boundary, std::span<const double>(
                                        mass_power_samples(profile, grid, ord.alpha)));
  const auto mb = diagonal_operator(grid, boundary, std::span<const double>(
                                        mass_power_samples(profile, grid, ord.beta)));
  const auto mc = diagonal_operator(grid, boundary, std::span<const double>(
                                        mass_power_samples(profile, grid, ord.gamma)));
  const auto forward = chain({&ma, &p, &mb, &p, &mc});
  const auto reversed = chain({&mc, &p, &mb, &p, &ma});
  return forward.plus(reversed).scaled(0.25);
}

BandedComplexOperator li_kuhn_keo(const MassProfile& profile, const Grid& grid,
                                  Boundary boundary) {
  const auto p = momentum_operator(grid, boundary);
  const auto ones = diagonal_operator(
      grid, boundary, std::span<const double>(mass_power_samples(profile, grid, 0.0)));
  const auto mhalf = diagonal_operator(
      grid, boundary, std::span<const double>(mass_power_samples(profile, grid, -0.5)));
  const auto first = chain({&ones, &p, &mhalf, &p, &mhalf});
  const auto second = chain({&mhalf, &p, &mhalf, &p, &ones});
  return first.plus(second).scaled(0.25);
}

BandedComplexOperator nonrelativistic_hamiltonian(const MassProfile& profile,
                                                  std::span<const double> V_real_on_grid,
                                                  const Grid& grid, Boundary boundary) {
  if (V_real_on_grid.size() != static_cast<std::size_t>(grid.n))
    throw std::invalid_argument("nonrelativistic_hamiltonian: V sample length != node count");
  const auto keo = li_kuhn_keo(profile, grid, boundary);
  const auto v = diagonal_operator(grid, boundary, V_real_on_grid);
  return keo.plus(v);
}

BandedComplexOperator s_operator(const MassProfile& profile, const Grid& grid,
                                 Boundary boundary) {
  // S = -(1/2) beta alpha (x) T with T = m^-1/2 (d/dx) m^-1/2 and
  // beta alpha = [[0,-1],[1,0]], i.e. blocks (0,1) = +T/2, (1,0) = -T/2.
  const auto d1 = first_derivative_operator(grid, boundary);
  const auto mhalf = diagonal_operator(
      grid, boundary, std::span<const double>(mass_power_samples(profile, grid, -0.5)));
  const auto t = chain({&mhalf, &d1, &mhalf});
  const auto upper = BandedComplexOperator::from_scalar_block(t, 0, 1, Complex(0.5));
  const auto lower = BandedComplexOperator::from_scalar_block(t, 1, 0, Complex(-0.5));
  return upper.plus(lower);
}

BandedComplexOperator beta_mass_operator(const MassProfile& profile, const Grid& grid,
                                         Boundary boundary) {
  const auto m = diagonal_operator(
      grid, boundary, std::span<const double>(mass_power_samples(profile, grid, 1.0)));
  const auto upper = BandedComplexOperator::from_scalar_block(m, 0, 1, Complex(1.0));
  const auto lower = BandedComplexOperator::from_scalar_block(m, 1, 0, Complex(1.0));
  return upper.plus(lower);
}

BandedComplexOperator alpha_momentum_operator(const Grid& grid, Boundary boundary) {
  const auto p = momentum_operator(grid, boundary);
  const auto upper = BandedComplexOperator::from_scalar_block(p, 0, 0, Complex(1.0));
  const auto lower = BandedComplexOperator::from_scalar_block(p, 1, 1, Complex(-1.0));
  return upper.plus(lower);
}

CommutatorReport commutator_checks(const MassProfile& profile, const Grid& grid,
                                   double window_lo, double window_hi, Boundary boundary) {
  if (!(window_hi > window_lo))
    throw std::invalid_argument("commutator_checks: empty window");

  const auto s = s_operator(profile, grid, boundary);
  const auto bm = beta_mass_operator(profile, grid, boundary);
  const auto ap = alpha_momentum_operator(grid, boundary);

  const auto c1 = s.times(bm).plus(bm.times(s).scaled(-1.0));            // [S, beta m]
  const auto c2 = s.times(c1).plus(c1.times(s).scaled(-1.0)).scaled(-0.5);  // -(1/2)[S,[S,beta m]]

  const auto keo_scalar = li_kuhn_keo(profile, grid, boundary);
  const auto keo_beta =
      BandedComplexOperator::from_scalar_block(keo_scalar, 0, 1, Complex(1.0))
          .plus(BandedComplexOperator::from_scalar_block(keo_scalar, 1, 0, Complex(1.0)));

  const auto full_h = ap.plus(bm);
  const auto c1_full = s.times(full_h).plus(full_h.times(s).scaled(-1.0));

  CommutatorReport report;
  report.window_lo = window_lo;
  report.window_hi = window_hi;
  const double norm_bm = window_frobenius(bm, window_lo, window_hi);
  report.c1_deviation =
      window_frobenius(c1.scaled(kI).plus(ap), window_lo, window_hi) / norm_bm;
  report.c2_deviation = window_frobenius(c2.plus(keo_beta), window_lo, window_hi) / norm_bm;
  report.c1_full_h_deviation =
      window_frobenius(c1_full.scaled(kI).plus(ap), window_lo, window_hi) / norm_bm;
  return report;
}

}  // namespace pdmdirac
