#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdmdirac/dirac_system.hpp"
#include "pdmdirac/ivp.hpp"

using namespace pdmdirac;

namespace {
constexpr Complex kI(0.0, 1.0);

MassProfile constant_profile(double m0, double lo, double hi) {
  return MassProfile::custom([m0](double) { return m0; }, [](double) { return 0.0; },
                             [](double) { return 0.0; }, lo, hi);
}

ComplexPotentialSamples zero_potential(const Grid& g) {
  ComplexPotentialSamples V(g);
  V.analytic_derivative = true;
  return V;
}
}  // namespace

TEST_SUITE_BEGIN("dirac_system");

TEST_CASE("representation identities hold exactly") {
  const auto g0 = DiracRepresentation::gamma0();
  const auto g1 = DiracRepresentation::gamma1();
  const auto alpha = DiracRepresentation::alpha();
  const auto beta = DiracRepresentation::beta();
  CHECK((g0 * g0 - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((g1 * g1 + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alpha * beta + beta * alpha).cwiseAbs().maxCoeff() == 0.0);
  CHECK(alpha(0, 0) == Complex(1.0));
  CHECK(alpha(1, 1) == Complex(-1.0));
}

TEST_CASE("coupled operator block structure: off-diagonal mass is pointwise real") {
  const auto p = MassProfile::hyperbolic(1.3, 0.9, -10.0, 10.0);
  const Grid g(-6.0, 6.0, 33);
  const auto V = schrodingerizing_potential(p, g);
  const auto op = build_coupled_operator(p, V, g, Boundary::Dirichlet);
  const auto dense = op.to_dense();
  for (int i = 0; i < op.active_nodes(); ++i) {
    const double x = op.node_position(i);
    CHECK(dense(2 * i, 2 * i + 1) == Complex(p.mass_at(x)));
    CHECK(dense(2 * i + 1, 2 * i) == Complex(p.mass_at(x)));
    for (int j = 0; j < op.active_nodes(); ++j) {
      if (i == j) continue;
      CHECK(dense(2 * i, 2 * j + 1) == Complex(0.0));  // mass never couples neighbours
    }
  }
}

TEST_CASE("massless periodic operator: eigenvalues come in +-k pairs") {
  const Grid g(-8.0, 8.0, 64);
  std::vector<double> mass(static_cast<std::size_t>(g.n), 0.0);
  std::vector<Complex> V(static_cast<std::size_t>(g.n), Complex(0.0));
  const auto op = build_coupled_operator(mass, V, g, Boundary::Periodic);
  const auto spec = eigen_solve(op);
  // spectrum symmetric about zero
  for (const auto& l : spec.eigenvalues) {
    bool has_partner = false;
    for (const auto& m : spec.eigenvalues)
      if (std::abs(m + l) < 1e-9) has_partner = true;
    CHECK(has_partner);
  }
}

TEST_CASE("constant mass periodic dispersion: +-sqrt(kd^2 + m0^2)") {
  const double m0 = 1.5;
  const Grid g(-4.0, 4.0, 32);
  std::vector<double> mass(static_cast<std::size_t>(g.n), m0);
  std::vector<Complex> V(static_cast<std::size_t>(g.n), Complex(0.0));
  const auto op = build_coupled_operator(mass, V, g, Boundary::Periodic);
  const auto spec = eigen_solve(op);
  const double h = g.spacing();
  // every discrete wavenumber contributes +-sqrt(kd^2+m0^2)
  for (int m = 0; m < g.n; ++m) {
    const double k = 2.0 * std::numbers::pi * m / (g.n * h);
    const double kd = std::sin(k * h) / h;
    const double e = std::sqrt(kd * kd + m0 * m0);
    bool found_plus = false, found_minus = false;
    for (const auto& l : spec.eigenvalues) {
      if (std::abs(l - e) < 1e-8) found_plus = true;
      if (std::abs(l + e) < 1e-8) found_minus = true;
    }
    CHECK(found_plus);
    CHECK(found_minus);
  }
}

TEST_CASE("decoupled residual: constant-mass plane wave with E^2 = k^2 + m0^2") {
  const double m0 = 2.0;
  const Grid g(0.0, 4.0, 801);
  const auto p = constant_profile(m0, -1.0, 5.0);
  const auto V = zero_potential(g);
  const double k = 1.3;
  const double energy = std::sqrt(k * k + m0 * m0);
  ScalarField phi(g);
  for (int i = 0; i < g.n; ++i) phi.values[static_cast<std::size_t>(i)] = std::exp(kI * (k * g.node(i)));
  const auto res = decoupled_phi1_residual(p, V, energy, phi);
  // FD truncation only: h^2 k^4/12 per node
  const double h = g.spacing();
  const double bound = 2.0 * h * h * std::pow(k, 4) / 12.0 + 1e-12;
  for (const auto& r : res) CHECK(std::abs(r) < bound);
}

TEST_CASE("decoupled residual of an integrated solution tracks the integration tolerance") {
  const double m0 = 1.0, a = 1.0, energy = 1.3;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);
  const Grid g(-6.0, 6.0, 4001);
  const auto V = schrodingerizing_potential(p, g);
  // integrate Eq for phi1 directly and sample on the grid
  auto rhs = [&](double x, const OdeState& y, OdeState& d) {
    const double m = p.mass_at(x);
    const double dm = p.dmass_at(x);
    const double d2m = p.d2mass_at(x);
    const Complex v = kI * dm / (2.0 * m);
    const Complex dv = kI * (d2m * m - dm * dm) / (2.0 * m * m);
    const Complex bracket =
        2.0 * energy * v - v * v - kI * dv - kI * (dm / m) * (energy - v);
    d[0] = y[1];
    d[1] = (dm / m) * y[1] + (bracket - (energy * energy - m * m)) * y[0];
  };
  const auto nodes = g.nodes();
  const auto traj =
      integrate_ivp(rhs, {Complex(1.0, 0.0), Complex(0.0, 1.0)}, g.x_lo, g.x_hi, 1e-11, nodes);
  ScalarField phi(g);
  for (int i = 0; i < g.n; ++i) phi.values[static_cast<std::size_t>(i)] = traj.y[static_cast<std::size_t>(i)][0];
  const auto res = decoupled_phi1_residual(p, V, energy, phi);
  double amp = 0.0;
  for (const auto& v : phi.values) amp = std::max(amp, std::abs(v));
  double worst = 0.0;
  for (const auto& r : res) worst = std::max(worst, std::abs(r));
  // second-order FD evaluation of a tightly integrated solution
  const double h = g.spacing();
  CHECK(worst / amp < 5.0 * h * h);
  CHECK(worst / amp < 1e-4);
}

TEST_CASE("coupled eigenvector phi1 satisfies the decoupled equation to O(h^2)") {
  const double m0 = 1.0, a = 1.0;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);

  auto worst_residual = [&](int n) {
    const Grid g(-6.0, 6.0, n);
    const auto V = schrodingerizing_potential(p, g);
    const auto op = build_coupled_operator(p, V, g, Boundary::Dirichlet);
    const auto spec = eigen_solve(op, op.dim(), EigenSortMode::SmallestRealMagnitude);
    // take the lowest-|E| forward state; skip near-zero energies
    std::size_t pick = 0;
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j)
      if (spec.eigenvalues[j].real() > 0.3) {
        pick = j;
        break;
      }
    const double energy = spec.eigenvalues[pick].real();
    const auto field = spinor_from_eigenvector(op, spec.eigenvectors[pick]);
    ScalarField phi(g, field.phi1);
    const auto res = decoupled_phi1_residual(p, V, energy, phi);
    double amp = 0.0;
    for (const auto& v : phi.values) amp = std::max(amp, std::abs(v));
    double worst = 0.0;
    // skip the outermost interior nodes: the Dirichlet cut introduces a local
    // boundary error that the decoupled form does not model
    for (std::size_t i = 2; i + 2 < res.size(); ++i) worst = std::max(worst, std::abs(res[i]));
    return worst / amp;
  };

  const double r1 = worst_residual(301);
  const double r2 = worst_residual(601);
  CHECK(r1 < 1e-2);
  CHECK(r1 / r2 > 3.0);  // second-order shrink
}

TEST_CASE("similarity transform round trips and handles the linear singular node") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -10.0, 10.0);
  const Grid g(-5.0, 5.0, 41);
  ScalarField phi(g);
  for (int i = 0; i < g.n; ++i)
    phi.values[static_cast<std::size_t>(i)] = Complex(std::cos(g.node(i)), std::sin(0.5 * g.node(i)));
  const auto fwd = similarity_transform(p, phi, TransformDirection::Forward);
  CHECK(fwd.excluded.empty());
  const auto back = similarity_transform(p, fwd.field, TransformDirection::Inverse);
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(back.field.values[static_cast<std::size_t>(i)] -
                   phi.values[static_cast<std::size_t>(i)]) < 1e-15);

  const auto lin = MassProfile::linear(1.0, 10.0);
  const Grid gl(0.0, 10.0, 21);
  ScalarField one(gl, std::vector<Complex>(static_cast<std::size_t>(gl.n), Complex(1.0)));
  const auto t = similarity_transform(lin, one, TransformDirection::Forward);
  REQUIRE(t.excluded.size() == 1);
  CHECK(t.excluded[0] == 0);
  for (int i = 1; i < gl.n; ++i)
    CHECK(t.field.values[static_cast<std::size_t>(i)].real() ==
          doctest::Approx(1.0 / std::sqrt(gl.node(i))).epsilon(1e-14));
}

TEST_CASE("transformed reduced solution satisfies the m^2-collapsed equation") {
  // solve -phi'' + m^2 phi = E^2 phi by integration, transform back to phi1,
  // and check phi1 against the full decoupled equation with the
  // schrodingerizing V
  const double m0 = 1.0, a = 1.0, energy = 1.1;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);
  const Grid g(-5.0, 5.0, 2001);
  auto rhs = [&](double x, const OdeState& y, OdeState& d) {
    const double m = p.mass_at(x);
    d[0] = y[1];
    d[1] = (m * m - energy * energy) * y[0];
  };
  const auto nodes = g.nodes();
  const auto traj = integrate_ivp(rhs, {Complex(0.4, 0.0), Complex(0.0, 0.9)}, g.x_lo, g.x_hi,
                                  1e-11, nodes);
  ScalarField phi(g);
  for (int i = 0; i < g.n; ++i) phi.values[static_cast<std::size_t>(i)] = traj.y[static_cast<std::size_t>(i)][0];
  const auto phi1 = similarity_transform(p, phi, TransformDirection::Inverse);
  const auto V = schrodingerizing_potential(p, g);
  const auto res = decoupled_phi1_residual(p, V, energy, phi1.field);
  double worst = 0.0;
  for (const auto& r : res) worst = std::max(worst, std::abs(r));
  const double h = g.spacing();
  CHECK(worst < 10.0 * h * h);
}

TEST_CASE("phi2 reconstruction: plane waves and the rest-frame spinor") {
  const double m0 = 1.5;
  const Grid g(0.0, 6.0, 601);
  const auto p = constant_profile(m0, -1.0, 7.0);
  const auto V = zero_potential(g);

  const double k = 0.9;
  const double energy = std::sqrt(k * k + m0 * m0);
  ScalarField phi(g);
  ScalarField dphi(g);
  for (int i = 0; i < g.n; ++i) {
    phi.values[static_cast<std::size_t>(i)] = std::exp(kI * (k * g.node(i)));
    dphi.values[static_cast<std::size_t>(i)] = kI * k * phi.values[static_cast<std::size_t>(i)];
  }
  const auto phi2 = reconstruct_phi2(p, V, energy, phi, &dphi);
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(phi2.values[static_cast<std::size_t>(i)] -
                   ((energy - k) / m0) * phi.values[static_cast<std::size_t>(i)]) < 1e-12);

  // k = 0, E = m0: phi2 = phi1
  ScalarField rest(g, std::vector<Complex>(static_cast<std::size_t>(g.n), Complex(1.0)));
  ScalarField drest(g, std::vector<Complex>(static_cast<std::size_t>(g.n), Complex(0.0)));
  const auto phi2_rest = reconstruct_phi2(p, V, m0, rest, &drest);
  for (const auto& v : phi2_rest.values) CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("reconstructed pair satisfies the second coupled equation") {
  const double m0 = 1.0, a = 1.0, energy = 1.4;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);
  const Grid g(-4.0, 4.0, 3001);
  const auto V = schrodingerizing_potential(p, g);
  auto rhs = [&](double x, const OdeState& y, OdeState& d) {
    const double m = p.mass_at(x);
    const Complex v = kI * p.dmass_at(x) / (2.0 * m);
    d[0] = kI * ((energy - v) * y[0] - m * y[1]);
    d[1] = -kI * ((energy - v) * y[1] - m * y[0]);
  };
  const auto nodes = g.nodes();
  const auto traj = integrate_ivp(rhs, {Complex(1.0), Complex(0.2, 0.1)}, g.x_lo, g.x_hi,
                                  1e-12, nodes);
  ScalarField phi1(g), phi2_direct(g), dphi1(g);
  for (int i = 0; i < g.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    phi1.values[k] = traj.y[k][0];
    phi2_direct.values[k] = traj.y[k][1];
    const double m = p.mass_at(g.node(i));
    const Complex v = kI * p.dmass_at(g.node(i)) / (2.0 * m);
    dphi1.values[k] = kI * ((energy - v) * traj.y[k][0] - m * traj.y[k][1]);
  }
  const auto phi2 = reconstruct_phi2(p, V, energy, phi1, &dphi1);
  // reconstruction inverts Eq (11), so it must reproduce the integrated phi2
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(phi2.values[static_cast<std::size_t>(i)] -
                   phi2_direct.values[static_cast<std::size_t>(i)]) < 1e-9);
  // and the pair satisfies the second equation: i phi2' + m phi1 = (E-V) phi2
  const double h = g.spacing();
  double worst = 0.0;
  for (int i = 1; i + 1 < g.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Complex d2 = (phi2.values[k + 1] - phi2.values[k - 1]) / (2.0 * h);
    const double m = p.mass_at(g.node(i));
    const Complex v = kI * p.dmass_at(g.node(i)) / (2.0 * m);
    worst = std::max(worst,
                     std::abs(kI * d2 + m * phi1.values[k] - (energy - v) * phi2.values[k]));
  }
  CHECK(worst < 2.0 * h * h * 10.0 + 1e-8);
}

TEST_CASE("pt check: hyperbolic coupled operator has delta exactly zero") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -12.0, 12.0);
  const Grid g(-12.0, 12.0, 101);
  const auto V = schrodingerizing_potential(p, g);
  const auto op = build_coupled_operator(p, V, g, Boundary::Dirichlet);
  const auto report = pt_symmetry_check(op, PtInvolution::Identity, false);
  CHECK(report.delta == 0.0);
}

TEST_CASE("pt check: linear odd extension needs sigma3") {
  const double mu = 1.0;
  const Grid g(-10.0, 10.0, 100);  // even n: no x = 0 node
  std::vector<double> mass(static_cast<std::size_t>(g.n));
  std::vector<Complex> V(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    mass[static_cast<std::size_t>(i)] = mu * g.node(i);
    V[static_cast<std::size_t>(i)] = Complex(0.0, 1.0 / (2.0 * g.node(i)));
  }
  const auto op = build_coupled_operator(mass, V, g, Boundary::Dirichlet);
  CHECK(pt_symmetry_check(op, PtInvolution::Sigma3, false).delta == 0.0);
  CHECK(pt_symmetry_check(op, PtInvolution::Identity, false).delta > 0.1);
}

TEST_CASE("pt check: an imaginary even potential breaks the symmetry") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -12.0, 12.0);
  const Grid g(-10.0, 10.0, 81);
  auto V = schrodingerizing_potential(p, g);
  for (int i = 0; i < g.n; ++i)
    V.values[static_cast<std::size_t>(i)] += Complex(0.0, 1.0 / std::cosh(g.node(i)));
  const auto op = build_coupled_operator(p, V, g, Boundary::Dirichlet);
  CHECK(pt_symmetry_check(op, PtInvolution::Identity, false).delta > 0.1);
}

TEST_CASE("pt check rejects asymmetric grids") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -12.0, 12.0);
  const Grid g(-4.0, 6.0, 51);
  const auto V = schrodingerizing_potential(p, g);
  const auto op = build_coupled_operator(p, V, g, Boundary::Dirichlet);
  CHECK_THROWS_AS(pt_symmetry_check(op, PtInvolution::Identity, false), std::invalid_argument);
}

TEST_CASE("pt reality: decoupled hyperbolic operator has an all-real spectrum") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -12.0, 12.0);
  const Grid g(-12.0, 12.0, 402);
  const auto op = build_decoupled_operator(p, g, Boundary::Dirichlet);
  const auto report = pt_symmetry_check(op, PtInvolution::Identity, true);
  CHECK(report.delta == 0.0);
  CHECK(report.n_real == report.n_eigenvalues);
  CHECK(report.conjugation_closed);
}

TEST_SUITE_END();
