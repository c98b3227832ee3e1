#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdmdirac/banded.hpp"
#include "pdmdirac/eigensolve.hpp"
#include "pdmdirac/errors.hpp"
#include "pdmdirac/ivp.hpp"

using namespace pdmdirac;

namespace {
constexpr Complex kI(0.0, 1.0);
}

TEST_SUITE_BEGIN("discretization");

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 1.0, 10), std::invalid_argument);
  const Grid g(-3.0, 3.0, 7);
  CHECK(g.spacing() == doctest::Approx(1.0));
  CHECK(g.node(0) == -3.0);
  CHECK(g.node(6) == 3.0);
  CHECK(g.symmetric_about_origin());
  for (int i = 0; i < g.n; ++i) CHECK(g.node(g.n - 1 - i) == -g.node(i));
}

TEST_CASE("second derivative of a constant vanishes (periodic)") {
  const Grid g(0.0, 1.0, 16);
  const auto op = second_derivative_operator(g, Boundary::Periodic);
  std::vector<Complex> ones(static_cast<std::size_t>(op.dim()), Complex(1.0));
  for (const auto& v : op.apply(ones)) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("second derivative reproduces the discrete dispersion on sin(kx)") {
  // periodic wrap convention: period = n*h, so commensurate k = 2 pi m/(n h)
  const Grid g(0.0, 1.0, 64);
  const auto op = second_derivative_operator(g, Boundary::Periodic);
  const double h = g.spacing();
  const double k = 2.0 * std::numbers::pi * 5.0 / (g.n * h);
  std::vector<Complex> wave(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) wave[static_cast<std::size_t>(i)] = std::sin(k * i * h);
  const auto out = op.apply(wave);
  const double expected = (2.0 - 2.0 * std::cos(k * h)) / (h * h);
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(out[static_cast<std::size_t>(i)] - expected * wave[static_cast<std::size_t>(i)]) <
          1e-10 * expected);
  CHECK(expected == doctest::Approx(k * k).epsilon(0.05));
}

TEST_CASE("Dirichlet lowest eigenvalue of -d2/dx2 on [0,pi] is 1 within O(h^2)") {
  const Grid g(0.0, std::numbers::pi, 2000);
  const auto op = second_derivative_operator(g, Boundary::Dirichlet);
  const auto spec = eigen_solve(op, 3);
  CHECK(spec.eigenvalues[0].real() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(spec.eigenvalues[1].real() == doctest::Approx(4.0).epsilon(1e-5));
  for (const auto& c : spec.classification) CHECK(c == EigenClassification::Real);
  CHECK(spec.max_residual() < 1e-8);
}

TEST_CASE("stencil eigenvalue error shrinks x4 when h halves") {
  auto lowest_err = [](int n) {
    const Grid g(0.0, std::numbers::pi, n);
    const auto spec = eigen_solve(second_derivative_operator(g, Boundary::Dirichlet), 1);
    return std::abs(spec.eigenvalues[0].real() - 1.0);
  };
  const double e1 = lowest_err(250);
  const double e2 = lowest_err(499);  // h exactly halves: h(499) = h(250)/2
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("first derivative: constants, ramps and plane waves") {
  const Grid g(0.0, 1.0, 32);
  const auto op = first_derivative_operator(g, Boundary::Periodic);
  std::vector<Complex> ones(static_cast<std::size_t>(g.n), Complex(1.0));
  for (const auto& v : op.apply(ones)) CHECK(std::abs(v) == 0.0);

  const auto opd = first_derivative_operator(g, Boundary::Dirichlet);
  std::vector<Complex> ramp(static_cast<std::size_t>(opd.dim()));
  for (int i = 0; i < opd.dim(); ++i) ramp[static_cast<std::size_t>(i)] = 3.0 * opd.node_position(i);
  const auto out = opd.apply(ramp);
  for (int i = 1; i + 1 < opd.dim(); ++i)
    CHECK(out[static_cast<std::size_t>(i)].real() == doctest::Approx(3.0).epsilon(1e-12));

  // e^{ikx} is an eigenvector with eigenvalue i sin(kh)/h
  const double h = g.spacing();
  const double k = 2.0 * std::numbers::pi * 3.0 / (g.n * h);
  std::vector<Complex> wave(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) wave[static_cast<std::size_t>(i)] = std::exp(kI * (k * i * h));
  const auto dw = op.apply(wave);
  const Complex expected = kI * std::sin(k * h) / h;
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(dw[static_cast<std::size_t>(i)] - expected * wave[static_cast<std::size_t>(i)]) < 1e-12);
  // antisymmetric under transpose for periodic (entries are real)
  const auto transpose = op.adjoint();  // conj == id on real entries
  for (int r = 0; r < g.n; ++r)
    for (int o = -1; o <= 1; ++o)
      CHECK(transpose.band_entry(r, o) == -op.band_entry(r, o));
}

TEST_CASE("banded algebra: apply rejects wrong lengths, dense matches apply") {
  const Grid g(0.0, 1.0, 12);
  const auto op = second_derivative_operator(g, Boundary::Dirichlet);
  std::vector<Complex> wrong(static_cast<std::size_t>(op.dim()) + 1);
  CHECK_THROWS_AS(op.apply(wrong), std::invalid_argument);

  const auto dense = op.to_dense();
  std::vector<Complex> v(static_cast<std::size_t>(op.dim()));
  for (int i = 0; i < op.dim(); ++i) v[static_cast<std::size_t>(i)] = Complex(std::sin(i + 1.0), 0.3 * i);
  const auto banded_result = op.apply(v);
  for (int r = 0; r < op.dim(); ++r) {
    Complex acc(0.0);
    for (int c = 0; c < op.dim(); ++c) acc += dense(r, c) * v[static_cast<std::size_t>(c)];
    CHECK(std::abs(acc - banded_result[static_cast<std::size_t>(r)]) < 1e-13);
  }
}

TEST_CASE("banded product equals dense product") {
  const Grid g(0.0, 1.0, 10);
  for (Boundary b : {Boundary::Dirichlet, Boundary::Periodic}) {
    const auto d1 = first_derivative_operator(g, b);
    std::vector<double> m(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) m[static_cast<std::size_t>(i)] = 1.0 + 0.1 * i;
    const auto diag = diagonal_operator(g, b, std::span<const double>(m));
    const auto prod = d1.times(diag).times(d1);
    const Eigen::MatrixXcd expected = d1.to_dense() * diag.to_dense() * d1.to_dense();
    CHECK((prod.to_dense() - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("triplet export round-trips the matrix") {
  const Grid g(0.0, 1.0, 8);
  const auto op = first_derivative_operator(g, Boundary::Periodic);
  std::ostringstream os;
  op.write_triplets(os);
  const auto dense = op.to_dense();
  std::istringstream is(os.str());
  int r, c;
  double re, im;
  int count = 0;
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(op.dim(), op.dim());
  while (is >> r >> c >> re >> im) {
    rebuilt(r, c) += Complex(re, im);
    ++count;
  }
  CHECK(count == 2 * op.dim());
  CHECK((rebuilt - dense).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigen_solve classifies Hermitian input as real") {
  const Grid g(0.0, 2.0, 40);
  auto op = second_derivative_operator(g, Boundary::Periodic);  // complex-Hermitian path
  const auto spec = eigen_solve(op);
  CHECK(spec.n_real() == spec.eigenvalues.size());
  CHECK(spec.max_imag() == 0.0);
}

TEST_CASE("spectrum of a PT-symmetric real matrix is conjugation closed") {
  // -d2/dx2 + i*odd(x): real spectrum is not guaranteed, closure is
  const Grid g(-5.0, 5.0, 80);
  auto op = second_derivative_operator(g, Boundary::Dirichlet);
  for (int i = 0; i < op.active_nodes(); ++i) {
    const double x = op.node_position(i);
    op.add(i, 0, Complex(0.0, 2.0 * std::sin(x)));  // imaginary odd potential
  }
  const auto spec = eigen_solve(op);
  CHECK(spec.conjugation_closed(1e-10));
}

TEST_CASE("integrate_ivp: constants, sine, and plane-wave dispersion") {
  auto zero_rhs = [](double, const OdeState& y, OdeState& d) {
    d.assign(y.size(), Complex(0.0));
  };
  const auto traj = integrate_ivp(zero_rhs, {Complex(2.5, -1.0)}, 0.0, 3.0, 1e-12);
  CHECK(std::abs(traj.back()[0] - Complex(2.5, -1.0)) < 1e-14);

  auto shm = [](double, const OdeState& y, OdeState& d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  const double half_pi = std::numbers::pi / 2.0;
  const auto sine = integrate_ivp(shm, {Complex(0.0), Complex(1.0)}, 0.0, half_pi, 1e-12);
  CHECK(std::abs(sine.back()[0] - 1.0) < 1e-10);

  // Eq of motion -phi'' + m0^2 phi = E^2 phi: plane wave with k = sqrt(E^2-m0^2)
  const double m0 = 1.0, E = 2.0;
  const double k = std::sqrt(E * E - m0 * m0);
  auto kg = [m0, E](double, const OdeState& y, OdeState& d) {
    d[0] = y[1];
    d[1] = (m0 * m0 - E * E) * y[0];
  };
  const auto wave = integrate_ivp(kg, {Complex(1.0), kI * k}, 0.0, 5.0, 1e-12);
  CHECK(std::abs(wave.back()[0] - std::exp(kI * (k * 5.0))) < 1e-9);
}

TEST_CASE("integrate_ivp honors requested output nodes") {
  auto shm = [](double, const OdeState& y, OdeState& d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  std::vector<double> nodes = {0.0, 0.5, 1.0, 1.5, 2.0};
  const auto traj = integrate_ivp(shm, {Complex(0.0), Complex(1.0)}, 0.0, 2.0, 1e-11, nodes);
  REQUIRE(traj.x.size() == nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CHECK(traj.x[i] == nodes[i]);
    CHECK(std::abs(traj.y[i][0] - std::sin(nodes[i])) < 1e-9);
  }
}

TEST_CASE("integrate_ivp reversed span recovers the initial state within 10x tol") {
  auto rhs = [](double x, const OdeState& y, OdeState& d) {
    d[0] = y[1];
    d[1] = (std::cos(2.0 * x) - 4.0) * y[0];
  };
  const OdeState y0 = {Complex(0.7, 0.1), Complex(-0.2, 0.4)};
  const double tol = 1e-10;
  const auto fwd = integrate_ivp(rhs, y0, 0.0, 6.0, tol);
  const auto bwd = integrate_ivp(rhs, fwd.back(), 6.0, 0.0, tol);
  CHECK(std::abs(bwd.back()[0] - y0[0]) < 10.0 * tol * 100.0);
  CHECK(std::abs(bwd.back()[1] - y0[1]) < 10.0 * tol * 100.0);
}

TEST_CASE("integrate_ivp reports step collapse near a singularity") {
  auto rhs = [](double x, const OdeState& y, OdeState& d) {
    d[0] = y[0] / (1.0 - x);  // blows up at x = 1
  };
  CHECK_THROWS_AS(integrate_ivp(rhs, {Complex(1.0)}, 0.0, 2.0, 1e-10), IntegrationError);
}

TEST_SUITE_END();
