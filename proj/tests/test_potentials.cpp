#include <doctest.h>

#include <cmath>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/potentials.hpp"

using namespace pdmdirac;

TEST_SUITE_BEGIN("potentials");

TEST_CASE("constant mass gives zero schrodingerizing potential") {
  const auto p = MassProfile::custom([](double) { return 2.0; }, [](double) { return 0.0; },
                                     [](double) { return 0.0; }, -5.0, 5.0);
  const Grid g(-4.0, 4.0, 41);
  const auto V = schrodingerizing_potential(p, g);
  for (const auto& v : V.values) CHECK(std::abs(v) == 0.0);
  CHECK(V.analytic_derivative);
}

TEST_CASE("hyperbolic potential equals -i(a/4) tanh(ax)") {
  const double m0 = 1.7, a = 0.8;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);
  const Grid g(-6.0, 6.0, 97);
  const auto V = schrodingerizing_potential(p, g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    CHECK(V.values[static_cast<std::size_t>(i)].real() == 0.0);
    CHECK(V.values[static_cast<std::size_t>(i)].imag() ==
          doctest::Approx(-(a / 4.0) * std::tanh(a * x)).epsilon(1e-14));
  }
}

TEST_CASE("linear potential equals i/(2x) and x=0 is a singularity error") {
  const auto p = MassProfile::linear(2.5, 10.0);
  const Grid g(0.5, 9.5, 19);
  const auto V = schrodingerizing_potential(p, g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    CHECK(V.values[static_cast<std::size_t>(i)].imag() ==
          doctest::Approx(1.0 / (2.0 * x)).epsilon(1e-14));
  }
  const Grid with_origin(0.0, 10.0, 11);
  CHECK_THROWS_AS(schrodingerizing_potential(p, with_origin), SingularNodeError);
  try {
    schrodingerizing_potential(p, with_origin);
  } catch (const SingularNodeError& e) {
    CHECK(e.node() == 0);
    CHECK(e.position() == 0.0);
  }
}

TEST_CASE("general effective potential collapses to m^2 under the schrodingerizing V") {
  for (const auto& p : {MassProfile::hyperbolic(1.0, 1.0, -20.0, 20.0),
                        MassProfile::linear(1.0, 20.0)}) {
    const Grid g = p.kind() == ProfileKind::Linear ? Grid(0.01, 20.0, 500)
                                                   : Grid(-20.0, 20.0, 500);
    const auto V = schrodingerizing_potential(p, g);
    const auto m2 = effective_potential_reduced(p, g);
    for (double energy : {0.0, 1.0, 5.0}) {
      const auto veff = effective_potential_general(p, V, energy);
      CHECK(veff.excluded.empty());
      double worst = 0.0;
      for (int i = 0; i < g.n; ++i)
        worst = std::max(worst, std::abs(veff.values[static_cast<std::size_t>(i)] -
                                         m2[static_cast<std::size_t>(i)]));
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("V=0 constant mass gives m0^2; E term only enters the imaginary part") {
  const double m0 = 3.0;
  const auto p = MassProfile::custom([m0](double) { return m0; }, [](double) { return 0.0; },
                                     [](double) { return 0.0; }, -5.0, 5.0);
  const Grid g(-4.0, 4.0, 21);
  ComplexPotentialSamples zero(g);
  zero.analytic_derivative = true;
  const auto veff = effective_potential_general(p, zero, 7.0);
  for (const auto& v : veff.values) {
    CHECK(v.real() == doctest::Approx(m0 * m0));
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("V=0: imaginary part is -(m'/m) E nodewise") {
  const auto p = MassProfile::hyperbolic(2.0, 1.0, -10.0, 10.0);
  const Grid g(-6.0, 6.0, 61);
  ComplexPotentialSamples zero(g);
  zero.analytic_derivative = true;
  const double energy = 2.5;
  const auto veff = effective_potential_general(p, zero, energy);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    const double expected = -(p.dmass_at(x) / p.mass_at(x)) * energy;
    CHECK(veff.values[static_cast<std::size_t>(i)].imag() ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("V=0 hyperbolic at x=0: real part is m0^2 + a^2/4 (from m''(0) = -a^2 m0/2)") {
  const double m0 = 1.0, a = 1.0;
  const auto p = MassProfile::hyperbolic(m0, a, -10.0, 10.0);
  const Grid g(-2.0, 2.0, 5);  // node 2 sits at x = 0
  ComplexPotentialSamples zero(g);
  zero.analytic_derivative = true;
  const auto veff = effective_potential_general(p, zero, 3.0);
  CHECK(veff.values[2].real() == doctest::Approx(1.0 + 0.25).epsilon(1e-14));
  CHECK(veff.values[2].imag() == 0.0);
}

TEST_CASE("reduced potential is m^2, nonnegative") {
  const auto p = MassProfile::hyperbolic(2.0, 1.0, -10.0, 10.0);
  const Grid g(-8.0, 8.0, 33);
  const auto m2 = effective_potential_reduced(p, g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    CHECK(m2[static_cast<std::size_t>(i)] >= 0.0);
    CHECK(m2[static_cast<std::size_t>(i)] ==
          doctest::Approx(4.0 / std::cosh(x)).epsilon(1e-14));
  }
  const auto lin = MassProfile::linear(1.0, 10.0);
  const Grid gl(0.0, 10.0, 11);
  const auto x2 = effective_potential_reduced(lin, gl);
  for (int i = 0; i < gl.n; ++i)
    CHECK(x2[static_cast<std::size_t>(i)] ==
          doctest::Approx(gl.node(i) * gl.node(i)).epsilon(1e-14));
}

TEST_CASE("near-singular nodes are excluded and reported, not returned huge") {
  const auto p = MassProfile::linear(1.0, 10.0);
  const Grid g(0.0, 10.0, 11);
  ComplexPotentialSamples zero(g);
  zero.analytic_derivative = true;
  const auto veff = effective_potential_general(p, zero, 1.0);
  REQUIRE(veff.excluded.size() == 1);
  CHECK(veff.excluded[0] == 0);
  CHECK(veff.values[0] == Complex(0.0));
}

TEST_CASE("numeric derivative fallback is flagged in the output metadata") {
  const auto p = MassProfile::hyperbolic(1.0, 1.0, -10.0, 10.0);
  const Grid g(-6.0, 6.0, 1201);
  auto V = schrodingerizing_potential(p, g);
  ComplexPotentialSamples numeric = V;
  attach_numeric_derivative(numeric);
  CHECK(!numeric.analytic_derivative);
  const auto veff = effective_potential_general(p, numeric, 1.0);
  CHECK(!veff.analytic_derivative);
  // fallback still collapses to m^2 up to the stencil truncation
  const auto m2 = effective_potential_reduced(p, g);
  double worst = 0.0;
  for (int i = 1; i + 1 < g.n; ++i)
    worst = std::max(worst, std::abs(veff.values[static_cast<std::size_t>(i)] -
                                     m2[static_cast<std::size_t>(i)]));
  CHECK(worst < 1e-4);
  CHECK(worst > 1e-12);  // genuinely the numeric path
}

TEST_SUITE_END();
