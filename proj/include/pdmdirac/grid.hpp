#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace pdmdirac {

using Complex = std::complex<double>;

/// Uniform grid on [x_lo, x_hi] including both endpoints.
///
/// Node positions use the barycentric form ((n-1-i)*x_lo + i*x_hi)/(n-1) so
/// that a grid with x_lo == -x_hi has exactly mirror-symmetric nodes in
/// floating point; the PT checks rely on that.
struct Grid {
  double x_lo;
  double x_hi;
  int n;

  Grid(double lo, double hi, int count) : x_lo(lo), x_hi(hi), n(count) {
    if (count < 3) throw std::invalid_argument("Grid: need n >= 3");
    if (!(hi > lo)) throw std::invalid_argument("Grid: need x_hi > x_lo");
  }

  double spacing() const { return (x_hi - x_lo) / (n - 1); }

  double node(int i) const {
    return (static_cast<double>(n - 1 - i) * x_lo + static_cast<double>(i) * x_hi) /
           static_cast<double>(n - 1);
  }

  std::vector<double> nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = node(i);
    return xs;
  }

  bool symmetric_about_origin() const {
    return std::abs(x_lo + x_hi) <= 1e-14 * (x_hi - x_lo);
  }

  bool operator==(const Grid& other) const {
    return x_lo == other.x_lo && x_hi == other.x_hi && n == other.n;
  }
};

/// One-component complex samples, one value per grid node.
struct ScalarField {
  Grid grid;
  std::vector<Complex> values;

  ScalarField(const Grid& g) : grid(g), values(static_cast<std::size_t>(g.n)) {}
  ScalarField(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<std::size_t>(g.n))
      throw std::invalid_argument("ScalarField: value count != node count");
  }
};

/// Two-component spinor samples (phi1, phi2) on a grid.
struct SpinorField {
  Grid grid;
  std::vector<Complex> phi1;
  std::vector<Complex> phi2;

  SpinorField(const Grid& g)
      : grid(g),
        phi1(static_cast<std::size_t>(g.n)),
        phi2(static_cast<std::size_t>(g.n)) {}
  SpinorField(const Grid& g, std::vector<Complex> p1, std::vector<Complex> p2)
      : grid(g), phi1(std::move(p1)), phi2(std::move(p2)) {
    if (phi1.size() != phi2.size() || phi1.size() != static_cast<std::size_t>(g.n))
      throw std::invalid_argument("SpinorField: component length != node count");
  }
};

}  // namespace pdmdirac
