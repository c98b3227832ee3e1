#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pdmdirac/grid.hpp"

namespace pdmdirac {

using OdeState = std::vector<Complex>;
/// Right-hand side f(x, y, dy/dx); dy/dx is preallocated to y's size.
using OdeRhs = std::function<void(double, const OdeState&, OdeState&)>;

struct Trajectory {
  std::vector<double> x;
  std::vector<OdeState> y;

  const OdeState& front() const { return y.front(); }
  const OdeState& back() const { return y.back(); }
};

/// Adaptive Dormand-Prince integration of y' = f(x, y) from x0 to x1 (either
/// direction) with local error <= tol, densely evaluated at `output_nodes`
/// (which must lie in the span and be ordered in the direction of travel;
/// when empty, only x0 and x1 are reported).  Step-size collapse raises
/// IntegrationError carrying the location.
Trajectory integrate_ivp(const OdeRhs& f, OdeState y0, double x0, double x1, double tol,
                         std::span<const double> output_nodes = {});

}  // namespace pdmdirac
