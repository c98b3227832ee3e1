#include "pdmdirac/ivp.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

namespace ode = boost::numeric::odeint;

Trajectory integrate_ivp(const OdeRhs& f, OdeState y0, double x0, double x1, double tol,
                         std::span<const double> output_nodes) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_ivp: tol must be > 0");
  if (x0 == x1) throw std::invalid_argument("integrate_ivp: empty span");
  const double dir = x1 > x0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < output_nodes.size(); ++i) {
    const double xi = output_nodes[i];
    if (dir * (xi - x0) < 0.0 || dir * (xi - x1) > 0.0)
      throw std::invalid_argument("integrate_ivp: output node outside span");
    if (i > 0 && dir * (xi - output_nodes[i - 1]) < 0.0)
      throw std::invalid_argument("integrate_ivp: output nodes not ordered along span");
  }

  auto rhs = [&f](const OdeState& y, OdeState& dydx, double x) {
    dydx.resize(y.size());
    f(x, y, dydx);
  };

  const double span = std::abs(x1 - x0);
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<OdeState>());
  stepper.initialize(y0, x0, dir * std::min(1e-2 * span, span));

  Trajectory traj;
  traj.x.reserve(output_nodes.empty() ? 2 : output_nodes.size());
  OdeState scratch(y0.size());
  std::size_t next_node = 0;
  auto flush_nodes_until = [&](double x_reached) {
    while (next_node < output_nodes.size() &&
           dir * (output_nodes[next_node] - x_reached) <= 0.0) {
      stepper.calc_state(output_nodes[next_node], scratch);
      traj.x.push_back(output_nodes[next_node]);
      traj.y.push_back(scratch);
      ++next_node;
    }
  };

  if (output_nodes.empty()) {
    traj.x.push_back(x0);
    traj.y.push_back(y0);
  } else {
    // Dense interpolation is only valid after the first step; nodes sitting
    // exactly at x0 are served from the initial state.
    while (next_node < output_nodes.size() && output_nodes[next_node] == x0) {
      traj.x.push_back(x0);
      traj.y.push_back(y0);
      ++next_node;
    }
  }

  const double min_step = 1e-14 * std::max(1.0, span);
  const std::size_t max_steps = 10'000'000;
  std::size_t steps = 0;
  while (dir * (stepper.current_time() - x1) < 0.0) {
    if (++steps > max_steps)
      throw IntegrationError("integrate_ivp: step budget exhausted", stepper.current_time());
    if (std::abs(stepper.current_time_step()) < min_step)
      throw IntegrationError("integrate_ivp: step size collapsed", stepper.current_time());
    if (dir * (stepper.current_time() + stepper.current_time_step() - x1) > 0.0) {
      // Clamp the trial step so the span end is not overshot.
      const OdeState y_now = stepper.current_state();
      stepper.initialize(y_now, stepper.current_time(), x1 - stepper.current_time());
    }
    stepper.do_step(rhs);
    flush_nodes_until(stepper.current_time());
  }
  flush_nodes_until(x1);

  if (output_nodes.empty()) {
    stepper.calc_state(x1, scratch);
    traj.x.push_back(x1);
    traj.y.push_back(scratch);
  }
  return traj;
}

}  // namespace pdmdirac
