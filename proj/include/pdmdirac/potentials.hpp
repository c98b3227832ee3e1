#pragma once

#include <vector>

#include "pdmdirac/grid.hpp"
#include "pdmdirac/profiles.hpp"

namespace pdmdirac {

/// Complex potential sampled on a grid, optionally with its derivative.
/// analytic_derivative records whether dvalues came from a closed form or
/// from the second-order central-difference fallback.
struct ComplexPotentialSamples {
  Grid grid;
  std::vector<Complex> values;
  std::vector<Complex> dvalues;
  bool analytic_derivative = false;

  explicit ComplexPotentialSamples(const Grid& g)
      : grid(g), values(static_cast<std::size_t>(g.n)), dvalues(static_cast<std::size_t>(g.n)) {}
};

/// Relative mass threshold below which a node counts as singular.
inline constexpr double kSingularMassGuard = 1e-12;

/// V(x) = i m'(x) / (2 m(x)), the purely imaginary choice that collapses the
/// effective potential to m^2.  The derivative V' = i (m'' m - m'^2)/(2 m^2)
/// is attached in closed form.  Throws SingularNodeError where m falls below
/// the guard (e.g. x = 0 for the linear profile).
ComplexPotentialSamples schrodingerizing_potential(const MassProfile& profile,
                                                   const Grid& grid);

/// Central-difference derivative fallback for externally supplied potentials.
void attach_numeric_derivative(ComplexPotentialSamples& samples);

struct EffectivePotentialField {
  Grid grid;
  std::vector<Complex> values;          // zero at excluded nodes
  std::vector<std::size_t> excluded;    // nodes failing the mass guard
  bool analytic_derivative = false;     // provenance of the V' used

  explicit EffectivePotentialField(const Grid& g)
      : grid(g), values(static_cast<std::size_t>(g.n)) {}
};

/// General effective potential
///   m^2 + (3/4)(m'/m)^2 - (1/2) m''/m + (2V - i m'/m) E - V^2 - i V' + i (m'/m) V
/// evaluated nodewise.  Nodes with m < guard * max(m) are excluded and
/// reported instead of producing huge values.
EffectivePotentialField effective_potential_general(const MassProfile& profile,
                                                    const ComplexPotentialSamples& V,
                                                    double energy);

/// Reduced effective potential m(x)^2 (the collapse of the general form under
/// the schrodingerizing choice of V).
std::vector<double> effective_potential_reduced(const MassProfile& profile,
                                                const Grid& grid);

}  // namespace pdmdirac
