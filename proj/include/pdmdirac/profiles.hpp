#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdmdirac/grid.hpp"

namespace pdmdirac {

enum class ProfileKind { Linear, HyperbolicSechRoot, Custom };

/// Closed-form mass distribution m(x) > 0 with analytic first and second
/// derivatives; the only physics input of the whole library.
///
/// Built-ins:
///   Linear              m(x) = mu * x        on [0, x_hi]   (m(0) = 0 is a
///                       declared boundary singularity, not a violation)
///   HyperbolicSechRoot  m(x) = m0 * sech(a x)^(1/2)  on [x_lo, x_hi]
///
/// Custom profiles must supply m, m', m''; the constructor cross-checks the
/// supplied derivatives against central differences of m at interior probe
/// points (relative error < 1e-6) and rejects profiles that are not strictly
/// positive in the interior.
class MassProfile {
 public:
  using Callable = std::function<double(double)>;

  static MassProfile linear(double mu, double x_hi);
  static MassProfile hyperbolic(double m0, double a, double x_lo, double x_hi);
  static MassProfile custom(Callable m, Callable dm, Callable d2m, double x_lo,
                            double x_hi);

  /// Parse from the JSON config form, e.g.
  ///   {"kind":"linear","mu":1.0,"xhi":20.0}
  ///   {"kind":"hyperbolic","m0":1.0,"a":1.0,"xlo":-20.0,"xhi":20.0}
  /// Unknown or missing keys are rejected.
  static MassProfile from_json_text(const std::string& text);

  ProfileKind kind() const noexcept { return kind_; }
  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }

  /// Linear slope; only meaningful for ProfileKind::Linear.
  double mu() const noexcept { return mu_; }
  /// Hyperbolic scale / inverse width; only meaningful for HyperbolicSechRoot.
  double m0() const noexcept { return m0_; }
  double width_a() const noexcept { return a_; }

  double mass_at(double x) const;
  double dmass_at(double x) const;
  double d2mass_at(double x) const;

  std::vector<double> mass_on(const Grid& grid) const;
  std::vector<double> dmass_on(const Grid& grid) const;
  std::vector<double> d2mass_on(const Grid& grid) const;

 private:
  MassProfile() = default;
  void check_domain(double x) const;
  void validate() const;

  ProfileKind kind_ = ProfileKind::Custom;
  double x_lo_ = 0.0;
  double x_hi_ = 0.0;
  double mu_ = 0.0;
  double m0_ = 0.0;
  double a_ = 0.0;
  Callable m_, dm_, d2m_;
};

}  // namespace pdmdirac
