#include "pdmdirac/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pdmdirac {

namespace {

double sech(double z) { return 1.0 / std::cosh(z); }

}  // namespace

MassProfile MassProfile::linear(double mu, double x_hi) {
  if (!(mu > 0.0)) throw std::invalid_argument("linear profile: mu must be > 0");
  if (!(x_hi > 0.0)) throw std::invalid_argument("linear profile: x_hi must be > 0");
  MassProfile p;
  p.kind_ = ProfileKind::Linear;
  p.mu_ = mu;
  p.x_lo_ = 0.0;
  p.x_hi_ = x_hi;
  p.m_ = [mu](double x) { return mu * x; };
  p.dm_ = [mu](double) { return mu; };
  p.d2m_ = [](double) { return 0.0; };
  p.validate();
  return p;
}

MassProfile MassProfile::hyperbolic(double m0, double a, double x_lo, double x_hi) {
  if (!(m0 > 0.0)) throw std::invalid_argument("hyperbolic profile: m0 must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("hyperbolic profile: a must be > 0");
  if (!(x_hi > x_lo)) throw std::invalid_argument("hyperbolic profile: empty domain");
  MassProfile p;
  p.kind_ = ProfileKind::HyperbolicSechRoot;
  p.m0_ = m0;
  p.a_ = a;
  p.x_lo_ = x_lo;
  p.x_hi_ = x_hi;
  // m = m0 sech(ax)^(1/2); m' = -(a/2) m tanh(ax);
  // m'' = m [ (a^2/4) tanh^2(ax) - (a^2/2) sech^2(ax) ].
  p.m_ = [m0, a](double x) { return m0 * std::sqrt(sech(a * x)); };
  p.dm_ = [m0, a](double x) {
    return -(a / 2.0) * m0 * std::sqrt(sech(a * x)) * std::tanh(a * x);
  };
  p.d2m_ = [m0, a](double x) {
    const double t = std::tanh(a * x);
    const double s = sech(a * x);
    return m0 * std::sqrt(s) * (0.25 * a * a * t * t - 0.5 * a * a * s * s);
  };
  p.validate();
  return p;
}

MassProfile MassProfile::custom(Callable m, Callable dm, Callable d2m, double x_lo,
                                double x_hi) {
  if (!m || !dm || !d2m)
    throw std::invalid_argument("custom profile: m, m' and m'' are all required");
  if (!(x_hi > x_lo)) throw std::invalid_argument("custom profile: empty domain");
  MassProfile p;
  p.kind_ = ProfileKind::Custom;
  p.x_lo_ = x_lo;
  p.x_hi_ = x_hi;
  p.m_ = std::move(m);
  p.dm_ = std::move(dm);
  p.d2m_ = std::move(d2m);
  p.validate();
  return p;
}

MassProfile MassProfile::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("profile spec: expected object");
  if (!j.contains("kind")) throw std::invalid_argument("profile spec: missing kind");
  const std::string kind = j.at("kind").get<std::string>();
  auto require_keys = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      bool known = key == "kind";
      for (const char* k : keys) known = known || key == k;
      if (!known)
        throw std::invalid_argument("profile spec: unknown key '" + key + "'");
    }
    for (const char* k : keys)
      if (!j.contains(k))
        throw std::invalid_argument(std::string("profile spec: missing key '") + k + "'");
  };
  if (kind == "linear") {
    require_keys({"mu", "xhi"});
    return linear(j.at("mu").get<double>(), j.at("xhi").get<double>());
  }
  if (kind == "hyperbolic") {
    require_keys({"m0", "a", "xlo", "xhi"});
    return hyperbolic(j.at("m0").get<double>(), j.at("a").get<double>(),
                      j.at("xlo").get<double>(), j.at("xhi").get<double>());
  }
  throw std::invalid_argument("profile spec: unknown kind '" + kind + "'");
}

void MassProfile::check_domain(double x) const {
  const double tol = 1e-12 * (x_hi_ - x_lo_);
  if (x < x_lo_ - tol || x > x_hi_ + tol)
    throw std::domain_error("mass profile evaluated outside declared domain: x = " +
                            std::to_string(x));
}

void MassProfile::validate() const {
  // Interior probes: positivity and derivative/finite-difference agreement.
  const int probes = 9;
  const double span = x_hi_ - x_lo_;
  const double h = 1e-5 * span;
  for (int i = 1; i <= probes; ++i) {
    const double x = x_lo_ + span * i / (probes + 1.0);
    const double m = m_(x);
    if (!(m > 0.0))
      throw std::invalid_argument("mass profile not positive in domain interior at x = " +
                                  std::to_string(x));
    if (x - h <= x_lo_ || x + h >= x_hi_) continue;
    const double fd1 = (m_(x + h) - m_(x - h)) / (2.0 * h);
    const double fd2 = (m_(x + h) - 2.0 * m + m_(x - h)) / (h * h);
    const double scale1 = std::max(std::abs(fd1), std::abs(m) / span);
    if (std::abs(fd1 - dm_(x)) > 1e-6 * scale1)
      throw std::invalid_argument("mass profile m' disagrees with finite differences at x = " +
                                  std::to_string(x));
    const double scale2 = std::max(std::abs(fd2), std::abs(m) / (span * span));
    // fd2 carries ~ m * eps / h^2 rounding noise; widen the gate accordingly.
    const double fd2_noise = 64.0 * std::abs(m) * 1e-16 / (h * h);
    if (std::abs(fd2 - d2m_(x)) > 1e-6 * scale2 + fd2_noise)
      throw std::invalid_argument("mass profile m'' disagrees with finite differences at x = " +
                                  std::to_string(x));
  }
}

double MassProfile::mass_at(double x) const {
  check_domain(x);
  return m_(x);
}

double MassProfile::dmass_at(double x) const {
  check_domain(x);
  return dm_(x);
}

double MassProfile::d2mass_at(double x) const {
  check_domain(x);
  return d2m_(x);
}

std::vector<double> MassProfile::mass_on(const Grid& grid) const {
  std::vector<double> out(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) out[static_cast<std::size_t>(i)] = mass_at(grid.node(i));
  return out;
}

std::vector<double> MassProfile::dmass_on(const Grid& grid) const {
  std::vector<double> out(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) out[static_cast<std::size_t>(i)] = dmass_at(grid.node(i));
  return out;
}

std::vector<double> MassProfile::d2mass_on(const Grid& grid) const {
  std::vector<double> out(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) out[static_cast<std::size_t>(i)] = d2mass_at(grid.node(i));
  return out;
}

}  // namespace pdmdirac
