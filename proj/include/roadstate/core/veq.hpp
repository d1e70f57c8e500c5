#pragma once

#include <memory>
#include <string>

#include "roadstate/core/error.hpp"

namespace roadstate::core {

/// Equilibrium speed model V_eq(rho) in normalized units (V_eq(0) = 1,
/// V_eq(1) = 0, decreasing). Implementations must be pure and thread-safe.
class VeqModel {
public:
  virtual ~VeqModel() = default;

  /// V_eq at rho in [0,1].
  virtual double value(double rho) const = 0;

  /// dV_eq/drho at rho in [0,1].
  virtual double slope(double rho) const = 0;

  virtual std::string name() const = 0;
};

/// Linear fundamental diagram: V_eq(rho) = 1 - rho.
class Greenshields final : public VeqModel {
public:
  double value(double rho) const override { return 1.0 - rho; }
  double slope(double /*rho*/) const override { return -1.0; }
  std::string name() const override { return "greenshields"; }
};

inline void check_density_domain(double rho, const char* where) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw DomainError(std::string(where) + ": density must lie in [0,1], got " +
                      std::to_string(rho));
}

/// Greenshields equilibrium speed, domain-checked.
inline double greenshields_veq(double rho) {
  check_density_domain(rho, "greenshields_veq");
  return 1.0 - rho;
}

/// Traffic pressure p(rho) = V_max - V_eq(rho) (normalized V_max = 1).
inline double pressure(const VeqModel& veq, double rho) {
  check_density_domain(rho, "pressure");
  return 1.0 - veq.value(rho);
}

/// LWR flux rho * V_eq(rho).
inline double lwr_flux(const VeqModel& veq, double rho) {
  check_density_domain(rho, "lwr_flux");
  return rho * veq.value(rho);
}

}  // namespace roadstate::core
