#pragma once

#include <utility>

#include "roadstate/core/veq.hpp"
#include "roadstate/net/shared_head.hpp"

namespace roadstate::train {

/// One field sample with its first derivatives; either read off a network
/// or built from an analytic manufactured solution in tests.
struct FieldPoint {
  double rho = 0.0, rho_t = 0.0, rho_x = 0.0;
  double v = 0.0, v_t = 0.0, v_x = 0.0;
};

/// First-order residual rho_t + d/dx (rho V(rho)) in chain-rule form:
/// rho_t + (V + rho V') rho_x.
double lwr_residual_value(const FieldPoint& p, double veq_value,
                          double veq_slope);

/// Conservative second-order residual pair. r1 is mass transport; r2 is the
/// transport of rho*w (w = v + 1 - V(rho)) minus the relaxation source
/// (rho / tau)(V(rho) - v).
std::pair<double, double> arz_residual_value(const FieldPoint& p,
                                             double veq_value,
                                             double veq_slope, double tau);

/// Residuals evaluated on a network at one point (exact derivatives).
double lwr_residual(const net::SharedHeadNet& net, const core::VeqModel& veq,
                    double t, double x);
std::pair<double, double> arz_residual(const net::SharedHeadNet& net,
                                       const core::VeqModel& veq, double tau,
                                       double t, double x);

}  // namespace roadstate::train
