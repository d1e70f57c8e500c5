#include "roadstate/train/residual.hpp"

namespace roadstate::train {

double lwr_residual_value(const FieldPoint& p, double veq_value,
                          double veq_slope) {
  return p.rho_t + (veq_value + p.rho * veq_slope) * p.rho_x;
}

std::pair<double, double> arz_residual_value(const FieldPoint& p,
                                             double veq_value,
                                             double veq_slope, double tau) {
  if (!(tau > 0.0)) throw ConfigError("arz_residual: tau must be positive");
  const double w = p.v + 1.0 - veq_value;       // v + p(rho)
  const double w_t = p.v_t - veq_slope * p.rho_t;
  const double w_x = p.v_x - veq_slope * p.rho_x;

  const double r1 = p.rho_t + p.rho_x * p.v + p.rho * p.v_x;
  const double r2 = p.rho_t * w + p.rho * w_t + p.rho_x * p.v * w +
                    p.rho * p.v_x * w + p.rho * p.v * w_x -
                    (p.rho / tau) * (veq_value - p.v);
  return {r1, r2};
}

namespace {
FieldPoint sample_net(const net::SharedHeadNet& net, double t, double x) {
  const auto d = net.forward_with_input_derivs(t, x);
  FieldPoint p;
  p.rho = d.rho;
  p.rho_t = d.rho_t;
  p.rho_x = d.rho_x;
  p.v = d.v;
  p.v_t = d.v_t;
  p.v_x = d.v_x;
  return p;
}
}  // namespace

double lwr_residual(const net::SharedHeadNet& net, const core::VeqModel& veq,
                    double t, double x) {
  const FieldPoint p = sample_net(net, t, x);
  return lwr_residual_value(p, veq.value(p.rho), veq.slope(p.rho));
}

std::pair<double, double> arz_residual(const net::SharedHeadNet& net,
                                       const core::VeqModel& veq, double tau,
                                       double t, double x) {
  const FieldPoint p = sample_net(net, t, x);
  return arz_residual_value(p, veq.value(p.rho), veq.slope(p.rho), tau);
}

}  // namespace roadstate::train
