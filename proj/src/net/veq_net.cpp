#include "roadstate/net/veq_net.hpp"

namespace roadstate::net {

namespace {
std::vector<int> psi_widths(const std::vector<int>& hidden) {
  std::vector<int> widths;
  widths.reserve(hidden.size() + 2);
  widths.push_back(1);
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(1);
  return widths;
}
}  // namespace

VeqNet::VeqNet() : VeqNet(std::vector<int>{32, 32}) {}

VeqNet::VeqNet(const std::vector<int>& hidden)
    : psi_(psi_widths(hidden), /*linear_output=*/true) {
  if (hidden.empty()) throw ConfigError("VeqNet: psi needs hidden layers");
}

void VeqNet::init(std::uint64_t seed) { psi_.init(seed); }

void VeqNet::eval_batch(const Eigen::RowVectorXd& rho, BatchEval& out) const {
  out.rho = rho;
  Channels input;
  input.value = rho;
  input.tangent.assign(1, Eigen::RowVectorXd::Ones(rho.size()));
  const Channels psi_out = psi_.forward(input, &out.tape);
  out.psi = psi_out.value;
  out.psi_p = psi_out.tangent[0];

  const auto r = rho.array();
  out.value = ((1.0 + out.psi.array() * r) * (1.0 - r)).matrix();
  out.slope = ((out.psi_p.array() * r + out.psi.array()) * (1.0 - r) -
               (1.0 + out.psi.array() * r))
                  .matrix();
}

std::pair<double, double> VeqNet::forward(double rho) const {
  BatchEval eval;
  Eigen::RowVectorXd r(1);
  r[0] = rho;
  eval_batch(r, eval);
  return {eval.value[0], eval.slope[0]};
}

double VeqNet::value(double rho) const { return forward(rho).first; }
double VeqNet::slope(double rho) const { return forward(rho).second; }

void VeqNet::reverse_batch(const BatchEval& eval,
                           const Eigen::RowVectorXd& value_adj,
                           const Eigen::RowVectorXd& slope_adj,
                           MlpGrad* psi_grad, Eigen::RowVectorXd* rho_adjoint) const {
  const auto r = eval.rho.array();
  const auto psi = eval.psi.array();
  const auto psi_p = eval.psi_p.array();

  const Eigen::ArrayXXd vbar =
      value_adj.size() ? value_adj.array() : Eigen::ArrayXXd::Zero(1, eval.rho.size());
  const Eigen::ArrayXXd sbar =
      slope_adj.size() ? slope_adj.array() : Eigen::ArrayXXd::Zero(1, eval.rho.size());

  // Product-rule bookkeeping with (psi, psi') as leaf wires; the psi network
  // reverse pass below converts their adjoints into parameter gradients and
  // the remaining rho dependence.
  const Eigen::ArrayXXd psi_bar = vbar * r * (1.0 - r) + sbar * (1.0 - 2.0 * r);
  const Eigen::ArrayXXd psi_p_bar = sbar * r * (1.0 - r);
  const Eigen::ArrayXXd rho_direct =
      vbar * (psi * (1.0 - r) - (1.0 + psi * r)) +
      sbar * (psi_p * (1.0 - 2.0 * r) - 2.0 * psi);

  Channels out_adj;
  out_adj.value = psi_bar.matrix();
  out_adj.tangent.assign(1, psi_p_bar.matrix());

  MlpGrad scratch;
  MlpGrad* grad = psi_grad;
  if (!grad) {
    scratch = psi_.make_grad();
    grad = &scratch;
  }
  Eigen::MatrixXd rho_mlp;
  psi_.reverse(eval.tape, out_adj, *grad, rho_adjoint ? &rho_mlp : nullptr);

  if (rho_adjoint) *rho_adjoint = (rho_direct + rho_mlp.array()).matrix();
}

}  // namespace roadstate::net
