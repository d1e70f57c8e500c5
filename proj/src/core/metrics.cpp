#include "roadstate/core/metrics.hpp"

#include <cmath>

namespace roadstate::core {

double relative_l2_error(std::span<const double> truth,
                         std::span<const double> estimate) {
  if (truth.size() != estimate.size())
    throw DomainError("relative_l2_error: shape mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    num += d * d;
    den += truth[i] * truth[i];
  }
  if (den == 0.0)
    throw NumericError("relative_l2_error: truth field is identically zero");
  return std::sqrt(num / den);
}

double squared_l2_distance(std::span<const double> truth,
                           std::span<const double> estimate) {
  if (truth.size() != estimate.size())
    throw DomainError("squared_l2_distance: shape mismatch");
  double num = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    num += d * d;
  }
  return num;
}

FieldErrors field_errors(const GridField& truth, const GridField& estimate) {
  if (!truth.same_shape(estimate))
    throw DomainError("field_errors: grid shape mismatch");
  return FieldErrors{relative_l2_error(truth.rho, estimate.rho),
                     relative_l2_error(truth.vel, estimate.vel)};
}

}  // namespace roadstate::core
