#pragma once

#include <span>

#include "roadstate/core/grid_field.hpp"

namespace roadstate::core {

/// Relative discrete L2 error ||truth - estimate||_2 / ||truth||_2 over all
/// entries. Throws DomainError on shape mismatch, NumericError when the
/// truth field is identically zero.
double relative_l2_error(std::span<const double> truth,
                         std::span<const double> estimate);

/// Unnormalized squared L2 distance sum((truth - estimate)^2), logged
/// alongside the relative metric so both readings are available.
double squared_l2_distance(std::span<const double> truth,
                           std::span<const double> estimate);

struct FieldErrors {
  double e_rho = 0.0;
  double e_v = 0.0;
};

/// Relative L2 errors of both channels of a reconstructed field.
FieldErrors field_errors(const GridField& truth, const GridField& estimate);

}  // namespace roadstate::core
