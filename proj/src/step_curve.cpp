#include "censbound/step_curve.hpp"

#include <algorithm>

#include "censbound/errors.hpp"

namespace censbound {

StepCurve::StepCurve(double initial_value, std::vector<double> jump_times,
                     std::vector<double> values)
    : initial_value_(initial_value),
      jump_times_(std::move(jump_times)),
      values_(std::move(values)) {
  if (jump_times_.size() != values_.size()) {
    throw ValidationError("StepCurve: jump_times and values length mismatch");
  }
  for (std::size_t i = 1; i < jump_times_.size(); ++i) {
    if (!(jump_times_[i - 1] < jump_times_[i])) {
      throw ValidationError("StepCurve: jump times must be strictly increasing");
    }
  }
}

double StepCurve::operator()(double t) const {
  auto it = std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return initial_value_;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

double StepCurve::left_limit(double t) const {
  auto it = std::lower_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return initial_value_;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

}  // namespace censbound
