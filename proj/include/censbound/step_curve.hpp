#pragma once

#include <cstddef>
#include <vector>

namespace censbound {

/// Right-continuous piecewise-constant function on [0, inf) with exact
/// left-limit evaluation. Survival curves are nonincreasing from 1;
/// cumulative hazards are nondecreasing from 0.
class StepCurve {
 public:
  StepCurve() = default;
  StepCurve(double initial_value, std::vector<double> jump_times,
            std::vector<double> values);

  // Value at t (value after the last jump <= t).
  double operator()(double t) const;

  // Value just before t (initial value if no jump < t).
  double left_limit(double t) const;

  double initial_value() const { return initial_value_; }
  const std::vector<double>& jump_times() const { return jump_times_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t jump_count() const { return jump_times_.size(); }

 private:
  double initial_value_ = 1.0;
  std::vector<double> jump_times_;
  std::vector<double> values_;
};

}  // namespace censbound
