#pragma once

#include <functional>
#include <span>
#include <string>

namespace censbound {

/// Measurable f : [0, tau] x Z -> R with a declared sup bound M. The bound is
/// spot-checked on every evaluation; exceeding it raises BoundViolation.
class BoundedFunction {
 public:
  using Evaluator = std::function<double(double, std::span<const double>)>;

  BoundedFunction(Evaluator evaluator, double bound_m, bool depends_on_z,
                  std::string label = "");

  double operator()(double t, std::span<const double> z) const;

  double bound() const { return bound_m_; }
  bool depends_on_z() const { return depends_on_z_; }
  const std::string& label() const { return label_; }

 private:
  Evaluator evaluator_;
  double bound_m_ = 1.0;
  bool depends_on_z_ = false;
  std::string label_;
};

// Built-in families used by the experiments and the CLI.
BoundedFunction time_identity(double tau);
BoundedFunction time_indicator(double threshold);
BoundedFunction time_polynomial(std::vector<double> coefficients, double tau);
BoundedFunction time_times_covariate(std::size_t covariate_index, double tau);
BoundedFunction constant_function(double value);

/// Parses a function selector:
///   t                     identity in time
///   indicator:<s>         1{t >= s}
///   poly:<c0>,<c1>,...    polynomial in t
///   t*z<k>                product with the k-th covariate (1-based)
/// M is inferred from tau and the coefficients; covariates are assumed to lie
/// in [0, 1]. Grammar errors carry position diagnostics.
BoundedFunction parse_function(const std::string& selector, double tau);

}  // namespace censbound
