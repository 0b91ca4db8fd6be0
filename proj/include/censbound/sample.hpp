#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace censbound {

/// One right-censored record: observed time u = min(T, C), failure indicator
/// delta = 1{T <= C}, covariates z, and an optional response y (ERM only).
struct CensoredObservation {
  double u = 0.0;
  bool failure = false;
  std::vector<double> z;
  std::optional<double> y;
};

/// Immutable sample of censored observations on the study horizon [0, tau].
class CensoredSample {
 public:
  CensoredSample(std::vector<CensoredObservation> observations, double tau);

  const std::vector<CensoredObservation>& observations() const {
    return observations_;
  }
  std::size_t size() const { return observations_.size(); }
  double tau() const { return tau_; }
  std::size_t covariate_dim() const { return covariate_dim_; }

  // Set when some failure time equals some censoring time; such samples are
  // processed with the failures-first tie convention but are refused by the
  // exact identity checks.
  bool has_failure_censoring_ties() const {
    return has_failure_censoring_ties_;
  }

  // True when every observation carries a response.
  bool has_responses() const { return has_responses_; }

 private:
  std::vector<CensoredObservation> observations_;
  double tau_ = 0.0;
  std::size_t covariate_dim_ = 0;
  bool has_failure_censoring_ties_ = false;
  bool has_responses_ = false;
};

}  // namespace censbound
