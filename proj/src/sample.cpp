#include "censbound/sample.hpp"

#include <algorithm>
#include <string>

#include "censbound/errors.hpp"

namespace censbound {

CensoredSample::CensoredSample(std::vector<CensoredObservation> observations,
                               double tau)
    : observations_(std::move(observations)), tau_(tau) {
  if (observations_.empty()) {
    throw ValidationError("CensoredSample: sample must be nonempty");
  }
  if (!(tau_ > 0.0)) {
    throw ValidationError("CensoredSample: tau must be positive");
  }
  covariate_dim_ = observations_.front().z.size();
  has_responses_ = true;
  std::vector<double> failure_times;
  std::vector<double> censoring_times;
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const auto& obs = observations_[i];
    if (!(obs.u >= 0.0) || !(obs.u <= tau_)) {
      throw ValidationError("CensoredSample: observation " + std::to_string(i) +
                            " has u outside [0, tau]");
    }
    if (obs.z.size() != covariate_dim_) {
      throw ValidationError("CensoredSample: observation " + std::to_string(i) +
                            " has inconsistent covariate dimension");
    }
    if (!obs.y.has_value()) has_responses_ = false;
    (obs.failure ? failure_times : censoring_times).push_back(obs.u);
  }
  std::sort(failure_times.begin(), failure_times.end());
  std::sort(censoring_times.begin(), censoring_times.end());
  std::size_t a = 0, b = 0;
  while (a < failure_times.size() && b < censoring_times.size()) {
    if (failure_times[a] == censoring_times[b]) {
      has_failure_censoring_ties_ = true;
      break;
    }
    if (failure_times[a] < censoring_times[b]) {
      ++a;
    } else {
      ++b;
    }
  }
}

}  // namespace censbound
