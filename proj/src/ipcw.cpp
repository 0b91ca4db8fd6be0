#include "censbound/ipcw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "censbound/errors.hpp"
#include "censbound/survival.hpp"

namespace censbound {

namespace {

// delta_i / G_hat(u_i-) per observation, in stored order; zero for censored.
std::vector<double> ipcw_weights(const CensoredSample& sample,
                                 const StepCurve& g_curve,
                                 const IpcwOptions& options,
                                 double* min_denominator) {
  std::vector<double> weights(sample.size(), 0.0);
  double min_seen = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& obs = sample.observations()[i];
    if (!obs.failure) continue;
    double denominator = g_curve.left_limit(obs.u);
    if (denominator <= 0.0) {
      if (!options.denominator_floor) throw ZeroDenominator();
      denominator = *options.denominator_floor;
    }
    min_seen = std::min(min_seen, denominator);
    weights[i] = 1.0 / denominator;
  }
  if (min_denominator) *min_denominator = min_seen;
  return weights;
}

}  // namespace

EstimateResult ipcw_mean(const CensoredSample& sample,
                         const BoundedFunction& f, const StepCurve& g_curve,
                         const IpcwOptions& options) {
  EstimateResult result;
  const auto weights =
      ipcw_weights(sample, g_curve, options, &result.min_weight_denominator);
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const auto& obs = sample.observations()[i];
    sum += f(obs.u, obs.z) * weights[i];
    ++result.n_effective;
  }
  result.value = sum / static_cast<double>(sample.size());
  return result;
}

double km_functional_mean(const CensoredSample& sample,
                          const BoundedFunction& f) {
  if (f.depends_on_z()) throw DependsOnCovariates();
  const StepCurve s_hat = km_fit(sample, EventTarget::Failure);
  double total = 0.0;
  double previous = s_hat.initial_value();
  for (std::size_t j = 0; j < s_hat.jump_count(); ++j) {
    const double jump_mass = previous - s_hat.values()[j];
    total += f(s_hat.jump_times()[j], {}) * jump_mass;
    previous = s_hat.values()[j];
  }
  return total;
}

double naive_mean(const CensoredSample& sample, const BoundedFunction& f) {
  double sum = 0.0;
  int count = 0;
  for (const auto& obs : sample.observations()) {
    if (!obs.failure) continue;
    sum += f(obs.u, obs.z);
    ++count;
  }
  if (count == 0) throw NoFailures();
  return sum / count;
}

VarianceResult sigma_f_plugin(const CensoredSample& sample,
                              const BoundedFunction& f,
                              const IpcwOptions& options) {
  const StepCurve g_hat = km_fit(sample, EventTarget::Censoring);
  const StepCurve lambda_hat = nelson_aalen_censoring(sample);
  const double n = static_cast<double>(sample.size());

  double min_denominator = 0.0;
  const auto weights = ipcw_weights(sample, g_hat, options, &min_denominator);

  std::vector<double> f_values(sample.size(), 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const auto& obs = sample.observations()[i];
    f_values[i] = f(obs.u, obs.z);
  }

  double weight_total = 0.0, weighted_sum = 0.0, weighted_sq = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    weight_total += weights[i];
    weighted_sum += weights[i] * f_values[i];
    weighted_sq += weights[i] * f_values[i] * f_values[i];
  }

  VarianceResult result;
  if (weight_total > 0.0) {
    const double mean = weighted_sum / weight_total;
    result.term_variance =
        std::max(0.0, weighted_sq / weight_total - mean * mean);
  }

  // q_hat at each censoring jump: IPCW mean of f 1{t>=s} over IPCW mean of
  // 1{t>=s}. Only jumps with at least one later failure are ever used.
  const auto& jump_times = lambda_hat.jump_times();
  const std::size_t m = jump_times.size();
  std::vector<double> q_hat(m, 0.0), increment_over_g(m, 0.0);
  double previous_lambda = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double s = jump_times[j];
    double numerator = 0.0, denominator = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (weights[i] == 0.0 || sample.observations()[i].u < s) continue;
      numerator += weights[i] * f_values[i];
      denominator += weights[i];
    }
    q_hat[j] = denominator > 0.0 ? numerator / denominator : 0.0;
    const double increment = lambda_hat.values()[j] - previous_lambda;
    previous_lambda = lambda_hat.values()[j];
    increment_over_g[j] = increment / g_hat(s);
  }

  double censoring_sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const auto& obs = sample.observations()[i];
    double integral = 0.0;
    for (std::size_t j = 0; j < m && jump_times[j] <= obs.u; ++j) {
      const double centered = f(jump_times[j], obs.z) - q_hat[j];
      integral += centered * centered * increment_over_g[j];
    }
    censoring_sum += weights[i] * integral;
  }
  result.term_censoring = censoring_sum / n;
  result.sigma2 = result.term_variance + result.term_censoring;
  return result;
}

}  // namespace censbound
