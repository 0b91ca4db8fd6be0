#include "censbound/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "censbound/errors.hpp"
#include "censbound/ipcw.hpp"
#include "censbound/parallel.hpp"
#include "censbound/sigma_oracle.hpp"
#include "censbound/survival.hpp"

namespace censbound {

namespace {

bool is_class_kind(BoundKind kind) {
  switch (kind) {
    case BoundKind::FiniteClassUnion:
    case BoundKind::ClassDistribution:
    case BoundKind::ClassEmpirical:
    case BoundKind::ClassSimpleSup:
      return true;
    default:
      return false;
  }
}

bool is_dkw_kind(BoundKind kind) {
  return kind == BoundKind::DkwKm || kind == BoundKind::DkwKmEmpirical;
}

bool is_bernstein_kind(BoundKind kind) {
  return kind == BoundKind::Bernstein ||
         kind == BoundKind::BernsteinDistribution;
}

struct ReplicationStat {
  double stat = 0.0;
  double g_hat_tau = 0.0;
  double h_hat_tau = 0.0;
  double s_hat_tau = 0.0;
  int generator_ties = 0;
  bool excluded = false;
};

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::vector<BoundedFunction> default_coverage_class(double tau) {
  std::vector<BoundedFunction> members;
  members.push_back(time_identity(tau));
  members.push_back(time_polynomial({0.0, 0.0, 1.0}, tau));  // t^2
  members.push_back(time_polynomial({tau, -1.0}, tau));      // tau - t
  members.push_back(time_indicator(0.25 * tau));
  members.push_back(time_indicator(0.5 * tau));
  members.push_back(time_indicator(0.75 * tau));
  return members;
}

CoverageReport run_coverage(const ScenarioConfig& config, BoundKind kind,
                            const BoundedFunction& f,
                            std::vector<double> eta_grid, std::size_t n,
                            std::size_t replications,
                            const SimulationOptions& options) {
  validate_scenario(config);
  if (eta_grid.empty()) throw ValidationError("run_coverage: empty eta grid");
  for (double eta : eta_grid) {
    if (!(eta > 0.0)) throw ValidationError("run_coverage: eta must be > 0");
  }
  if (replications < 1) {
    throw ValidationError("run_coverage: replications must be >= 1");
  }

  const TailTruth truth = true_tails(config);
  const bool class_kind = is_class_kind(kind);
  const bool dkw_kind = is_dkw_kind(kind);

  std::vector<BoundedFunction> members;
  if (class_kind) {
    members = options.function_class.empty() ? default_coverage_class(config.tau)
                                             : options.function_class;
  }

  CoverageReport report;
  report.kind = kind;
  report.scenario_label = config.label;
  report.n = n;
  report.replications = replications;
  report.D_o = options.D_o;
  report.seed = config.seed;
  report.eta_grid = std::move(eta_grid);

  double class_bound = 0.0;
  std::vector<double> member_truth;
  if (class_kind) {
    for (const auto& member : members) {
      class_bound = std::max(class_bound, member.bound());
      member_truth.push_back(mu_true(config, member));
    }
  }
  if (!dkw_kind && !class_kind) report.mu_truth = mu_true(config, f);

  BoundInputs base;
  base.n = n;
  base.D_o = options.D_o;
  base.H_tau = truth.h_tau;
  base.S_tau = truth.s_tau;
  if (class_kind) {
    base.M = class_bound;
    base.class_size = members.size();
  } else if (!dkw_kind) {
    base.M = f.bound();
  }
  if (is_bernstein_kind(kind)) {
    report.sigma2_oracle = sigma_f_oracle(config, f).sigma2;
    base.sigma2 = report.sigma2_oracle;
  }

  std::vector<ReplicationStat> stats(replications);
  parallel_for_index(replications, options.workers, [&](std::size_t r) {
    ReplicationStat& slot = stats[r];
    const CensoredSample sample =
        sample_scenario(config, n, r, &slot.generator_ties);
    const StepCurve g_curve = km_fit(sample, EventTarget::Censoring);
    slot.g_hat_tau = g_curve.left_limit(config.tau);
    slot.h_hat_tau = static_cast<double>(at_risk(sample, config.tau)) /
                     static_cast<double>(sample.size());
    slot.s_hat_tau =
        km_fit(sample, EventTarget::Failure).left_limit(config.tau);
    try {
      if (dkw_kind) {
        slot.stat = sup_distance_to_true_censoring(config, g_curve);
      } else if (class_kind) {
        double sup = 0.0;
        for (std::size_t j = 0; j < members.size(); ++j) {
          const double estimate =
              ipcw_mean(sample, members[j], g_curve).value;
          sup = std::max(sup, std::fabs(estimate - member_truth[j]));
        }
        slot.stat = sup;
      } else {
        const double estimate = ipcw_mean(sample, f, g_curve).value;
        slot.stat = std::fabs(estimate - report.mu_truth);
      }
    } catch (const ZeroDenominator&) {
      slot.excluded = true;
    }
  });

  std::size_t valid = 0;
  for (const auto& slot : stats) {
    report.generator_ties += slot.generator_ties;
    if (slot.excluded) {
      ++report.excluded_replications;
    } else {
      ++valid;
    }
  }

  // Population-constant inputs give the theorem's right-hand side; the
  // empirical fields only enter the per-replication thresholds.
  BoundInputs population = base;
  population.G_hat_tau = truth.g_tau;
  population.H_hat_tau = truth.h_tau;
  population.S_hat_tau = truth.s_tau;

  for (double eta : report.eta_grid) {
    BoundInputs inputs = base;
    inputs.eta = eta;
    std::size_t count = 0;
    for (const auto& slot : stats) {
      if (slot.excluded) continue;
      if (options.freeze_empirical_constants) {
        inputs.G_hat_tau = truth.g_tau;
        inputs.H_hat_tau = truth.h_tau;
        inputs.S_hat_tau = truth.s_tau;
      } else {
        inputs.G_hat_tau = slot.g_hat_tau;
        inputs.H_hat_tau = slot.h_hat_tau;
        inputs.S_hat_tau = slot.s_hat_tau;
      }
      const double threshold =
          detail::deviation_threshold_or_infinity(kind, inputs);
      if (slot.stat >= threshold) ++count;
    }
    population.eta = eta;
    const BoundResult rhs = deviation_bound(kind, population);
    const double freq =
        valid > 0 ? static_cast<double>(count) / static_cast<double>(valid)
                  : 0.0;
    report.exceedance_freq.push_back(freq);
    report.prob_bound.push_back(rhs.prob_bound);
    report.vacuous.push_back(rhs.vacuous);
    report.mc_stderr.push_back(
        valid > 0 ? std::sqrt(freq * (1.0 - freq) / static_cast<double>(valid))
                  : 0.0);
  }
  return report;
}

CltReport run_clt_check(const ScenarioConfig& config, const BoundedFunction& f,
                        std::size_t n, std::size_t replications,
                        const SimulationOptions& options) {
  validate_scenario(config);
  if (replications < 2) {
    throw ValidationError("run_clt_check: replications must be >= 2");
  }

  CltReport report;
  report.n = n;
  report.replications = replications;
  report.seed = config.seed;
  report.mu_truth = mu_true(config, f);
  report.sigma2_oracle = sigma_f_oracle(config, f).sigma2;

  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> scaled(replications, 0.0);
  std::vector<char> excluded(replications, 0);
  parallel_for_index(replications, options.workers, [&](std::size_t r) {
    const CensoredSample sample = sample_scenario(config, n, r);
    const StepCurve g_curve = km_fit(sample, EventTarget::Censoring);
    try {
      const double estimate = ipcw_mean(sample, f, g_curve).value;
      scaled[r] = root_n * (estimate - report.mu_truth);
    } catch (const ZeroDenominator&) {
      excluded[r] = 1;
    }
  });

  std::vector<double> values;
  values.reserve(replications);
  for (std::size_t r = 0; r < replications; ++r) {
    if (excluded[r]) {
      ++report.excluded_replications;
    } else {
      values.push_back(scaled[r]);
    }
  }
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  report.mean_scaled_deviation = mean;
  report.empirical_variance = ss / (count - 1.0);
  report.sd_scaled_deviation = std::sqrt(report.empirical_variance);
  report.variance_rel_error =
      std::fabs(report.empirical_variance / report.sigma2_oracle - 1.0);

  std::sort(values.begin(), values.end());
  const double sigma = std::sqrt(report.sigma2_oracle);
  double ks = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = normal_cdf(values[i] / sigma);
    ks = std::max(ks, std::fabs(cdf - static_cast<double>(i) / count));
    ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / count - cdf));
  }
  report.ks_distance = ks;
  return report;
}

BiasReport run_bias_demo(const ScenarioConfig& config,
                         const BoundedFunction& f, std::size_t n,
                         std::size_t replications,
                         const SimulationOptions& options) {
  validate_scenario(config);
  if (replications < 2) {
    throw ValidationError("run_bias_demo: replications must be >= 2");
  }

  BiasReport report;
  report.n = n;
  report.replications = replications;
  report.seed = config.seed;
  report.mu_truth = mu_true(config, f);

  std::vector<double> naive_values(replications, 0.0);
  std::vector<double> ipcw_values(replications, 0.0);
  std::vector<char> excluded(replications, 0);
  parallel_for_index(replications, options.workers, [&](std::size_t r) {
    const CensoredSample sample = sample_scenario(config, n, r);
    try {
      naive_values[r] = naive_mean(sample, f);
      const StepCurve g_curve = km_fit(sample, EventTarget::Censoring);
      ipcw_values[r] = ipcw_mean(sample, f, g_curve).value;
    } catch (const NumericError&) {
      excluded[r] = 1;
    }
  });

  auto summarize = [&](const std::vector<double>& values, double& mean_error,
                       double& stderr_out) {
    double mean = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < replications; ++r) {
      if (excluded[r]) continue;
      mean += values[r];
      ++count;
    }
    mean /= static_cast<double>(count);
    double ss = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      if (excluded[r]) continue;
      ss += (values[r] - mean) * (values[r] - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(count - 1));
    mean_error = mean - report.mu_truth;
    stderr_out = sd / std::sqrt(static_cast<double>(count));
  };
  for (std::size_t r = 0; r < replications; ++r) {
    if (excluded[r]) ++report.excluded_replications;
  }
  summarize(naive_values, report.naive_mean_error, report.naive_stderr);
  summarize(ipcw_values, report.ipcw_mean_error, report.ipcw_stderr);
  return report;
}

DoReport calibrate_Do(const std::vector<ScenarioConfig>& configs,
                      std::vector<double> eta_grid,
                      std::vector<std::size_t> n_grid,
                      std::size_t replications,
                      const SimulationOptions& options, double tolerance) {
  if (configs.empty() || eta_grid.empty() || n_grid.empty()) {
    throw ValidationError("calibrate_Do: empty grid");
  }
  DoReport report;
  report.tolerance = tolerance;
  report.eta_grid = std::move(eta_grid);
  report.n_grid = std::move(n_grid);
  report.replications = replications;

  for (const auto& config : configs) {
    validate_scenario(config);
    const double s_tau = true_tails(config).s_tau;
    // sqrt(n) S_tau ||G_hat - G||_inf per replication, sorted per n cell.
    std::vector<std::vector<double>> cells;
    for (std::size_t n : report.n_grid) {
      std::vector<double> values(replications, 0.0);
      parallel_for_index(replications, options.workers, [&](std::size_t r) {
        const CensoredSample sample = sample_scenario(config, n, r);
        const StepCurve g_curve = km_fit(sample, EventTarget::Censoring);
        values[r] = std::sqrt(static_cast<double>(n)) * s_tau *
                    sup_distance_to_true_censoring(config, g_curve);
      });
      std::sort(values.begin(), values.end());
      cells.push_back(std::move(values));
    }

    auto feasible = [&](double D_o) {
      for (const auto& cell : cells) {
        for (double eta : report.eta_grid) {
          const double threshold = std::sqrt(eta / 2.0) + D_o / 2.0;
          const auto first =
              std::lower_bound(cell.begin(), cell.end(), threshold);
          const double freq = static_cast<double>(cell.end() - first) /
                              static_cast<double>(cell.size());
          if (freq > 2.5 * std::exp(-eta)) return false;
        }
      }
      return true;
    };

    DoScenarioResult result;
    result.scenario_label = config.label;
    if (feasible(0.0)) {
      result.min_feasible_Do = 0.0;
      result.feasible_at_zero = true;
    } else {
      double lo = 0.0, hi = 1.0;
      while (!feasible(hi) && hi < 64.0) hi *= 2.0;
      while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
      }
      result.min_feasible_Do = hi;
    }
    report.recommended_Do =
        std::max(report.recommended_Do, result.min_feasible_Do);
    report.scenarios.push_back(std::move(result));
  }
  return report;
}

}  // namespace censbound
