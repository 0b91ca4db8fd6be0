#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "censbound/bounds.hpp"
#include "censbound/scenario.hpp"

namespace censbound {

/// Shared knobs of the Monte Carlo experiments. Replications are independent
/// work units; replication r draws from the stream (config.seed, r), so
/// reports are bit-identical for any worker count.
struct SimulationOptions {
  double D_o = 1.0;
  int workers = 1;
  // Evaluate events with population constants instead of the per-replication
  // realized ones (diagnostics; the theorems are stated with realized values).
  bool freeze_empirical_constants = false;
  // Function class for the sup-deviation kinds; defaults to a fixed
  // six-member time-only family when empty.
  std::vector<BoundedFunction> function_class;
};

std::vector<BoundedFunction> default_coverage_class(double tau);

struct CoverageReport {
  BoundKind kind{};
  std::string scenario_label;
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t excluded_replications = 0;  // ZeroDenominator, counted out
  int generator_ties = 0;
  double D_o = 1.0;
  double mu_truth = 0.0;
  double sigma2_oracle = 0.0;  // Bernstein kinds only
  std::uint64_t seed = 0;
  std::vector<double> eta_grid;
  std::vector<double> exceedance_freq;
  std::vector<double> prob_bound;
  std::vector<double> mc_stderr;
  std::vector<bool> vacuous;
};

/// Empirical verification of one inequality: over R replications, draw a
/// sample of size n, evaluate the theorem's deviation event (with the
/// replication's realized empirical constants where the kind demands them),
/// and report the exceedance frequency per eta against the stated bound.
CoverageReport run_coverage(const ScenarioConfig& config, BoundKind kind,
                            const BoundedFunction& f,
                            std::vector<double> eta_grid, std::size_t n,
                            std::size_t replications,
                            const SimulationOptions& options = {});

struct CltReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t excluded_replications = 0;
  double mean_scaled_deviation = 0.0;  // mean of sqrt(n)(mu_hat - mu)
  double sd_scaled_deviation = 0.0;
  double empirical_variance = 0.0;
  double sigma2_oracle = 0.0;
  double variance_rel_error = 0.0;  // |empirical/oracle - 1|
  double ks_distance = 0.0;         // to N(0, sigma2_oracle)
  double mu_truth = 0.0;
  std::uint64_t seed = 0;
};

CltReport run_clt_check(const ScenarioConfig& config, const BoundedFunction& f,
                        std::size_t n, std::size_t replications,
                        const SimulationOptions& options = {});

struct BiasReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t excluded_replications = 0;  // ZeroDenominator or NoFailures
  double mu_truth = 0.0;
  double naive_mean_error = 0.0;
  double naive_stderr = 0.0;
  double ipcw_mean_error = 0.0;
  double ipcw_stderr = 0.0;
  std::uint64_t seed = 0;
};

BiasReport run_bias_demo(const ScenarioConfig& config,
                         const BoundedFunction& f, std::size_t n,
                         std::size_t replications,
                         const SimulationOptions& options = {});

struct DoScenarioResult {
  std::string scenario_label;
  double min_feasible_Do = 0.0;
  bool feasible_at_zero = false;
};

struct DoReport {
  std::vector<DoScenarioResult> scenarios;
  double recommended_Do = 0.0;  // max over scenarios
  double tolerance = 1e-3;
  std::vector<double> eta_grid;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 0;
};

/// Smallest D_o for which the DKW-KM exceedance frequency respects
/// (5/2) e^{-eta} on every (eta, n) grid cell, found by bisection on the
/// monotone feasibility predicate with a fixed replication set.
DoReport calibrate_Do(const std::vector<ScenarioConfig>& configs,
                      std::vector<double> eta_grid,
                      std::vector<std::size_t> n_grid,
                      std::size_t replications,
                      const SimulationOptions& options = {},
                      double tolerance = 1e-3);

}  // namespace censbound
