#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "censbound/bounded_function.hpp"
#include "censbound/sample.hpp"
#include "censbound/step_curve.hpp"

namespace censbound {

/// Law of the latent failure time T* with truncation T = min(T*, tau).
struct FailureModel {
  enum class Kind { Exponential, Uniform, PointMasses };
  Kind kind = Kind::Exponential;
  double rate = 1.0;   // Exponential(rate)
  double upper = 1.0;  // Uniform(0, upper)
  std::vector<std::pair<double, double>> atoms;  // PointMasses: (time, prob)
};

struct CensoringModel {
  enum class Kind { Exponential, Uniform, None };
  Kind kind = Kind::Exponential;
  double rate = 0.5;   // Exponential(rate)
  double upper = 2.0;  // Uniform(0, upper); must exceed tau
};

/// y = clamp(t * z1 + noise * (2 v - 1), 0, 1) with v ~ U(0, 1).
struct ResponseModel {
  enum class Kind { LinearProduct };
  Kind kind = Kind::LinearProduct;
  double noise = 0.1;
};

/// Generative model for (T, C, Z[, Y]) with closed-form tail quantities.
/// Z is uniform on [0, 1]^d and independent of (T, C); C is independent of
/// (T, Z); the censoring law is continuous, so P(T = C) = 0.
struct ScenarioConfig {
  FailureModel failure;
  CensoringModel censoring;
  std::size_t covariate_dim = 1;
  std::optional<ResponseModel> response;
  double tau = 1.0;
  std::uint64_t seed = 20240901;
  std::string label = "scenario";
};

// T = min(Exp(1), 1), C ~ Exp(0.5), tau = 1, Z ~ U(0,1).
ScenarioConfig default_scenario();
// Same failure law with C ~ U(0, 2).
ScenarioConfig uniform_censoring_scenario();

/// Checks H_tau > 0, positive rates, and censoring support beyond tau.
void validate_scenario(const ScenarioConfig& config);

// Closed-form truth.
double true_failure_survival(const ScenarioConfig&, double t);       // P(T > t)
double true_failure_survival_left(const ScenarioConfig&, double t);  // P(T >= t)
double true_censoring_survival(const ScenarioConfig&, double t);      // P(C > t)
double true_censoring_survival_left(const ScenarioConfig&, double t); // P(C >= t)
double true_censoring_cum_hazard(const ScenarioConfig&, double t);    // Lambda^C
double true_censoring_hazard_density(const ScenarioConfig&, double s);

// Density of the absolutely-continuous part of T on [0, tau) and the atom
// list of T after truncation (the truncation mass collapses onto tau).
double failure_density(const ScenarioConfig&, double t);
std::vector<std::pair<double, double>> failure_atoms(const ScenarioConfig&);

struct TailTruth {
  double s_tau = 0.0;
  double g_tau = 0.0;
  double h_tau = 0.0;  // = s_tau * g_tau under independence
};
TailTruth true_tails(const ScenarioConfig&);

/// E[g(T)] by composite Simpson over the density part plus the atom terms.
double expect_failure(const ScenarioConfig&,
                      const std::function<double(double)>& g,
                      int panels = 2048);

/// E[f(T, Z)]: quadrature for time-only f and for d = 1; seeded Monte Carlo
/// fallback (10^6 draws) for covariate-dependent f in higher dimension.
double mu_true(const ScenarioConfig&, const BoundedFunction& f);
double var_true(const ScenarioConfig&, const BoundedFunction& f);

/// Draws n observations deterministically from (config.seed, stream).
/// Exact ties T = C (float-granularity events) resolve to delta = 1 and are
/// counted into *generator_ties when given.
CensoredSample sample_scenario(const ScenarioConfig&, std::size_t n,
                               std::uint64_t stream,
                               int* generator_ties = nullptr);

class StreamRng;

// Single latent draws consuming a fixed number of stream values; shared by
// the sampler, the variance oracle, and the risk oracle.
double draw_failure_time(const ScenarioConfig&, StreamRng& rng);
double draw_response(const ScenarioConfig&, StreamRng& rng, double t,
                     const std::vector<double>& z);

/// Exact sup over [0, tau] of |G_hat - G|: the supremum of a step curve
/// against the monotone closed-form G is attained at segment endpoints, which
/// are enumerated finitely (no time-grid sampling).
double sup_distance_to_true_censoring(const ScenarioConfig&,
                                      const StepCurve& g_hat);

}  // namespace censbound
