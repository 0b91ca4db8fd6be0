#include "censbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "censbound/errors.hpp"
#include "censbound/rng.hpp"

namespace censbound {

namespace {

constexpr std::uint64_t kMuTrueSalt = 0x6D75747275654D43ULL;

double simpson(const std::function<double(double)>& f, double a, double b,
               int panels) {
  // panels = number of subintervals, forced even.
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return sum * h / 3.0;
}

}  // namespace

ScenarioConfig default_scenario() {
  ScenarioConfig config;
  config.failure = {FailureModel::Kind::Exponential, 1.0, 1.0, {}};
  config.censoring = {CensoringModel::Kind::Exponential, 0.5, 2.0};
  config.covariate_dim = 1;
  config.tau = 1.0;
  config.label = "default";
  return config;
}

ScenarioConfig uniform_censoring_scenario() {
  ScenarioConfig config = default_scenario();
  config.censoring = {CensoringModel::Kind::Uniform, 0.5, 2.0};
  config.label = "uniform-censoring";
  return config;
}

void validate_scenario(const ScenarioConfig& config) {
  if (!(config.tau > 0.0)) throw ValidationError("scenario: tau must be positive");
  if (config.covariate_dim < 1) {
    throw ValidationError("scenario: covariate dimension must be >= 1");
  }
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      if (!(config.failure.rate > 0.0)) {
        throw ValidationError("scenario: failure rate must be positive");
      }
      break;
    case FailureModel::Kind::Uniform:
      if (!(config.failure.upper > config.tau)) {
        throw UnsupportedScenario(
            "scenario: uniform failure upper bound must exceed tau, "
            "otherwise H_tau = 0");
      }
      break;
    case FailureModel::Kind::PointMasses: {
      if (config.failure.atoms.empty()) {
        throw ValidationError("scenario: point-mass failure model needs atoms");
      }
      double total = 0.0;
      for (const auto& [time, prob] : config.failure.atoms) {
        if (!(time >= 0.0)) throw ValidationError("scenario: atom time < 0");
        if (!(prob > 0.0)) throw ValidationError("scenario: atom mass <= 0");
        total += prob;
      }
      if (std::fabs(total - 1.0) > 1e-12) {
        throw ValidationError("scenario: atom masses must sum to 1");
      }
      break;
    }
  }
  switch (config.censoring.kind) {
    case CensoringModel::Kind::Exponential:
      if (!(config.censoring.rate > 0.0)) {
        throw ValidationError("scenario: censoring rate must be positive");
      }
      break;
    case CensoringModel::Kind::Uniform:
      if (!(config.censoring.upper > config.tau)) {
        throw UnsupportedScenario(
            "scenario: uniform censoring upper bound must exceed tau, "
            "otherwise G_tau = 0");
      }
      break;
    case CensoringModel::Kind::None:
      break;
  }
  if (!(true_tails(config).h_tau > 0.0)) {
    throw UnsupportedScenario("scenario: induced H_tau must be positive");
  }
}

double true_failure_survival(const ScenarioConfig& config, double t) {
  if (t < 0.0) return 1.0;
  if (t >= config.tau) return 0.0;
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      return std::exp(-config.failure.rate * t);
    case FailureModel::Kind::Uniform:
      return 1.0 - t / config.failure.upper;
    case FailureModel::Kind::PointMasses: {
      double mass = 0.0;
      for (const auto& [time, prob] : config.failure.atoms) {
        if (std::min(time, config.tau) > t) mass += prob;
      }
      return mass;
    }
  }
  return 0.0;
}

double true_failure_survival_left(const ScenarioConfig& config, double t) {
  if (t <= 0.0) return 1.0;
  if (t > config.tau) return 0.0;
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      return std::exp(-config.failure.rate * t);
    case FailureModel::Kind::Uniform:
      return 1.0 - t / config.failure.upper;
    case FailureModel::Kind::PointMasses: {
      double mass = 0.0;
      for (const auto& [time, prob] : config.failure.atoms) {
        if (std::min(time, config.tau) >= t) mass += prob;
      }
      return mass;
    }
  }
  return 0.0;
}

double true_censoring_survival(const ScenarioConfig& config, double t) {
  if (t < 0.0) return 1.0;
  switch (config.censoring.kind) {
    case CensoringModel::Kind::Exponential:
      return std::exp(-config.censoring.rate * t);
    case CensoringModel::Kind::Uniform:
      return t >= config.censoring.upper ? 0.0
                                         : 1.0 - t / config.censoring.upper;
    case CensoringModel::Kind::None:
      return 1.0;
  }
  return 1.0;
}

double true_censoring_survival_left(const ScenarioConfig& config, double t) {
  // The supported censoring laws are continuous.
  return true_censoring_survival(config, t);
}

double true_censoring_cum_hazard(const ScenarioConfig& config, double t) {
  if (t <= 0.0) return 0.0;
  switch (config.censoring.kind) {
    case CensoringModel::Kind::Exponential:
      return config.censoring.rate * t;
    case CensoringModel::Kind::Uniform: {
      const double u = config.censoring.upper;
      if (t >= u) return std::numeric_limits<double>::infinity();
      return -std::log(1.0 - t / u);
    }
    case CensoringModel::Kind::None:
      return 0.0;
  }
  return 0.0;
}

double true_censoring_hazard_density(const ScenarioConfig& config, double s) {
  switch (config.censoring.kind) {
    case CensoringModel::Kind::Exponential:
      return config.censoring.rate;
    case CensoringModel::Kind::Uniform:
      return 1.0 / (config.censoring.upper - s);
    case CensoringModel::Kind::None:
      return 0.0;
  }
  return 0.0;
}

double failure_density(const ScenarioConfig& config, double t) {
  if (t < 0.0 || t >= config.tau) return 0.0;
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      return config.failure.rate * std::exp(-config.failure.rate * t);
    case FailureModel::Kind::Uniform:
      return 1.0 / config.failure.upper;
    case FailureModel::Kind::PointMasses:
      return 0.0;
  }
  return 0.0;
}

std::vector<std::pair<double, double>> failure_atoms(
    const ScenarioConfig& config) {
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      return {{config.tau, std::exp(-config.failure.rate * config.tau)}};
    case FailureModel::Kind::Uniform:
      return {{config.tau, 1.0 - config.tau / config.failure.upper}};
    case FailureModel::Kind::PointMasses: {
      std::map<double, double> merged;
      for (const auto& [time, prob] : config.failure.atoms) {
        merged[std::min(time, config.tau)] += prob;
      }
      return {merged.begin(), merged.end()};
    }
  }
  return {};
}

TailTruth true_tails(const ScenarioConfig& config) {
  TailTruth tails;
  tails.s_tau = true_failure_survival_left(config, config.tau);
  tails.g_tau = true_censoring_survival_left(config, config.tau);
  tails.h_tau = tails.s_tau * tails.g_tau;
  return tails;
}

double expect_failure(const ScenarioConfig& config,
                      const std::function<double(double)>& g, int panels) {
  double total = 0.0;
  if (config.failure.kind != FailureModel::Kind::PointMasses) {
    total += simpson(
        [&](double t) { return g(t) * failure_density(config, t); }, 0.0,
        config.tau, panels);
  }
  for (const auto& [time, mass] : failure_atoms(config)) {
    total += mass * g(time);
  }
  return total;
}

double draw_failure_time(const ScenarioConfig& config, StreamRng& rng) {
  switch (config.failure.kind) {
    case FailureModel::Kind::Exponential:
      return std::min(rng.exponential(config.failure.rate), config.tau);
    case FailureModel::Kind::Uniform:
      return std::min(rng.uniform(0.0, config.failure.upper), config.tau);
    case FailureModel::Kind::PointMasses: {
      const double u = rng.next_double();
      double cumulative = 0.0;
      for (const auto& [time, prob] : config.failure.atoms) {
        cumulative += prob;
        if (u < cumulative) return std::min(time, config.tau);
      }
      return std::min(config.failure.atoms.back().first, config.tau);
    }
  }
  return config.tau;
}

double draw_response(const ScenarioConfig& config, StreamRng& rng, double t,
                     const std::vector<double>& z) {
  if (!config.response) throw NoResponseModel();
  const double noise_draw = rng.next_double();
  const double raw =
      t * z[0] + config.response->noise * (2.0 * noise_draw - 1.0);
  return std::clamp(raw, 0.0, 1.0);
}

namespace {

double mc_moment(const ScenarioConfig& config, const BoundedFunction& f,
                 bool second) {
  constexpr std::size_t kDraws = 1000000;
  constexpr std::size_t kBlock = 4096;
  double total = 0.0;
  std::vector<double> z(config.covariate_dim);
  for (std::size_t start = 0; start < kDraws; start += kBlock) {
    StreamRng rng(config.seed ^ kMuTrueSalt, start / kBlock);
    const std::size_t end = std::min(start + kBlock, kDraws);
    for (std::size_t i = start; i < end; ++i) {
      const double t = draw_failure_time(config, rng);
      for (auto& zi : z) zi = rng.next_double();
      const double value = f(t, z);
      total += second ? value * value : value;
    }
  }
  return total / static_cast<double>(kDraws);
}

double moment_true(const ScenarioConfig& config, const BoundedFunction& f,
                   bool second) {
  auto lift = [&](double value) { return second ? value * value : value; };
  if (!f.depends_on_z()) {
    return expect_failure(config,
                          [&](double t) { return lift(f(t, {})); });
  }
  if (config.covariate_dim == 1) {
    // Z independent of T: integrate the t-expectation over z in [0, 1].
    return simpson(
        [&](double z) {
          const double zv[1] = {z};
          return expect_failure(
              config, [&](double t) { return lift(f(t, zv)); }, 512);
        },
        0.0, 1.0, 256);
  }
  return mc_moment(config, f, second);
}

}  // namespace

double mu_true(const ScenarioConfig& config, const BoundedFunction& f) {
  return moment_true(config, f, /*second=*/false);
}

double var_true(const ScenarioConfig& config, const BoundedFunction& f) {
  const double first = moment_true(config, f, false);
  const double second = moment_true(config, f, true);
  return std::max(0.0, second - first * first);
}

CensoredSample sample_scenario(const ScenarioConfig& config, std::size_t n,
                               std::uint64_t stream, int* generator_ties) {
  if (n < 1) throw ValidationError("sample_scenario: n must be >= 1");
  StreamRng rng(config.seed, stream);
  std::vector<CensoredObservation> observations;
  observations.reserve(n);
  int ties = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = draw_failure_time(config, rng);
    double c = std::numeric_limits<double>::infinity();
    switch (config.censoring.kind) {
      case CensoringModel::Kind::Exponential:
        c = rng.exponential(config.censoring.rate);
        break;
      case CensoringModel::Kind::Uniform:
        c = rng.uniform(0.0, config.censoring.upper);
        break;
      case CensoringModel::Kind::None:
        break;
    }
    CensoredObservation obs;
    obs.failure = t <= c;  // exact ties resolve to a failure
    if (t == c) ++ties;
    obs.u = obs.failure ? t : c;
    obs.z.resize(config.covariate_dim);
    for (auto& zi : obs.z) zi = rng.next_double();
    if (config.response) {
      obs.y = draw_response(config, rng, t, obs.z);
    }
    observations.push_back(std::move(obs));
  }
  if (generator_ties) *generator_ties = ties;
  return CensoredSample(std::move(observations), config.tau);
}

double sup_distance_to_true_censoring(const ScenarioConfig& config,
                                      const StepCurve& g_hat) {
  const double tau = config.tau;
  auto g_true = [&](double t) { return true_censoring_survival(config, t); };
  double sup = 0.0;
  double segment_start = 0.0;
  double value = g_hat.initial_value();
  auto consider_segment = [&](double a, double b, double v) {
    // G is monotone, so |v - G| over [a, b] peaks at an endpoint.
    sup = std::max(sup, std::fabs(v - g_true(a)));
    sup = std::max(sup, std::fabs(v - g_true(b)));
  };
  for (std::size_t j = 0; j < g_hat.jump_count(); ++j) {
    const double t = g_hat.jump_times()[j];
    if (segment_start > tau) break;
    consider_segment(segment_start, std::min(t, tau), value);
    segment_start = t;
    value = g_hat.values()[j];
  }
  if (segment_start <= tau) consider_segment(segment_start, tau, value);
  return sup;
}

}  // namespace censbound
