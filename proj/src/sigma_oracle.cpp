#include "censbound/sigma_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "censbound/errors.hpp"
#include "censbound/rng.hpp"

namespace censbound {

namespace {

// Composite Simpson over precomputed node values (count must be odd).
double simpson_nodes(const std::vector<double>& values, double h) {
  double sum = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    sum += values[i] * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return sum * h / 3.0;
}

double censoring_term_quadrature(const ScenarioConfig& config,
                                 const BoundedFunction& f, int panels) {
  if (panels % 2 != 0) ++panels;
  const int node_count = panels + 1;
  const double h = config.tau / panels;
  const auto atoms = failure_atoms(config);

  // Suffix integrals N(s_k) = E[f(T) 1{T >= s_k}], built backward with
  // per-panel Simpson over the density part plus the atom masses.
  std::vector<double> suffix(node_count, 0.0);
  auto density_part = [&](double t) {
    return f(t, {}) * failure_density(config, t);
  };
  double running = 0.0;
  for (int k = panels - 1; k >= 0; --k) {
    const double a = k * h;
    const double b = a + h;
    running += (h / 6.0) *
               (density_part(a) + 4.0 * density_part(0.5 * (a + b)) +
                density_part(b));
    suffix[k] = running;
  }
  for (int k = 0; k < node_count; ++k) {
    const double s = k * h;
    for (const auto& [time, mass] : atoms) {
      if (time >= s) suffix[k] += mass * f(time, {});
    }
  }

  std::vector<double> integrand(node_count);
  for (int k = 0; k < node_count; ++k) {
    const double s = k * h;
    const double s_left = true_failure_survival_left(config, s);
    const double q = suffix[k] / s_left;
    const double centered = f(s, {}) - q;
    integrand[k] = centered * centered * s_left *
                   true_censoring_hazard_density(config, s) /
                   true_censoring_survival(config, s);
  }
  return simpson_nodes(integrand, h);
}

double censoring_term_mc(const ScenarioConfig& config,
                         const BoundedFunction& f,
                         const SigmaOracleOptions& options) {
  const std::size_t draws = options.mc_draws;
  constexpr std::size_t kBlock = 4096;
  std::vector<double> t_values(draws);
  std::vector<double> f_values(draws);
  std::vector<std::vector<double>> z_values(draws);
  for (std::size_t start = 0; start < draws; start += kBlock) {
    StreamRng rng(config.seed ^ options.mc_salt, start / kBlock);
    const std::size_t end = std::min(start + kBlock, draws);
    for (std::size_t r = start; r < end; ++r) {
      const double t = draw_failure_time(config, rng);
      std::vector<double> z(config.covariate_dim);
      for (auto& zi : z) zi = rng.next_double();
      t_values[r] = t;
      f_values[r] = f(t, z);
      z_values[r] = std::move(z);
    }
  }

  // Sort draw indices by T so suffix sums give E[f(T,Z) 1{T >= s}].
  std::vector<std::size_t> order(draws);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return t_values[a] < t_values[b];
  });
  std::vector<double> sorted_t(draws), suffix_f(draws + 1, 0.0);
  for (std::size_t i = 0; i < draws; ++i) sorted_t[i] = t_values[order[i]];
  for (std::size_t i = draws; i-- > 0;) {
    suffix_f[i] = suffix_f[i + 1] + f_values[order[i]];
  }

  int panels = options.mc_outer_panels;
  if (panels % 2 != 0) ++panels;
  const double h = config.tau / panels;
  std::vector<double> integrand(panels + 1);
  for (int k = 0; k <= panels; ++k) {
    const double s = k * h;
    const auto first =
        std::lower_bound(sorted_t.begin(), sorted_t.end(), s) -
        sorted_t.begin();
    const double mean_f_at_risk =
        suffix_f[first] / static_cast<double>(draws);
    const double q = mean_f_at_risk / true_failure_survival_left(config, s);
    double accum = 0.0;
    for (std::size_t i = first; i < draws; ++i) {
      const double centered = f(s, z_values[order[i]]) - q;
      accum += centered * centered;
    }
    integrand[k] = (accum / static_cast<double>(draws)) *
                   true_censoring_hazard_density(config, s) /
                   true_censoring_survival(config, s);
  }
  return simpson_nodes(integrand, h);
}

}  // namespace

VarianceResult sigma_f_oracle(const ScenarioConfig& config,
                              const BoundedFunction& f,
                              const SigmaOracleOptions& options) {
  validate_scenario(config);
  VarianceResult result;
  result.term_variance = var_true(config, f);
  if (config.censoring.kind == CensoringModel::Kind::None) {
    result.term_censoring = 0.0;
  } else if (!f.depends_on_z()) {
    result.term_censoring =
        censoring_term_quadrature(config, f, options.quad_panels);
  } else {
    result.term_censoring = censoring_term_mc(config, f, options);
  }
  result.sigma2 = result.term_variance + result.term_censoring;
  return result;
}

}  // namespace censbound
