#include "censbound/erm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "censbound/errors.hpp"
#include "censbound/parallel.hpp"
#include "censbound/rng.hpp"
#include "censbound/survival.hpp"

namespace censbound {

namespace {

constexpr std::uint64_t kRiskSalt = 0x7269736B6F72ULL;
constexpr std::uint64_t kLossProbeSalt = 0x6C6F7373ULL;

double checked_loss(const LossSpec& spec, double y, double s) {
  const double value = spec.loss(y, s);
  if (!(value >= 0.0)) {
    throw ValidationError("loss must be nonnegative" +
                          (spec.label.empty() ? "" : " (" + spec.label + ")"));
  }
  if (value > spec.B) {
    throw BoundViolation("loss value " + std::to_string(value) +
                         " exceeds declared bound B = " +
                         std::to_string(spec.B));
  }
  return value;
}

}  // namespace

LossSpec squared_loss() {
  LossSpec spec;
  spec.loss = [](double y, double s) {
    const double d = y - s;
    return d * d;
  };
  spec.B = 1.0;
  spec.L_M = 2.0;
  spec.label = "squared";
  return spec;
}

void validate_loss(const LossSpec& spec, std::span<const double> y_probe,
                   std::pair<double, double> s_range, std::uint64_t seed,
                   int trials) {
  if (!spec.loss) throw ValidationError("validate_loss: loss is empty");
  if (!(spec.B > 0.0) || !(spec.L_M > 0.0)) {
    throw ValidationError("validate_loss: B and L_M must be positive");
  }
  if (y_probe.empty()) throw ValidationError("validate_loss: empty y probe");
  StreamRng rng(seed ^ kLossProbeSalt, 0);
  for (int trial = 0; trial < trials; ++trial) {
    const double y =
        y_probe[static_cast<std::size_t>(rng.next_u64() % y_probe.size())];
    const double s = rng.uniform(s_range.first, s_range.second);
    const double s2 = rng.uniform(s_range.first, s_range.second);
    const double l1 = checked_loss(spec, y, s);
    const double l2 = checked_loss(spec, y, s2);
    if (std::fabs(l1 - l2) > spec.L_M * std::fabs(s - s2) + 1e-12) {
      throw ValidationError(
          "loss violates the declared Lipschitz constant L_M on the probed "
          "range");
    }
  }
}

FunctionClass FunctionClass::finite(std::vector<BoundedFunction> members) {
  if (members.empty()) throw ValidationError("finite class needs members");
  FunctionClass cls;
  cls.kind_ = Kind::Finite;
  cls.sup_bound_ = 0.0;
  for (const auto& member : members) {
    cls.sup_bound_ = std::max(cls.sup_bound_, member.bound());
  }
  cls.members_ = std::move(members);
  return cls;
}

FunctionClass FunctionClass::constants(double lo, double hi) {
  if (!(lo <= hi)) throw ValidationError("constants class: lo must be <= hi");
  FunctionClass cls;
  cls.kind_ = Kind::Constants;
  cls.lo_ = lo;
  cls.hi_ = hi;
  cls.sup_bound_ = std::max({std::fabs(lo), std::fabs(hi), 1e-12});
  return cls;
}

FunctionClass FunctionClass::linear_time(double alpha_lo, double alpha_hi,
                                         double tau) {
  if (!(alpha_lo <= alpha_hi)) {
    throw ValidationError("linear class: alpha_lo must be <= alpha_hi");
  }
  if (!(tau > 0.0)) throw ValidationError("linear class: tau must be positive");
  FunctionClass cls;
  cls.kind_ = Kind::LinearTime;
  cls.lo_ = alpha_lo;
  cls.hi_ = alpha_hi;
  cls.tau_ = tau;
  cls.sup_bound_ =
      std::max({std::fabs(alpha_lo), std::fabs(alpha_hi), 1e-12}) * tau;
  return cls;
}

std::optional<std::pair<double, double>> FunctionClass::covering_exponents()
    const {
  // Interval classes: N(eps) = ceil(L / (2 eps)) with L the sup-norm
  // diameter, so log N <= log(1 + L/(2 eps)) <= (L/2) eps^-1.
  switch (kind_) {
    case Kind::Constants:
      return std::make_pair(std::max(1.5, (hi_ - lo_) / 2.0), 1.0);
    case Kind::LinearTime:
      return std::make_pair(std::max(1.5, (hi_ - lo_) * tau_ / 2.0), 1.0);
    case Kind::Finite:
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t FunctionClass::covering_number(double epsilon) const {
  if (kind_ == Kind::Finite) return members_.size();
  if (!(epsilon > 0.0)) {
    throw UnsupportedClass("covering_number: epsilon must be positive");
  }
  const double diameter =
      kind_ == Kind::Constants ? hi_ - lo_ : (hi_ - lo_) * tau_;
  if (diameter <= 0.0) return 1;
  return static_cast<std::size_t>(std::ceil(diameter / (2.0 * epsilon)));
}

std::vector<BoundedFunction> FunctionClass::net(double epsilon) const {
  if (kind_ == Kind::Finite) return members_;
  const std::size_t intervals = covering_number(epsilon);
  std::vector<BoundedFunction> net_members;
  const double bound = sup_bound_;
  auto make_member = [&](double parameter, std::size_t index) {
    if (kind_ == Kind::Constants) {
      return BoundedFunction(
          [parameter](double, std::span<const double>) { return parameter; },
          bound, false, "const[" + std::to_string(index) + "]");
    }
    return BoundedFunction(
        [parameter](double t, std::span<const double>) {
          return parameter * t;
        },
        bound, false, "linear[" + std::to_string(index) + "]");
  };
  if (hi_ == lo_ || intervals == 0) {
    net_members.push_back(make_member(lo_, 0));
    return net_members;
  }
  const double step = (hi_ - lo_) / static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) {
    net_members.push_back(make_member(lo_ + step * static_cast<double>(k), k));
  }
  return net_members;
}

namespace {

// IPCW empirical risks of every net member, in member order.
std::vector<double> net_empirical_risks(const CensoredSample& sample,
                                        const std::vector<BoundedFunction>& net,
                                        const LossSpec& loss,
                                        const ErmOptions& options) {
  const StepCurve g_curve = km_fit(sample, EventTarget::Censoring);
  std::vector<double> weights(sample.size(), 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& obs = sample.observations()[i];
    if (!obs.failure) continue;
    double denominator = g_curve.left_limit(obs.u);
    if (denominator <= 0.0) {
      if (!options.ipcw.denominator_floor) throw ZeroDenominator();
      denominator = *options.ipcw.denominator_floor;
    }
    weights[i] = 1.0 / denominator;
  }
  std::vector<double> risks(net.size(), 0.0);
  parallel_for_index(net.size(), options.workers, [&](std::size_t m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const auto& obs = sample.observations()[i];
      sum += weights[i] * checked_loss(loss, *obs.y, net[m](obs.u, obs.z));
    }
    risks[m] = sum / static_cast<double>(sample.size());
  });
  return risks;
}

}  // namespace

ErmResult censored_erm(const CensoredSample& sample, const FunctionClass& cls,
                       const LossSpec& loss, double epsilon,
                       const ErmOptions& options) {
  if (!sample.has_responses()) {
    throw ValidationError("censored_erm: every observation needs a response");
  }
  const auto net = cls.net(epsilon);
  if (net.empty()) throw EmptyNet();
  const auto risks = net_empirical_risks(sample, net, loss, options);
  std::size_t best = 0;
  for (std::size_t m = 1; m < risks.size(); ++m) {
    if (risks[m] < risks[best]) best = m;
  }
  return ErmResult{best, risks[best], net[best]};
}

RiskEstimate risk_oracle(const ScenarioConfig& config,
                         const BoundedFunction& f, const LossSpec& loss,
                         std::size_t draws) {
  if (!config.response) throw NoResponseModel();
  validate_scenario(config);
  constexpr std::size_t kBlock = 4096;
  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> z(config.covariate_dim);
  for (std::size_t start = 0; start < draws; start += kBlock) {
    StreamRng rng(config.seed ^ kRiskSalt, start / kBlock);
    const std::size_t end = std::min(start + kBlock, draws);
    for (std::size_t r = start; r < end; ++r) {
      const double t = draw_failure_time(config, rng);
      for (auto& zi : z) zi = rng.next_double();
      const double y = draw_response(config, rng, t, z);
      const double value = checked_loss(loss, y, f(t, z));
      sum += value;
      sum_sq += value * value;
    }
  }
  const double count = static_cast<double>(draws);
  RiskEstimate estimate;
  estimate.value = sum / count;
  const double variance =
      std::max(0.0, sum_sq / count - estimate.value * estimate.value);
  estimate.stderr_ = std::sqrt(variance / count);
  return estimate;
}

double oracle_gap_bound(const GapBoundInputs& in) {
  if (in.n < 1) throw TooFewSamples("oracle_gap_bound requires n >= 1");
  if (!(in.eta > 0.0)) throw MissingInput("eta");
  if (!(in.B > 0.0)) throw MissingInput("B");
  if (!(in.L_M > 0.0)) throw MissingInput("L_M");
  if (!(in.D_o >= 0.0)) throw OutOfDomain("D_o must be nonnegative");
  if (!(in.epsilon >= 0.0)) throw OutOfDomain("epsilon must be nonnegative");
  if (in.covering_count < 1) throw MissingInput("covering_count");
  if (!(in.h_hat_tau > 0.0)) throw NonpositiveNormalizer("H_hat_tau");
  if (!(in.g_hat_tau > 0.0)) throw NonpositiveNormalizer("G_hat_tau");
  const double normalizer = in.h_hat_tau * in.g_hat_tau * in.g_hat_tau;
  const double log_n_eps =
      std::log(static_cast<double>(in.covering_count));
  const double root = std::sqrt(2.0 * in.eta + 2.0 * log_n_eps);
  return (in.B / normalizer) * (8.0 * root + 6.0 * in.D_o) /
             std::sqrt(static_cast<double>(in.n)) +
         4.0 * in.epsilon * in.L_M / normalizer;
}

namespace {

// Oracle risks of a set of functions from one shared draw pool; the shared
// draws make risk differences (what the argmin and the gaps use) far more
// accurate than the per-point standard error.
std::vector<double> oracle_risks_shared(
    const ScenarioConfig& config, const std::vector<BoundedFunction>& members,
    const LossSpec& loss, std::size_t draws) {
  if (!config.response) throw NoResponseModel();
  constexpr std::size_t kBlock = 4096;
  std::vector<double> sums(members.size(), 0.0);
  std::vector<double> z(config.covariate_dim);
  for (std::size_t start = 0; start < draws; start += kBlock) {
    StreamRng rng(config.seed ^ kRiskSalt, start / kBlock);
    const std::size_t end = std::min(start + kBlock, draws);
    for (std::size_t r = start; r < end; ++r) {
      const double t = draw_failure_time(config, rng);
      for (auto& zi : z) zi = rng.next_double();
      const double y = draw_response(config, rng, t, z);
      for (std::size_t m = 0; m < members.size(); ++m) {
        sums[m] += checked_loss(loss, y, members[m](t, z));
      }
    }
  }
  for (auto& s : sums) s /= static_cast<double>(draws);
  return sums;
}

struct GapExperiment {
  std::vector<double> net_risks;  // oracle risks of the searched net
  double inf_risk = 0.0;          // oracle inf over the fine grid and the net
  std::vector<BoundedFunction> net;
};

GapExperiment prepare_gap_experiment(const ScenarioConfig& config,
                                     const FunctionClass& cls,
                                     const LossSpec& loss,
                                     double net_epsilon) {
  GapExperiment experiment;
  experiment.net = cls.net(net_epsilon);
  if (experiment.net.empty()) throw EmptyNet();
  constexpr std::size_t kOracleDraws = 100000;
  experiment.net_risks =
      oracle_risks_shared(config, experiment.net, loss, kOracleDraws);
  // inf R_L over the class located on a finer grid (plus the net itself).
  std::vector<BoundedFunction> fine =
      cls.is_finite_family() ? experiment.net : cls.net(net_epsilon / 4.0);
  const auto fine_risks = oracle_risks_shared(config, fine, loss, kOracleDraws);
  experiment.inf_risk =
      *std::min_element(fine_risks.begin(), fine_risks.end());
  experiment.inf_risk =
      std::min(experiment.inf_risk, *std::min_element(
                                        experiment.net_risks.begin(),
                                        experiment.net_risks.end()));
  return experiment;
}

}  // namespace

ConsistencyReport run_erm_consistency(const ScenarioConfig& config,
                                      const FunctionClass& cls,
                                      const LossSpec& loss,
                                      std::vector<std::size_t> n_grid,
                                      std::size_t replications, double eps_tol,
                                      double net_epsilon,
                                      const ErmOptions& options) {
  validate_scenario(config);
  if (!config.response) throw NoResponseModel();
  if (n_grid.empty()) throw ValidationError("run_erm_consistency: empty n grid");

  const GapExperiment experiment =
      prepare_gap_experiment(config, cls, loss, net_epsilon);

  ConsistencyReport report;
  report.n_grid = std::move(n_grid);
  report.eps_tol = eps_tol;
  report.replications = replications;
  report.inf_risk_oracle = experiment.inf_risk;
  report.seed = config.seed;

  for (std::size_t g = 0; g < report.n_grid.size(); ++g) {
    const std::size_t n = report.n_grid[g];
    std::vector<double> gaps(replications, 0.0);
    std::vector<char> excluded(replications, 0);
    parallel_for_index(replications, options.workers, [&](std::size_t r) {
      // Stream offset separates the n cells.
      const std::uint64_t stream = g * replications + r;
      const CensoredSample sample = sample_scenario(config, n, stream);
      try {
        ErmOptions serial_options = options;
        serial_options.workers = 1;  // replications already run in parallel
        const auto risks =
            net_empirical_risks(sample, experiment.net, loss, serial_options);
        std::size_t best = 0;
        for (std::size_t m = 1; m < risks.size(); ++m) {
          if (risks[m] < risks[best]) best = m;
        }
        gaps[r] = experiment.net_risks[best] - experiment.inf_risk;
      } catch (const ZeroDenominator&) {
        excluded[r] = 1;
      }
    });
    std::size_t exceed = 0, valid = 0, skip = 0;
    double gap_sum = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      if (excluded[r]) {
        ++skip;
        continue;
      }
      ++valid;
      gap_sum += gaps[r];
      if (gaps[r] > eps_tol) ++exceed;
    }
    report.excluded.push_back(skip);
    report.gap_exceed_freq.push_back(
        valid > 0 ? static_cast<double>(exceed) / static_cast<double>(valid)
                  : 0.0);
    report.mean_gap.push_back(valid > 0 ? gap_sum / static_cast<double>(valid)
                                        : 0.0);
  }
  return report;
}

GapDominanceReport run_erm_gap_dominance(const ScenarioConfig& config,
                                         const FunctionClass& cls,
                                         const LossSpec& loss, std::size_t n,
                                         std::size_t replications,
                                         double delta, double net_epsilon,
                                         double D_o,
                                         const ErmOptions& options) {
  validate_scenario(config);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw OutOfDomain("delta must lie in (0, 1)");
  }
  const GapExperiment experiment =
      prepare_gap_experiment(config, cls, loss, net_epsilon);

  GapDominanceReport report;
  report.n = n;
  report.replications = replications;
  report.delta = delta;
  report.eta = std::log(5.5 / delta);
  report.epsilon = net_epsilon;
  report.net_size = experiment.net.size();
  report.inf_risk_oracle = experiment.inf_risk;
  report.seed = config.seed;

  std::vector<double> gaps(replications, 0.0), bounds(replications, 0.0);
  std::vector<char> excluded(replications, 0);
  parallel_for_index(replications, options.workers, [&](std::size_t r) {
    const CensoredSample sample = sample_scenario(config, n, r);
    try {
      ErmOptions serial_options = options;
      serial_options.workers = 1;
      const auto risks =
          net_empirical_risks(sample, experiment.net, loss, serial_options);
      std::size_t best = 0;
      for (std::size_t m = 1; m < risks.size(); ++m) {
        if (risks[m] < risks[best]) best = m;
      }
      gaps[r] = experiment.net_risks[best] - experiment.inf_risk;
      const TailEstimates tails = tail_estimates(sample);
      GapBoundInputs inputs;
      inputs.n = n;
      inputs.eta = report.eta;
      inputs.B = loss.B;
      inputs.L_M = loss.L_M;
      inputs.D_o = D_o;
      inputs.h_hat_tau = tails.h_hat_tau;
      inputs.g_hat_tau = tails.g_hat_tau;
      inputs.covering_count = experiment.net.size();
      inputs.epsilon = net_epsilon;
      bounds[r] = oracle_gap_bound(inputs);
    } catch (const NumericError&) {
      excluded[r] = 1;
    }
  });

  std::vector<double> valid_gaps, valid_bounds;
  std::size_t dominated = 0;
  for (std::size_t r = 0; r < replications; ++r) {
    if (excluded[r]) {
      ++report.excluded;
      continue;
    }
    valid_gaps.push_back(gaps[r]);
    valid_bounds.push_back(bounds[r]);
    if (gaps[r] <= bounds[r]) ++dominated;
  }
  if (!valid_gaps.empty()) {
    report.dominance_freq = static_cast<double>(dominated) /
                            static_cast<double>(valid_gaps.size());
    auto median = [](std::vector<double> values) {
      std::sort(values.begin(), values.end());
      return values[values.size() / 2];
    };
    report.median_gap = median(valid_gaps);
    report.median_bound = median(valid_bounds);
  }
  return report;
}

}  // namespace censbound
