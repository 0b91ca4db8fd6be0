#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "censbound/bounded_function.hpp"
#include "censbound/ipcw.hpp"
#include "censbound/sample.hpp"
#include "censbound/scenario.hpp"

namespace censbound {

/// Loss L(y, s) with a uniform bound B and a Lipschitz constant L_M in the
/// second argument. Both constants are spot-checked by validate_loss and
/// opportunistically during risk evaluation.
struct LossSpec {
  std::function<double(double, double)> loss;
  double B = 1.0;
  double L_M = 1.0;
  std::string label;
};

/// (y - s)^2 with B = 1 and L_M = 2, valid for responses and predictions in
/// [0, 1].
LossSpec squared_loss();

/// Spot-checks the declared constants on random (y, s, s') triples: y from
/// y_probe, s and s' from s_range. s_range should be the value range the
/// class actually produces; probing outside it would reject constants that
/// are perfectly valid for the hypotheses being searched.
void validate_loss(const LossSpec& spec, std::span<const double> y_probe,
                   std::pair<double, double> s_range, std::uint64_t seed,
                   int trials = 4096);

/// Hypothesis class: a finite family, or a one-parameter family (constants,
/// or t -> alpha t) with an exact sup-norm net constructor.
/// covering_number(eps) is the minimal interval covering (centers at odd
/// multiples of eps); net(eps) is the inclusive endpoint grid of covering
/// radius <= eps, a valid but one-larger net whose stable indices the
/// experiments use.
class FunctionClass {
 public:
  static FunctionClass finite(std::vector<BoundedFunction> members);
  static FunctionClass constants(double lo, double hi);
  static FunctionClass linear_time(double alpha_lo, double alpha_hi,
                                   double tau);

  bool is_finite_family() const { return kind_ == Kind::Finite; }
  double sup_bound() const { return sup_bound_; }
  std::optional<std::pair<double, double>> covering_exponents() const;

  std::size_t covering_number(double epsilon) const;
  std::vector<BoundedFunction> net(double epsilon) const;

 private:
  enum class Kind { Finite, Constants, LinearTime };
  FunctionClass() = default;
  Kind kind_ = Kind::Finite;
  std::vector<BoundedFunction> members_;
  double lo_ = 0.0, hi_ = 0.0, tau_ = 1.0;
  double sup_bound_ = 1.0;
};

struct ErmResult {
  std::size_t argmin_index = 0;
  double empirical_risk = 0.0;
  BoundedFunction minimizer;
};

struct ErmOptions {
  int workers = 1;
  IpcwOptions ipcw;
};

/// Censored empirical risk minimizer: exhaustive search of the epsilon-net
/// (the members themselves for finite classes) for the smallest IPCW
/// empirical risk; ties break to the smallest index.
ErmResult censored_erm(const CensoredSample& sample, const FunctionClass& cls,
                       const LossSpec& loss, double epsilon,
                       const ErmOptions& options = {});

struct RiskEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// R_L(f) = E L(Y, f(T,Z)) by seeded Monte Carlo over uncensored draws.
RiskEstimate risk_oracle(const ScenarioConfig& config,
                         const BoundedFunction& f, const LossSpec& loss,
                         std::size_t draws = 100000);

struct GapBoundInputs {
  std::size_t n = 0;
  double eta = 0.0;
  double B = 1.0;
  double L_M = 1.0;
  double D_o = 1.0;
  double h_hat_tau = 0.0;
  double g_hat_tau = 0.0;
  std::size_t covering_count = 1;
  double epsilon = 0.0;
};

/// High-probability bound on R_L(f_n^C) - inf_F R_L, failing with probability
/// at most (11/2) e^{-eta}:
///   (B / (H_hat_tau G_hat_tau^2)) (8 sqrt(2 eta + 2 log N_eps) + 6 D_o)
///      / sqrt(n)
///   + 4 eps L_M / (H_hat_tau G_hat_tau^2).
double oracle_gap_bound(const GapBoundInputs& inputs);

struct ConsistencyReport {
  std::vector<std::size_t> n_grid;
  std::vector<double> gap_exceed_freq;  // per n: #{gap > eps_tol} / valid
  std::vector<double> mean_gap;
  std::vector<std::size_t> excluded;
  double eps_tol = 0.0;
  std::size_t replications = 0;
  double inf_risk_oracle = 0.0;
  std::uint64_t seed = 0;
};

/// Realized-risk-gap frequencies over an n grid; consistency shows as a
/// nonincreasing profile.
ConsistencyReport run_erm_consistency(const ScenarioConfig& config,
                                      const FunctionClass& cls,
                                      const LossSpec& loss,
                                      std::vector<std::size_t> n_grid,
                                      std::size_t replications, double eps_tol,
                                      double net_epsilon,
                                      const ErmOptions& options = {});

struct GapDominanceReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t excluded = 0;
  double delta = 0.0;
  double eta = 0.0;
  double epsilon = 0.0;
  std::size_t net_size = 0;
  double dominance_freq = 0.0;  // fraction of reps with gap <= bound
  double median_gap = 0.0;
  double median_bound = 0.0;
  double inf_risk_oracle = 0.0;
  std::uint64_t seed = 0;
};

/// Per-replication comparison of the realized risk gap against
/// oracle_gap_bound evaluated with the replication's realized tail constants
/// at eta = log((11/2) / delta).
GapDominanceReport run_erm_gap_dominance(const ScenarioConfig& config,
                                         const FunctionClass& cls,
                                         const LossSpec& loss, std::size_t n,
                                         std::size_t replications,
                                         double delta, double net_epsilon,
                                         double D_o,
                                         const ErmOptions& options = {});

}  // namespace censbound
