#pragma once

#include <limits>
#include <optional>

#include "censbound/bounded_function.hpp"
#include "censbound/sample.hpp"
#include "censbound/step_curve.hpp"

namespace censbound {

struct EstimateResult {
  double value = 0.0;
  int n_effective = 0;              // number of delta = 1 terms
  double min_weight_denominator =   // smallest G_hat(u-) over used terms
      std::numeric_limits<double>::infinity();
};

struct VarianceResult {
  double sigma2 = 0.0;
  double term_variance = 0.0;   // Var f(T,Z)
  double term_censoring = 0.0;  // censoring-martingale correction
};

struct IpcwOptions {
  // Optional floor for the weight denominator. Disabled by default: a zero
  // denominator is a hard error, since silent clamping would corrupt the
  // bound-coverage experiments.
  std::optional<double> denominator_floor;
};

/// IPCW mean  mu_hat_n(f) = n^-1 sum_i delta_i f(u_i, z_i) / G_hat(u_i-).
/// g_curve is km_fit(sample, Censoring) or a supplied oracle G.
EstimateResult ipcw_mean(const CensoredSample& sample,
                         const BoundedFunction& f, const StepCurve& g_curve,
                         const IpcwOptions& options = {});

/// Kaplan-Meier functional representation sum_j f(t*_j) dF_hat(t*_j) with
/// F_hat = 1 - S_hat. Equals ipcw_mean for time-only f on tie-free samples;
/// the two are computed through independent curves (S_hat here, G_hat there).
double km_functional_mean(const CensoredSample& sample,
                          const BoundedFunction& f);

/// Mean of f over the uncensored observations only; biased under censoring.
double naive_mean(const CensoredSample& sample, const BoundedFunction& f);

/// Plug-in estimate of the asymptotic variance sigma_f^2: S, G, Lambda^C are
/// replaced by their Kaplan-Meier/Nelson-Aalen plug-ins and every population
/// functional by its IPCW counterpart. The inner centering uses the
/// self-normalized ratio q_hat(s) = mu_hat(f 1{t>=s}) / mu_hat(1{t>=s}) and
/// the variance term is the IPCW-weighted variance, so constants map to
/// exactly zero. Diagnostic only.
VarianceResult sigma_f_plugin(const CensoredSample& sample,
                              const BoundedFunction& f,
                              const IpcwOptions& options = {});

}  // namespace censbound
