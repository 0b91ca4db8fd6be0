#pragma once

#include "censbound/sample.hpp"
#include "censbound/step_curve.hpp"

namespace censbound {

enum class EventTarget { Failure, Censoring };

/// Kaplan-Meier product-limit estimator. target = Failure gives S_hat
/// (events are delta = 1), target = Censoring gives G_hat (events are
/// delta = 0). At tied times failures are processed before censorings, so the
/// censoring risk set at a tied time excludes the failures that occur there.
StepCurve km_fit(const CensoredSample& sample, EventTarget target);

/// Nelson-Aalen estimator of the censoring cumulative hazard Lambda^C, with
/// increments (#censorings at t) / Y(t) under the same tie convention as
/// km_fit, so that G_hat(t) = G_hat(t-) * (1 - dLambda(t)) holds exactly at
/// every jump.
StepCurve nelson_aalen_censoring(const CensoredSample& sample);

/// At-risk count Y(t) = #{i : u_i >= t}.
int at_risk(const CensoredSample& sample, double t);

struct TailEstimates {
  double s_hat_tau = 0.0;  // S_hat(tau-)
  double g_hat_tau = 0.0;  // G_hat(tau-)
  double h_hat_tau = 0.0;  // n^-1 #{u_i >= tau}
};

TailEstimates tail_estimates(const CensoredSample& sample);

/// Max absolute discrepancies of the exact discrete identities, evaluated
/// with the plug-in curves G_hat and Lambda_hat^C:
///   (i)   n^-1 Y(u) = G_hat(u-) S_hat(u-)          at every observed u
///   (ii)  1/G_hat(u) - 1 = sum_{s<=u} dLambda(s)/G_hat(s)
///   (iii) delta_i/G_hat(u_i) = 1 - [(1-delta_i)/G_hat(u_i)
///                                   - sum_{s<=u_i} dLambda(s)/G_hat(s)]
/// Points where G_hat(u) = 0 (possible only at the largest observation when
/// it is censored) make both sides of (ii)/(iii) infinite and are skipped and
/// counted.
struct IdentityReport {
  double risk_product_max_abs = 0.0;
  double telescoping_max_abs = 0.0;
  double ipcw_decomposition_max_abs = 0.0;
  int points_skipped_zero_g = 0;
};

/// Throws TiePresent when the sample has failure/censoring ties.
IdentityReport identity_suite(const CensoredSample& sample);

}  // namespace censbound
