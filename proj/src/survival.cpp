#include "censbound/survival.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "censbound/errors.hpp"

namespace censbound {

namespace {

// (u, failure) pairs sorted by time ascending.
std::vector<std::pair<double, bool>> sorted_events(
    const CensoredSample& sample) {
  std::vector<std::pair<double, bool>> events;
  events.reserve(sample.size());
  for (const auto& obs : sample.observations()) {
    events.emplace_back(obs.u, obs.failure);
  }
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return events;
}

// Walks distinct times in increasing order and reports, per group,
// the time, failure count, censoring count, and at-risk count Y(t).
template <typename Visitor>
void walk_event_groups(const std::vector<std::pair<double, bool>>& events,
                       Visitor&& visit) {
  const std::size_t n = events.size();
  std::size_t i = 0;
  while (i < n) {
    const double t = events[i].first;
    int failures = 0, censorings = 0;
    std::size_t j = i;
    while (j < n && events[j].first == t) {
      (events[j].second ? failures : censorings)++;
      ++j;
    }
    visit(t, failures, censorings, static_cast<int>(n - i));
    i = j;
  }
}

}  // namespace

StepCurve km_fit(const CensoredSample& sample, EventTarget target) {
  auto events = sorted_events(sample);
  std::vector<double> times, values;
  double survival = 1.0;
  walk_event_groups(events, [&](double t, int failures, int censorings,
                                int risk) {
    if (target == EventTarget::Failure) {
      if (failures > 0) {
        survival *= 1.0 - static_cast<double>(failures) / risk;
        times.push_back(t);
        values.push_back(survival);
      }
    } else {
      // Failures at t leave the risk set before the censorings are processed.
      if (censorings > 0) {
        const int censoring_risk = risk - failures;
        survival *= 1.0 - static_cast<double>(censorings) / censoring_risk;
        times.push_back(t);
        values.push_back(survival);
      }
    }
  });
  return StepCurve(1.0, std::move(times), std::move(values));
}

StepCurve nelson_aalen_censoring(const CensoredSample& sample) {
  auto events = sorted_events(sample);
  std::vector<double> times, values;
  double cumulative = 0.0;
  walk_event_groups(events, [&](double t, int failures, int censorings,
                                int risk) {
    if (censorings > 0) {
      const int censoring_risk = risk - failures;
      cumulative += static_cast<double>(censorings) / censoring_risk;
      times.push_back(t);
      values.push_back(cumulative);
    }
  });
  return StepCurve(0.0, std::move(times), std::move(values));
}

int at_risk(const CensoredSample& sample, double t) {
  int count = 0;
  for (const auto& obs : sample.observations()) {
    if (obs.u >= t) ++count;
  }
  return count;
}

TailEstimates tail_estimates(const CensoredSample& sample) {
  TailEstimates tails;
  tails.s_hat_tau = km_fit(sample, EventTarget::Failure).left_limit(sample.tau());
  tails.g_hat_tau =
      km_fit(sample, EventTarget::Censoring).left_limit(sample.tau());
  tails.h_hat_tau = static_cast<double>(at_risk(sample, sample.tau())) /
                    static_cast<double>(sample.size());
  return tails;
}

IdentityReport identity_suite(const CensoredSample& sample) {
  if (sample.has_failure_censoring_ties()) throw TiePresent();

  const StepCurve g_hat = km_fit(sample, EventTarget::Censoring);
  const StepCurve s_hat = km_fit(sample, EventTarget::Failure);
  const StepCurve lambda_hat = nelson_aalen_censoring(sample);
  const double n = static_cast<double>(sample.size());

  // Prefix sums of dLambda(s)/G_hat(s) over the censoring jump times.
  const auto& jump_times = lambda_hat.jump_times();
  std::vector<double> prefix(jump_times.size());
  double running = 0.0;
  double previous_lambda = 0.0;
  for (std::size_t j = 0; j < jump_times.size(); ++j) {
    const double increment = lambda_hat.values()[j] - previous_lambda;
    previous_lambda = lambda_hat.values()[j];
    running += increment / g_hat(jump_times[j]);
    prefix[j] = running;
  }
  auto prefix_at = [&](double u) {
    auto it = std::upper_bound(jump_times.begin(), jump_times.end(), u);
    if (it == jump_times.begin()) return 0.0;
    return prefix[static_cast<std::size_t>(it - jump_times.begin()) - 1];
  };

  IdentityReport report;
  for (const auto& obs : sample.observations()) {
    const double u = obs.u;

    // (i) risk-set product identity, exact at every observed point.
    const double lhs_risk = static_cast<double>(at_risk(sample, u)) / n;
    const double rhs_risk = g_hat.left_limit(u) * s_hat.left_limit(u);
    report.risk_product_max_abs =
        std::max(report.risk_product_max_abs, std::fabs(lhs_risk - rhs_risk));

    const double g_at_u = g_hat(u);
    if (g_at_u <= 0.0) {
      ++report.points_skipped_zero_g;
      continue;
    }
    const double cumulative = prefix_at(u);

    // (ii) telescoping identity for 1/G_hat.
    const double telescoping = std::fabs(1.0 / g_at_u - 1.0 - cumulative);
    report.telescoping_max_abs =
        std::max(report.telescoping_max_abs, telescoping);

    // (iii) per-observation IPCW weight decomposition.
    const double delta = obs.failure ? 1.0 : 0.0;
    const double lhs = delta / g_at_u;
    const double rhs = 1.0 - ((1.0 - delta) / g_at_u - cumulative);
    report.ipcw_decomposition_max_abs =
        std::max(report.ipcw_decomposition_max_abs, std::fabs(lhs - rhs));
  }
  return report;
}

}  // namespace censbound
