#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace censbound {

enum class BoundKind {
  HoeffdingSimple,        // hoeffding-simple
  HoeffdingDistribution,  // hoeffding-dist
  DkwKm,                  // dkw-km
  DkwKmEmpirical,         // dkw-km-empirical
  HoeffdingEmpirical,     // hoeffding-empirical
  FiniteClassUnion,       // finite-union
  ClassDistribution,      // class-dist
  ClassEmpirical,         // class-empirical
  ClassSimpleSup,         // class-simple-sup
  Bernstein,              // bernstein
  BernsteinDistribution,  // bernstein-dist
};

std::string_view bound_kind_name(BoundKind kind);
BoundKind bound_kind_from_name(std::string_view name);

/// Constants feeding the inequality calculators. Only the fields a kind
/// actually uses need be populated; absent required fields raise
/// MissingInput.
struct BoundInputs {
  std::size_t n = 0;
  std::optional<double> eta;
  std::optional<double> M;
  double D_o = 1.0;
  std::optional<double> H_tau;      // distributional
  std::optional<double> S_tau;      // distributional
  std::optional<double> H_hat_tau;  // empirical
  std::optional<double> G_hat_tau;  // empirical
  std::optional<double> S_hat_tau;  // empirical
  std::optional<double> sigma2;     // Bernstein kinds
  std::optional<std::size_t> class_size;  // finite-union
  bool corrected_chernoff = false;  // opt-in n H/3 exponent (see chernoff_term)
};

struct BoundResult {
  BoundKind kind;
  double deviation_threshold = 0.0;
  double prob_bound = 0.0;
  bool vacuous = false;  // prob_bound >= 1; returned as-is
  std::string normalization;
};

/// Solves the selected inequality for its raw statistic: |mu_hat - mu| for
/// the Hoeffding/Bernstein kinds, sup_F |mu_hat - mu| for the class kinds,
/// and ||G_hat - G||_inf for the DKW-KM kinds.
BoundResult deviation_bound(BoundKind kind, const BoundInputs& inputs);

enum class ChernoffVariant { Third, Half };

/// Multiplicative-Chernoff remainder. The default reproduces the literal
/// expressions e^{-H_tau/(3n)} / e^{-H_tau/(2n)}; corrected = true substitutes
/// e^{-n H_tau/3} / e^{-n H_tau/2}.
double chernoff_term(double h_tau, std::size_t n, ChernoffVariant variant,
                     bool corrected = false);

enum class ConvertDirection { EtaToEps, EpsToEta };

/// eps = sqrt(eta/2 + (D_o/4)^2) + D_o/4  <=>  eta = 2 eps^2 - D_o eps.
/// halved = true uses the variant with eps/2 on the left, i.e.
/// eta = eps^2/2 - D_o eps / 2.
double eta_eps_convert(ConvertDirection direction, double value, double D_o,
                       bool halved = false);

/// Solves prob_bound(eta) = delta for eta. The additive Chernoff terms do not
/// depend on eta, so the solve is closed-form for every kind; when the
/// additive terms already exceed delta the target is Unattainable.
double invert_confidence(BoundKind kind, double delta,
                         const BoundInputs& inputs);

namespace detail {

/// Same formulas as deviation_bound, but a zero empirical normalizer yields
/// an infinite threshold instead of an error. The coverage engine uses this
/// to evaluate per-replication events: with a zero realized constant the
/// theorem's normalized event is trivially false.
double deviation_threshold_or_infinity(BoundKind kind,
                                       const BoundInputs& inputs);

}  // namespace detail

}  // namespace censbound
