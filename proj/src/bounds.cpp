#include "censbound/bounds.hpp"

#include <cmath>
#include <limits>

#include "censbound/errors.hpp"

namespace censbound {

namespace {

struct KindName {
  BoundKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::HoeffdingSimple, "hoeffding-simple"},
    {BoundKind::HoeffdingDistribution, "hoeffding-dist"},
    {BoundKind::DkwKm, "dkw-km"},
    {BoundKind::DkwKmEmpirical, "dkw-km-empirical"},
    {BoundKind::HoeffdingEmpirical, "hoeffding-empirical"},
    {BoundKind::FiniteClassUnion, "finite-union"},
    {BoundKind::ClassDistribution, "class-dist"},
    {BoundKind::ClassEmpirical, "class-empirical"},
    {BoundKind::ClassSimpleSup, "class-simple-sup"},
    {BoundKind::Bernstein, "bernstein"},
    {BoundKind::BernsteinDistribution, "bernstein-dist"},
};

double require(const std::optional<double>& field, const char* name) {
  if (!field) throw MissingInput(name);
  return *field;
}

// Distributional constants must be positive; a zero would be a misuse.
double positive(double value, const char* name) {
  if (!(value > 0.0)) throw NonpositiveNormalizer(name);
  return value;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Empirical constants may legitimately realize as zero inside a coverage
// replication; the theorem event is then trivially false, which is what an
// infinite threshold encodes.
double empirical(double value, const char* name, bool allow_zero) {
  if (value > 0.0) return value;
  if (allow_zero && value == 0.0) return 0.0;
  throw NonpositiveNormalizer(name);
}

void check_common(BoundKind kind, const BoundInputs& in) {
  if (in.n < 1) throw TooFewSamples("bound requires n >= 1");
  if (kind == BoundKind::BernsteinDistribution && in.n < 4) {
    throw TooFewSamples("bernstein-dist requires n >= 4");
  }
  if (!(in.D_o >= 0.0)) throw OutOfDomain("D_o must be nonnegative");
}

double threshold_impl(BoundKind kind, const BoundInputs& in, bool allow_zero) {
  check_common(kind, in);
  const double eta = require(in.eta, "eta");
  if (!(eta > 0.0)) throw OutOfDomain("eta must be positive");
  const double sn = std::sqrt(static_cast<double>(in.n));
  const double rt_half = std::sqrt(eta / 2.0);
  const double rt_two = std::sqrt(2.0 * eta);
  const double Do = in.D_o;

  auto ratio = [](double numerator, double denominator) {
    return denominator == 0.0 ? kInf : numerator / denominator;
  };

  switch (kind) {
    case BoundKind::HoeffdingSimple: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      const double Ghat =
          empirical(require(in.G_hat_tau, "G_hat_tau"), "G_hat_tau", allow_zero);
      return ratio(M * (3.0 * rt_half + Do / 2.0), sn * H * Ghat);
    }
    case BoundKind::HoeffdingDistribution: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      return M * (3.0 * rt_half + Do / 2.0 + 2.0) / (sn * H * H);
    }
    case BoundKind::DkwKm: {
      const double S = positive(require(in.S_tau, "S_tau"), "S_tau");
      return (rt_half + Do / 2.0) / (sn * S);
    }
    case BoundKind::DkwKmEmpirical: {
      const double Hhat =
          empirical(require(in.H_hat_tau, "H_hat_tau"), "H_hat_tau", allow_zero);
      return ratio(rt_two + Do, sn * Hhat);
    }
    case BoundKind::HoeffdingEmpirical:
    case BoundKind::FiniteClassUnion: {
      const double M = positive(require(in.M, "M"), "M");
      const double Hhat =
          empirical(require(in.H_hat_tau, "H_hat_tau"), "H_hat_tau", allow_zero);
      const double Ghat =
          empirical(require(in.G_hat_tau, "G_hat_tau"), "G_hat_tau", allow_zero);
      return ratio(M * (4.0 * rt_two + 3.0 * Do), sn * Hhat * Ghat * Ghat);
    }
    case BoundKind::ClassDistribution: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      return M * (3.0 * rt_half + 2.0 * Do + 2.0) / (sn * H * H);
    }
    case BoundKind::ClassEmpirical: {
      const double M = positive(require(in.M, "M"), "M");
      const double Hhat =
          empirical(require(in.H_hat_tau, "H_hat_tau"), "H_hat_tau", allow_zero);
      const double Ghat =
          empirical(require(in.G_hat_tau, "G_hat_tau"), "G_hat_tau", allow_zero);
      return ratio(M * (4.0 * rt_two + 4.0 * Do), sn * Hhat * Ghat * Ghat);
    }
    case BoundKind::ClassSimpleSup: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      const double Ghat =
          empirical(require(in.G_hat_tau, "G_hat_tau"), "G_hat_tau", allow_zero);
      return ratio(M * (3.0 * rt_half + 2.0 * Do), sn * H * Ghat);
    }
    case BoundKind::Bernstein: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      const double S = positive(require(in.S_tau, "S_tau"), "S_tau");
      const double sigma2 = require(in.sigma2, "sigma2");
      if (!(sigma2 >= 0.0)) throw OutOfDomain("sigma2 must be nonnegative");
      const double Shat = require(in.S_hat_tau, "S_hat_tau");
      const double Hhat =
          empirical(require(in.H_hat_tau, "H_hat_tau"), "H_hat_tau", allow_zero);
      const double n = static_cast<double>(in.n);
      const double correction =
          ratio((S + Shat) * (3.0 * rt_half + 2.0 * Do) * rt_two, H * Hhat);
      return std::sqrt(2.0 * sigma2 * eta / n) +
             (M / (n * H)) * (2.0 * eta + correction);
    }
    case BoundKind::BernsteinDistribution: {
      const double M = positive(require(in.M, "M"), "M");
      const double H = positive(require(in.H_tau, "H_tau"), "H_tau");
      const double sigma2 = require(in.sigma2, "sigma2");
      if (!(sigma2 >= 0.0)) throw OutOfDomain("sigma2 must be nonnegative");
      const double n = static_cast<double>(in.n);
      return std::sqrt(2.0 * sigma2 * eta / n) +
             (M / (n * H)) *
                 (2.0 * eta +
                  (2.0 / (H * H)) * (3.0 * rt_half + 2.0 * Do + 3.0) * rt_two);
    }
  }
  throw ValidationError("unknown bound kind");
}

double coefficient(BoundKind kind, const BoundInputs& in) {
  switch (kind) {
    case BoundKind::HoeffdingSimple:
    case BoundKind::HoeffdingDistribution:
      return 4.5;
    case BoundKind::DkwKm:
      return 2.5;
    case BoundKind::DkwKmEmpirical:
      return 3.5;
    case BoundKind::HoeffdingEmpirical:
      return 5.5;
    case BoundKind::FiniteClassUnion: {
      if (!in.class_size) throw MissingInput("class_size");
      if (*in.class_size < 1) throw OutOfDomain("class_size must be >= 1");
      return 5.5 * static_cast<double>(*in.class_size);
    }
    case BoundKind::ClassDistribution:
    case BoundKind::ClassSimpleSup:
      return 5.0;
    case BoundKind::ClassEmpirical:
      return 6.0;
    case BoundKind::Bernstein:
    case BoundKind::BernsteinDistribution:
      return 11.5;
  }
  throw ValidationError("unknown bound kind");
}

double additive_term(BoundKind kind, const BoundInputs& in) {
  switch (kind) {
    case BoundKind::HoeffdingDistribution:
    case BoundKind::ClassDistribution:
      return chernoff_term(positive(require(in.H_tau, "H_tau"), "H_tau"), in.n,
                           ChernoffVariant::Third, in.corrected_chernoff);
    case BoundKind::BernsteinDistribution:
      return 2.0 * chernoff_term(positive(require(in.H_tau, "H_tau"), "H_tau"),
                                 in.n, ChernoffVariant::Third,
                                 in.corrected_chernoff);
    default:
      return 0.0;
  }
}

std::string normalization_label(BoundKind kind) {
  switch (kind) {
    case BoundKind::DkwKm:
    case BoundKind::DkwKmEmpirical:
      return "sup_norm(G_hat - G)";
    case BoundKind::FiniteClassUnion:
    case BoundKind::ClassDistribution:
    case BoundKind::ClassEmpirical:
    case BoundKind::ClassSimpleSup:
      return "sup_f abs(mu_hat - mu)";
    default:
      return "abs(mu_hat - mu)";
  }
}

}  // namespace

std::string_view bound_kind_name(BoundKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  throw ValidationError("unknown bound kind");
}

BoundKind bound_kind_from_name(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  throw ValidationError("unknown bound kind name: " + std::string(name));
}

BoundResult deviation_bound(BoundKind kind, const BoundInputs& inputs) {
  BoundResult result;
  result.kind = kind;
  result.deviation_threshold =
      threshold_impl(kind, inputs, /*allow_zero=*/false);
  const double eta = *inputs.eta;
  result.prob_bound =
      coefficient(kind, inputs) * std::exp(-eta) + additive_term(kind, inputs);
  result.vacuous = result.prob_bound >= 1.0;
  result.normalization = normalization_label(kind);
  return result;
}

namespace detail {

double deviation_threshold_or_infinity(BoundKind kind,
                                       const BoundInputs& inputs) {
  return threshold_impl(kind, inputs, /*allow_zero=*/true);
}

}  // namespace detail

double chernoff_term(double h_tau, std::size_t n, ChernoffVariant variant,
                     bool corrected) {
  if (!(h_tau > 0.0 && h_tau <= 1.0)) {
    throw OutOfDomain("chernoff_term requires H_tau in (0, 1]");
  }
  if (n < 1) throw TooFewSamples("chernoff_term requires n >= 1");
  const double divisor = variant == ChernoffVariant::Third ? 3.0 : 2.0;
  const double nd = static_cast<double>(n);
  const double exponent =
      corrected ? nd * h_tau / divisor : h_tau / (divisor * nd);
  return std::exp(-exponent);
}

double eta_eps_convert(ConvertDirection direction, double value, double D_o,
                       bool halved) {
  if (!(D_o >= 0.0)) throw OutOfDomain("D_o must be nonnegative");
  if (direction == ConvertDirection::EtaToEps) {
    if (!(value > 0.0)) throw OutOfDomain("eta must be positive");
    const double root = std::sqrt(value / 2.0 + (D_o / 4.0) * (D_o / 4.0));
    const double eps = root + D_o / 4.0;
    return halved ? 2.0 * eps : eps;
  }
  if (!(value > 0.0)) throw OutOfDomain("eps must be positive");
  const double eta = halved ? value * value / 2.0 - D_o * value / 2.0
                            : 2.0 * value * value - D_o * value;
  if (!(eta > 0.0)) {
    throw OutOfDomain(halved ? "EpsToEta (halved) requires eps > D_o"
                             : "EpsToEta requires eps > D_o/2");
  }
  return eta;
}

double invert_confidence(BoundKind kind, double delta,
                         const BoundInputs& inputs) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw OutOfDomain("delta must lie in (0, 1)");
  }
  check_common(kind, inputs);
  const double additive = additive_term(kind, inputs);
  if (delta <= additive) {
    throw Unattainable(
        "requested confidence is below the eta-independent additive terms");
  }
  return std::log(coefficient(kind, inputs) / (delta - additive));
}

}  // namespace censbound
