#pragma once

#include "censbound/ipcw.hpp"
#include "censbound/scenario.hpp"

namespace censbound {

struct SigmaOracleOptions {
  // Subintervals for the deterministic dLambda^C quadrature (time-only f).
  int quad_panels = 2048;
  // Monte Carlo over (T, Z) for covariate-dependent f: draw count, outer
  // quadrature panels, and seed salt. Draws are blocked into independently
  // seeded streams and reduced in index order, so the value is identical for
  // any worker count.
  std::size_t mc_draws = 100000;
  int mc_outer_panels = 512;
  std::uint64_t mc_salt = 0x7369676D6132ULL;
};

/// Asymptotic variance of the IPCW estimator from the scenario's closed-form
/// curves:
///   sigma_f^2 = Var f(T,Z)
///             + E[ int_0^tau (f(s,Z) - q(s))^2 1{T>=s} dLambda^C(s)/G(s) ],
///   q(s) = E[f(T,Z) 1{T>=s}] / S(s-).
/// Time-only f is evaluated fully by quadrature; covariate-dependent f uses
/// seeded Monte Carlo over (T, Z) combined with quadrature over s. Interior
/// atoms of T (point-mass models) make the s-integrand discontinuous and
/// degrade the quadrature order; the built-in scenarios only carry the atom
/// at tau, which sits on a panel boundary.
VarianceResult sigma_f_oracle(const ScenarioConfig& config,
                              const BoundedFunction& f,
                              const SigmaOracleOptions& options = {});

}  // namespace censbound
