#pragma once

#include <vector>

#include "ellq/context.hpp"
#include "ellq/qseries.hpp"
#include "ellq/rng.hpp"

namespace ellq {

enum class StructFnId {
  rho_plus,
  rho_plus_star,
  rho,
  kappa,
  kappa_prime,
  mu,
  mu_star,
  chi,
  g_const,
};

/// Evaluate a scalar structure function at u (z = q^{2u}); the constants
/// kappa, kappa', g ignore the argument. Pole outcomes are tagged, not thrown.
Eval struct_fn(StructFnId id, cx u, const EllipticContext& ctx);

/// rho^+(u): the R-matrix normalization, a 16-factor curly-bracket ratio with
/// prefactor -q z^{1/r}. The starred variant replaces r by r* everywhere.
Eval rho_plus(cx u, const EllipticContext& ctx, bool starred = false);

/// rho(z) = rho^{+*}(z) / rho^+(z), argument given as u.
Eval rho_ratio(cx u, const EllipticContext& ctx);

/// Raw 16-factor product form of the type-I vertex exchange scalar; the
/// starred flag applies r -> r* to the formula verbatim.
Eval mu_fn(cx u, const EllipticContext& ctx, bool starred = false);

/// The type-II vertex exchange scalar. The literal r -> r* transcription of
/// mu fails both the vertex exchange relation and the rho/mu/chi
/// compatibility identity by exactly one factor of chi; the consistent
/// scalar is mu|_{r->r*}(u) chi(-u), which this returns.
Eval mu_star_fn(cx u, const EllipticContext& ctx);

Eval chi_fn(cx u, const EllipticContext& ctx);

/// Normal-ordering constants of the K-current algebra (cached per call site;
/// pure products of curly brackets at fixed points).
cx kappa_const(const EllipticContext& ctx);
cx kappa_prime_const(const EllipticContext& ctx);
cx g_const_val(const EllipticContext& ctx);

/// Trigonometric limit p -> 0 of rho^+ up to the prefactor -q^2 z^{1/r}:
/// rho_vv(z) from the degenerate R-matrix.
cx rho_vv(cx z, double q, const EllipticContext& ctx);

struct SampleStats {
  double max_residual = 0.0;
  int n = 0;
  bool ok = true;  // false when sampling kept hitting poles
};

/// |rho^+/rho^{+*} - mu chi(1/2-u) / (mu* chi(1/2+u))| over random u, c = 1.
SampleStats check_rho_mu_chi(const EllipticContext& ctx, int n_samples, Rng& rng,
                             double perturb_mu = 1.0);

/// rho^+ at p forced to 0 against -q^2 z^{1/r} rho_vv(z); the proportionality
/// constant comes from the hand limit of the product formula.
SampleStats check_rho_trig_limit(const EllipticContext& ctx, int n_samples, Rng& rng,
                                 bool perturb_exponent = false);

}  // namespace ellq
