#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ellq/exchange.hpp"
#include "ellq/rng.hpp"
#include "ellq/structfn.hpp"

namespace ellq {

struct RelationResult {
  double max_residual = 0.0;
  int n = 0;
  bool pass = false;
  bool errored = false;
  std::string note;
};

/// One cataloged commutation / exchange relation. Series relations compare
/// the contraction exponent against the claimed one-sided product expansion
/// coefficientwise; pointwise relations compare the full exchange factor
/// against the claimed theta / bracket ratio at annulus samples.
struct RelationSpec {
  std::string id;
  std::string reference;  // the claimed closed form, quoted
  bool series_kind = false;
  double force_level = -1.0;  // >= 0: relation only defined at this level c
  std::function<Current(const EllipticContext&)> left, right;
  // series kind: claimed factors, x = z2/z1 side and y = z1/z2 side
  std::function<std::vector<PochFactor>(const EllipticContext&)> claimed_x, claimed_y;
  // pointwise kind
  std::function<Eval(const EllipticContext&, cx u1, cx u2)> claimed;
  double perturb = 1.0;  // multiply the claimed factor (negative controls)
};

/// The built-in relation catalog, in fixed registry order.
const std::vector<RelationSpec>& relation_catalog();

const RelationSpec* find_relation(const std::string& id);

/// Check one catalog entry: series relations to `order`, pointwise ones at
/// n_samples random points.
RelationResult verify_relation(const RelationSpec& rel, const EllipticContext& ctx,
                               int n_samples, int order, Rng& rng,
                               double tol_override = 0.0);

/// Normal-ordering constants: reassemble K(qz)K(z)^{-1}K(q^{-1}z) (and the
/// two auxiliary-current routes) into normally ordered form and compare the
/// resulting constants with the closed-form kappa, kappa'.
RelationResult verify_kappa(const EllipticContext& ctx);

/// E-F pole structure: pole locations of the contraction kernel at
/// q^{+-c} z_2 and residue mode-coefficients against the psi couplings.
RelationResult verify_ef_poles(const EllipticContext& ctx, int order);

/// Level-1 Serre relations: the 6-term symmetrized sums as bivariate Laurent
/// series, all coefficients through total order N must vanish.
RelationResult verify_serre(const EllipticContext& ctx, int order, bool f_side,
                            bool misprinted_prefactor = false,
                            bool single_term_control = false);

/// phi_{LR}(u1,u2) * phi_{RL}(u2,u1) = 1 for every catalog pair.
RelationResult verify_double_swap(const EllipticContext& ctx, int n_samples,
                                  Rng& rng);

}  // namespace ellq
