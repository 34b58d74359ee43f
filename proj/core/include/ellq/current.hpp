#pragma once

#include <string>
#include <vector>

#include "ellq/geom.hpp"
#include "ellq/zero_word.hpp"

namespace ellq {

enum class BosonFamily { a, alpha, beta };

/// Coefficient of delta_{m+n,0} in [X_m, X_n] for the (m, -m) ordering.
double mode_commutator(BosonFamily family, int m, const EllipticContext& ctx);

enum class EigenKind { none, x_plus, x_minus };

/// One factor of a (possibly composite) current: either an exponential of
/// boson modes with creation / annihilation coefficients in the a_m basis,
/// or one of the non-exponential currents x^{+-}(z) characterized by its
/// eigenvalue response [a_m, x(z)] = gamma(m) z^m x(z).
struct ModeAtom {
  GeomSum crea;  // coefficient of a_{-m} (times z^{+m}), m > 0
  GeomSum ann;   // coefficient of a_{m}  (times z^{-m}), m > 0
  EigenKind eigen = EigenKind::none;
  double arg_qshift = 0.0;  // atom evaluated at q^{arg_qshift} z
  int sign = 1;             // -1 when the atom enters inverted
};

/// A current bound to no particular slot yet: mode atoms, zero-mode word,
/// and the h-charge carried by the non-exponential part.
struct Current {
  std::string label;
  std::vector<ModeAtom> atoms;
  Word word;
  double eigen_h_charge = 0.0;  // +2 per x^+ atom, -2 per x^-

  Current shifted(double qshift) const;  // current at argument q^{qshift} z
  Current inverted() const;              // inverse current
  Current operator*(const Current& o) const;  // composite (this then o)
};

/// Named catalog of the paper's currents (all couplings converted to the
/// a_m basis at the given context):
///   u_plus, u_minus, psi, k, x_plus, x_minus,
///   e  = u_plus * x_plus,  f = x_minus * u_minus   (dressed, generic level)
///   E, F, K                                         (elliptic, generic level)
///   E_l1, F_l1                                      (free field, c = 1)
///   K_plus, K_zero, K_minus                         (auxiliary K currents)
///   Phi, PsiStar                                    (vertex operators, c = 1)
Current make_current(const std::string& name, const EllipticContext& ctx);

/// m * gamma(m) and m * gamma(-m) for the x^{+-} eigen responses.
GeomSum eigen_response(EigenKind k, const EllipticContext& ctx);

}  // namespace ellq
