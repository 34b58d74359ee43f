#pragma once

#include <vector>

#include "ellq/context.hpp"

namespace ellq {

/// One term  coeff * q^{expo * m} / prod_i (1 - q^{base * m})  of a mode
/// coefficient, as an exact function of the mode number m > 0. Sums of such
/// terms close under multiplication, and  sum_m x^m/m * term(m)  resums into
/// log q-Pochhammer products -- the mechanism behind every exchange factor.
struct GeomTerm {
  double coeff = 0.0;
  double expo = 0.0;                // exponent of q in the numerator
  std::vector<double> base_expos;   // exponents of q in (1 - q^{b m}) factors
};

struct GeomSum {
  std::vector<GeomTerm> terms;

  bool empty() const { return terms.empty(); }

  GeomSum& operator+=(const GeomSum& o);
  GeomSum operator*(const GeomSum& o) const;
  GeomSum operator*(double s) const;

  /// Collect terms with equal (expo, bases) and drop negligible ones.
  void simplify(double drop_below = 1e-15);

  /// Numeric value at mode number m.
  double eval_m(int m, double q) const;
};

// Builders; every closed form is per-context because the prefactors carry
// explicit q-dependence.

/// q^{a m}
GeomSum gs_qpow(double a);
/// [a m]_q
GeomSum gs_qint(double a, const EllipticContext& ctx);
/// 1 / [a m]_q  (a != 0)
GeomSum gs_inv_qint(double a, const EllipticContext& ctx);
/// [2m]_q - [m]_q
GeomSum gs_tmo(const EllipticContext& ctx);
/// 1 / ([2m]_q - [m]_q)
GeomSum gs_inv_tmo(const EllipticContext& ctx);
/// m * [a_m, a_{-m}] = ([2m]-[m]) q^{-cm} [cm]
GeomSum gs_comm_m(const EllipticContext& ctx);

}  // namespace ellq
