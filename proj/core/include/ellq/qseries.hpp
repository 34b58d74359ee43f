#pragma once

#include <vector>

#include "ellq/context.hpp"

namespace ellq {

/// Truncated multi-base q-Pochhammer product
///   (z; t_1, ..., t_k)_inf = prod_{n_1..n_k >= 0} (1 - z t_1^{n_1}...t_k^{n_k}),
/// every |t_i| < 1, each n_i running below the context cutoff. The empty base
/// list degenerates to the single factor (1 - z).
cx qpoch_multi(cx z, const std::vector<double>& bases, const EllipticContext& ctx);

/// Same product with an explicit per-call cutoff (used by the oracles).
cx qpoch_multi_cutoff(cx z, const std::vector<double>& bases, int cutoff);

/// Theta_p(z) = (z;p) (p/z;p) (p;p),  0 < p < 1, z != 0.
cx theta_p(cx z, double p, const EllipticContext& ctx);

/// Jacobi triple-product series sum_{n in Z} (-1)^n p^{n(n-1)/2} z^n.
/// Independent evaluation path used to cross-check product formulas.
cx theta_p_series(cx z, double p);

enum class BracketKind { plain, plus, star_plain, star_plus };

inline bool bracket_is_star(BracketKind k) {
  return k == BracketKind::star_plain || k == BracketKind::star_plus;
}
inline bool bracket_is_plus(BracketKind k) {
  return k == BracketKind::plus || k == BracketKind::star_plus;
}

/// The four bracket functions
///   [u]   = q^{u^2/r - u} Theta_p(q^{2u}),    [u]_+ = q^{u^2/r - u} Theta_p(-q^{2u}),
/// star kinds evaluating with (r, p) -> (r*, p*).
cx bracket(cx u, BracketKind kind, const EllipticContext& ctx);

/// {z} = (z; p, q^6),  starred variant with p -> p*.
cx curly(cx z, const EllipticContext& ctx, bool starred = false);

/// Truncated power series in one variable, exponents 0..N. The currency of
/// the OPE / contraction checks.
struct PowerSeries {
  std::vector<cx> a;  // a[m] = coefficient of x^m

  explicit PowerSeries(int order = 0) : a(order + 1, cx(0.0)) {}
  int order() const { return static_cast<int>(a.size()) - 1; }

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries& operator*=(cx s);

  /// exp of a series with zero constant term.
  PowerSeries exp_series() const;
  /// log of a series with constant term 1.
  PowerSeries log_series() const;

  cx eval(cx x) const;
};

/// One factor (a x; bases)_inf of a product whose log-series is wanted.
struct PochFactor {
  cx prefactor;               // a
  std::vector<double> bases;  // all |base| < 1
  double exponent = 1.0;      // factor enters as (a x; bases)^exponent
};

/// Taylor series of log prod_i (a_i x; bases_i)^{e_i}
///   = - sum_{m>=1} x^m/m sum_i e_i a_i^m / prod_b (1 - b^m),
/// truncated at the given order. Prefactors with |a| >= 1 are rejected unless
/// `formal` is set (the contraction engine works with formal expansions whose
/// resummed product form is entire).
PowerSeries log_series_poch(const std::vector<PochFactor>& factors, int order,
                            bool formal = false);

}  // namespace ellq
