#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ellq {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// q^w for real q in (0,1) and complex exponent w, on the principal branch
/// (u, not z = q^{2u}, is the fundamental variable everywhere).
inline cx qpow(double q, cx w) { return std::exp(w * std::log(q)); }

/// Global parameter pack for the elliptic algebra: base q, principal
/// parameter r, level c, and everything derived from them, plus the
/// truncation / tolerance policy shared by all evaluators.
struct EllipticContext {
  double q = 0.5;
  double r = 4.0;
  double c = 1.0;

  double r_star = 3.0;  // r - c
  double p = 0.0;       // q^{2r}
  double p_star = 0.0;  // q^{2 r*}
  cx tau;               // p  = e^{-2 pi i / tau}
  cx tau_star;          // p* = e^{-2 pi i / tau*},  r tau = r* tau*

  double tol = 1e-10;
  int series_order = 30;
  int product_cutoff = 0;       // retained factors per base; 0 selects automatically
  bool cutoff_explicit = false; // user pinned the per-base depth

  EllipticContext() { derive(); }
  EllipticContext(double q_, double r_, double c_, double tol_ = 1e-10,
                  int order = 30, int cutoff = 0)
      : q(q_), r(r_), c(c_), tol(tol_), series_order(order),
        product_cutoff(cutoff) {
    derive();
  }

  void derive() {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ellq: need 0 < q < 1");
    if (!(r > c && c >= 0.0)) throw std::invalid_argument("ellq: need r > c >= 0");
    r_star = r - c;
    p = std::pow(q, 2.0 * r);
    p_star = std::pow(q, 2.0 * r_star);
    // p = e^{-2 pi i / tau} with tau purely imaginary for real q.
    tau = cx(0.0, -2.0 * kPi) / std::log(cx(p));
    tau_star = cx(0.0, -2.0 * kPi) / std::log(cx(p_star));
    if (product_cutoff <= 0)
      product_cutoff = auto_cutoff();
    else
      cutoff_explicit = true;
  }

  /// Smallest N with max(p, q^6)^N < tol * 1e-2, capped at 512. The tail of
  /// every retained product is then a certified geometric remainder.
  int auto_cutoff() const {
    const double base = std::max(p, std::pow(q, 6.0));
    const double target = tol * 1e-2;
    int n = static_cast<int>(std::ceil(std::log(target) / std::log(base)));
    if (n < 8) n = 8;
    if (n > 512) n = 512;
    return n;
  }

  /// Context with the same policy but level forced to c_new.
  EllipticContext with_level(double c_new) const {
    return EllipticContext(q, r, c_new, tol, series_order,
                           cutoff_explicit ? product_cutoff : 0);
  }

  bool starred_equals_plain() const { return c == 0.0; }
};

/// Evaluation result that can signal a pole instead of crashing: a value is
/// flagged when some denominator factor fell below the pole threshold.
struct Eval {
  cx v{};
  bool pole = false;

  static Eval value(cx x) { return {x, false}; }
  static Eval at_pole() { return {cx(0.0), true}; }
};

inline constexpr double kPoleEps = 1e-14;

}  // namespace ellq
