#pragma once

#include <optional>

#include "ellq/current.hpp"
#include "ellq/qseries.hpp"

namespace ellq {

/// Resummed one-sided contraction: exp(sum_m N(m) x^m / m) as a product
/// prod_j (q^{arg_expo_j} x; q^{bases_j})^{exponent_j}. Exponents come out
/// integral for every cataloged relation; non-integral ones fall back to a
/// principal-branch power.
struct ResummedProduct {
  struct Factor {
    double arg_expo = 0.0;
    std::vector<double> base_expos;
    double exponent = 0.0;
  };
  std::vector<Factor> factors;

  static ResummedProduct from_geom(const GeomSum& n_of_m);
  Eval eval(cx x, const EllipticContext& ctx) const;
};

/// Scalar exchange data for L(z_1) R(z_2) = phi(u_1, u_2) R(z_2) L(z_1).
struct ExchangeFactor {
  GeomSum fwd;  // N_{LR}(m) * m, series variable x = z_2/z_1
  GeomSum bwd;  // N_{RL}(m) * m, series variable y = z_1/z_2
  ResummedProduct fwd_prod, bwd_prod;
  struct Kernel {
    EigenKind left, right;
    double shift_l = 0.0, shift_r = 0.0;
  };
  std::vector<Kernel> kernels;  // x^{+-} self-exchange rational kernels
  WordScalar word;              // zero-mode scalar (slot 1 = left, 2 = right)
  bool valid = true;

  Eval eval(cx u1, cx u2, const EllipticContext& ctx) const;
};

/// Assemble the full exchange factor of two currents. Pairs of distinct
/// eigen kinds (x^+ against x^-) have no scalar exchange and mark the
/// result invalid.
ExchangeFactor exchange_factor(const Current& L, const Current& R,
                               const EllipticContext& ctx);

/// N_{LR}(m) * m as a symbolic geometric sum: the contraction exponent of
/// L(z_1) R(z_2) in x = z_2/z_1.
GeomSum contraction_geom(const Current& L, const Current& R,
                         const EllipticContext& ctx);

/// Truncated log-of-scalar series sum_m N(m)/m x^m (the spec's contraction
/// series; the exponential of this matches the one-sided product expansion).
PowerSeries contraction_series(const Current& L, const Current& R,
                               const EllipticContext& ctx, int order);

}  // namespace ellq
