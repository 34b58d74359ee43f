#include "ellq/exchange.hpp"

#include <cmath>
#include <stdexcept>

namespace ellq {

ResummedProduct ResummedProduct::from_geom(const GeomSum& n_of_m) {
  ResummedProduct out;
  for (const auto& t : n_of_m.terms) {
    Factor f;
    f.arg_expo = t.expo;
    f.base_expos = t.base_expos;
    f.exponent = -t.coeff;  // sum_m x^m/m q^{em}/prod = -log (q^e x; bases)
    out.factors.push_back(std::move(f));
  }
  return out;
}

Eval ResummedProduct::eval(cx x, const EllipticContext& ctx) const {
  cx val(1.0);
  for (const auto& f : factors) {
    std::vector<double> bases;
    bases.reserve(f.base_expos.size());
    for (double b : f.base_expos) bases.push_back(std::pow(ctx.q, b));
    const cx p = qpoch_multi(std::pow(ctx.q, f.arg_expo) * x, bases, ctx);
    const double e = f.exponent;
    const long ie = std::lround(e);
    if (std::abs(e - ie) < 1e-9) {
      if (std::abs(p) < kPoleEps && ie < 0) return Eval::at_pole();
      for (long k = 0; k < std::labs(ie); ++k) val = (ie > 0) ? val * p : val / p;
    } else {
      // non-integral multiplicity: principal branch (not hit by the catalog)
      if (std::abs(p) < kPoleEps) return Eval::at_pole();
      val *= std::exp(e * std::log(p));
    }
  }
  return Eval::value(val);
}

namespace {

// contraction exponent coefficient (times m) of ordered pair (left, right)
GeomSum pair_geom(const ModeAtom& l, const ModeAtom& r, const EllipticContext& ctx) {
  GeomSum n;
  const GeomSum ratio = gs_qpow(r.arg_qshift - l.arg_qshift);
  if (l.eigen == EigenKind::none && r.eigen == EigenKind::none) {
    if (!l.ann.empty() && !r.crea.empty())
      n += l.ann * r.crea * gs_comm_m(ctx) * ratio;
  } else if (l.eigen == EigenKind::none) {
    if (!l.ann.empty()) n += l.ann * eigen_response(r.eigen, ctx) * ratio;
  } else if (r.eigen == EigenKind::none) {
    if (!r.crea.empty())
      n += r.crea * eigen_response(l.eigen, ctx) * ratio * -1.0;
  }
  n.simplify();
  return n;
}

cx eigen_kernel(EigenKind kind, cx w1, cx w2, double q, bool& pole) {
  // x^{+-}(z_1) x^{+-}(z_2) = K(z_1, z_2) x^{+-}(z_2) x^{+-}(z_1)
  const double a = (kind == EigenKind::x_plus) ? 2.0 : -2.0;
  const double b = (kind == EigenKind::x_plus) ? -1.0 : 1.0;
  const cx qa = std::pow(q, a), qb = std::pow(q, b);
  const cx den = (w1 - qa * w2) * (w1 - qb * w2);
  if (std::abs(den) < kPoleEps * std::max(std::abs(w1), std::abs(w2))) {
    pole = true;
    return cx(0.0);
  }
  return -(qa * w1 - w2) * (qb * w1 - w2) / den;
}

}  // namespace

GeomSum contraction_geom(const Current& L, const Current& R,
                         const EllipticContext& ctx) {
  GeomSum n;
  for (const auto& la : L.atoms)
    for (const auto& ra : R.atoms) n += pair_geom(la, ra, ctx);
  n.simplify();
  return n;
}

PowerSeries contraction_series(const Current& L, const Current& R,
                               const EllipticContext& ctx, int order) {
  const GeomSum n = contraction_geom(L, R, ctx);
  PowerSeries out(order);
  for (int m = 1; m <= order; ++m) out.a[m] = n.eval_m(m, ctx.q) / m;
  return out;
}

ExchangeFactor exchange_factor(const Current& L, const Current& R,
                               const EllipticContext& ctx) {
  ExchangeFactor ex;
  ex.fwd = contraction_geom(L, R, ctx);
  ex.bwd = contraction_geom(R, L, ctx);
  ex.fwd_prod = ResummedProduct::from_geom(ex.fwd);
  ex.bwd_prod = ResummedProduct::from_geom(ex.bwd);

  // x^{+-} self-exchange kernels; mixed kinds have no scalar exchange
  for (const auto& la : L.atoms) {
    if (la.eigen == EigenKind::none) continue;
    for (const auto& ra : R.atoms) {
      if (ra.eigen == EigenKind::none) continue;
      if (la.eigen != ra.eigen) {
        ex.valid = false;
        return ex;
      }
      ex.kernels.push_back({la.eigen, ra.eigen, la.arg_qshift, ra.arg_qshift});
    }
  }

  // zero-mode scalar: word(L) word(R) = (ratio) word(R) word(L), plus the
  // h-power items of each word crossing the other current's x^{+-} charge
  const Word wl = bind_word(L.word, 1, 0.0);
  const Word wr = bind_word(R.word, 2, 0.0);
  Word lr = wl;
  lr.insert(lr.end(), wr.begin(), wr.end());
  Word rl = wr;
  rl.insert(rl.end(), wl.begin(), wl.end());
  NormalizedWord n1 = normalize(lr);
  NormalizedWord n2 = normalize(rl);
  if (!words_equal(n1.canonical, n2.canonical)) {
    ex.valid = false;
    return ex;
  }
  ex.word.phase = n1.scalar.phase / n2.scalar.phase;
  ex.word.qexp = n1.scalar.qexp - n2.scalar.qexp;
  ex.word.zexp = n1.scalar.zexp;
  for (const auto& [slot, e] : n2.scalar.zexp) ex.word.zexp[slot] -= e;
  // word(L) crossing mode(R):  z_1^{h-coef * charge(R)} per h-power item
  for (const auto& it : wl) {
    if (it.kind == WordItem::Pow && it.h_coef != 0.0 && R.eigen_h_charge != 0.0) {
      ex.word.zexp[1] += it.h_coef * R.eigen_h_charge;
      ex.word.qexp += it.qshift * it.h_coef * R.eigen_h_charge;
    }
  }
  for (const auto& it : wr) {
    if (it.kind == WordItem::Pow && it.h_coef != 0.0 && L.eigen_h_charge != 0.0) {
      ex.word.zexp[2] -= it.h_coef * L.eigen_h_charge;
      ex.word.qexp -= it.qshift * it.h_coef * L.eigen_h_charge;
    }
  }
  return ex;
}

Eval ExchangeFactor::eval(cx u1, cx u2, const EllipticContext& ctx) const {
  if (!valid) return Eval::at_pole();
  const cx x = qpow(ctx.q, 2.0 * (u2 - u1));
  Eval f = fwd_prod.eval(x, ctx);
  if (f.pole) return f;
  Eval b = bwd_prod.eval(cx(1.0) / x, ctx);
  if (b.pole || std::abs(b.v) < kPoleEps) return Eval::at_pole();
  cx val = f.v / b.v;
  bool pole = false;
  const cx z1 = qpow(ctx.q, 2.0 * u1), z2 = qpow(ctx.q, 2.0 * u2);
  for (const auto& k : kernels) {
    val *= eigen_kernel(k.left, std::pow(ctx.q, k.shift_l) * z1,
                        std::pow(ctx.q, k.shift_r) * z2, ctx.q, pole);
    if (pole) return Eval::at_pole();
  }
  val *= word.eval(ctx, {{1, u1}, {2, u2}});
  return Eval::value(val);
}

}  // namespace ellq
