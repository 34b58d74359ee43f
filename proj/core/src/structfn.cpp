#include "ellq/structfn.hpp"

#include <cmath>

namespace ellq {

namespace {

// One curly-bracket factor {p^dp q^k z^±1}; dp and the base follow the
// starred flag at evaluation time.
struct CurlyArg {
  int k;         // power of q in the argument
  bool with_p;   // argument carries one power of p (p* when starred)
  bool inv_z;    // argument uses 1/z instead of z
};

Eval curly_ratio(cx z, const std::vector<CurlyArg>& num,
                 const std::vector<CurlyArg>& den, const EllipticContext& ctx,
                 bool starred) {
  const double pp = starred ? ctx.p_star : ctx.p;
  auto arg = [&](const CurlyArg& f) {
    cx w = f.inv_z ? cx(1.0) / z : z;
    return (f.with_p ? pp : 1.0) * std::pow(ctx.q, f.k) * w;
  };
  cx val(1.0);
  for (const auto& f : num) val *= curly(arg(f), ctx, starred);
  for (const auto& f : den) {
    const cx d = curly(arg(f), ctx, starred);
    if (std::abs(d) < kPoleEps) return Eval::at_pole();
    val /= d;
  }
  return Eval::value(val);
}

}  // namespace

Eval rho_plus(cx u, const EllipticContext& ctx, bool starred) {
  const double rr = starred ? ctx.r_star : ctx.r;
  const cx z = qpow(ctx.q, 2.0 * u);
  static const std::vector<CurlyArg> num = {
      {2, true, false}, {3, true, false}, {3, true, false}, {4, true, false},
      {0, false, true}, {1, false, true}, {5, false, true}, {6, false, true}};
  static const std::vector<CurlyArg> den = {
      {0, true, false}, {1, true, false}, {5, true, false}, {6, true, false},
      {2, false, true}, {3, false, true}, {3, false, true}, {4, false, true}};
  Eval e = curly_ratio(z, num, den, ctx, starred);
  if (e.pole) return e;
  return Eval::value(-ctx.q * qpow(ctx.q, 2.0 * u / rr) * e.v);
}

Eval rho_ratio(cx u, const EllipticContext& ctx) {
  Eval a = rho_plus(u, ctx, true);
  Eval b = rho_plus(u, ctx, false);
  if (a.pole || b.pole || std::abs(b.v) < kPoleEps) return Eval::at_pole();
  return Eval::value(a.v / b.v);
}

Eval mu_fn(cx u, const EllipticContext& ctx, bool starred) {
  const double rr = starred ? ctx.r_star : ctx.r;
  const cx z = qpow(ctx.q, 2.0 * u);
  static const std::vector<CurlyArg> num = {
      {4, true, false}, {3, true, false}, {3, false, false}, {2, false, false},
      {1, true, true},  {0, true, true},  {6, false, true},  {5, false, true}};
  static const std::vector<CurlyArg> den = {
      {4, true, true},  {3, true, true},  {3, false, true},  {2, false, true},
      {1, true, false}, {0, true, false}, {6, false, false}, {5, false, false}};
  Eval e = curly_ratio(z, num, den, ctx, starred);
  if (e.pole) return e;
  return Eval::value(qpow(ctx.q, 2.0 * u * (1.0 / rr) - 2.0 * u) * e.v);
}

Eval mu_star_fn(cx u, const EllipticContext& ctx) {
  Eval m = mu_fn(u, ctx, true);
  Eval c = chi_fn(-u, ctx);
  if (m.pole || c.pole) return Eval::at_pole();
  return Eval::value(m.v * c.v);
}

Eval chi_fn(cx u, const EllipticContext& ctx) {
  const cx z = qpow(ctx.q, 2.0 * u);
  const double q6 = std::pow(ctx.q, 6.0);
  const cx den = theta_p(ctx.q / z, q6, ctx) * theta_p(ctx.q * ctx.q / z, q6, ctx);
  if (std::abs(den) < kPoleEps) return Eval::at_pole();
  const cx num = theta_p(ctx.q * z, q6, ctx) * theta_p(ctx.q * ctx.q * z, q6, ctx);
  return Eval::value(-num / (z * den));
}

namespace {

// kappa / kappa': products of curly brackets at fixed points. Each list entry
// is (power of q, starred). The argument always carries one power of the
// matching p.
cx curly_const(const std::vector<std::pair<int, bool>>& num,
               const std::vector<std::pair<int, bool>>& den,
               const EllipticContext& ctx) {
  auto one = [&](int k, bool st) {
    const double pp = st ? ctx.p_star : ctx.p;
    return curly(pp * std::pow(ctx.q, k), ctx, st);
  };
  cx v(1.0);
  for (auto [k, st] : num) v *= one(k, st);
  for (auto [k, st] : den) v /= one(k, st);
  return v;
}

}  // namespace

cx kappa_const(const EllipticContext& ctx) {
  return curly_const(
      {{8, false}, {5, false}, {3, false}, {4, false}, {4, false}, {0, false},
       {7, true},  {1, true},  {2, true},  {2, true},  {6, true},  {6, true}},
      {{7, false}, {1, false}, {2, false}, {2, false}, {6, false}, {6, false},
       {0, true},  {8, true},  {5, true},  {3, true},  {4, true},  {4, true}},
      ctx);
}

cx kappa_prime_const(const EllipticContext& ctx) {
  return curly_const(
      {{10, false}, {7, false}, {5, false}, {6, false}, {6, false}, {2, false},
       {9, true},   {3, true},  {5, true},  {5, true},  {8, true},  {8, true}},
      {{9, false}, {3, false}, {5, false}, {5, false}, {8, false}, {8, false},
       {2, true},  {10, true}, {7, true},  {5, true},  {6, true},  {6, true}},
      ctx);
}

cx g_const_val(const EllipticContext& ctx) {
  const double q6 = std::pow(ctx.q, 6.0);
  auto poch6 = [&](double a) { return qpoch_multi(cx(a), {q6}, ctx); };
  const double q = ctx.q;
  const cx head = poch6(ctx.p * std::pow(q, 6)) * poch6(ctx.p * std::pow(q, 5)) /
                  (poch6(ctx.p * std::pow(q, 3)) * poch6(ctx.p * q * q));
  auto curly_box = [&](bool st) {
    const double pp = st ? ctx.p_star : ctx.p;
    auto one = [&](int k) { return curly(pp * std::pow(q, k), ctx, st); };
    return one(2) * one(3) * one(3) * one(4) / (one(0) * one(1) * one(5) * one(6));
  };
  return -head * curly_box(false) / curly_box(true);
}

cx rho_vv(cx z, double q, const EllipticContext& ctx) {
  const double q6 = std::pow(q, 6.0);
  auto f = [&](double k) { return qpoch_multi(std::pow(q, k) / z, {q6}, ctx); };
  return (1.0 / q) * f(0) * f(1) * f(5) * f(6) / (f(2) * f(3) * f(3) * f(4));
}

Eval struct_fn(StructFnId id, cx u, const EllipticContext& ctx) {
  switch (id) {
    case StructFnId::rho_plus: return rho_plus(u, ctx, false);
    case StructFnId::rho_plus_star: return rho_plus(u, ctx, true);
    case StructFnId::rho: return rho_ratio(u, ctx);
    case StructFnId::kappa: return Eval::value(kappa_const(ctx));
    case StructFnId::kappa_prime: return Eval::value(kappa_prime_const(ctx));
    case StructFnId::mu: return mu_fn(u, ctx, false);
    case StructFnId::mu_star: return mu_star_fn(u, ctx);
    case StructFnId::chi: return chi_fn(u, ctx);
    case StructFnId::g_const: return Eval::value(g_const_val(ctx));
  }
  return Eval::at_pole();
}

SampleStats check_rho_mu_chi(const EllipticContext& ctx, int n_samples, Rng& rng,
                             double perturb_mu) {
  SampleStats st;
  int tries = 0;
  while (st.n < n_samples && tries < 50 * n_samples + 100) {
    ++tries;
    const cx u = sample_u(rng, ctx, 0.5);
    Eval rp = rho_plus(u, ctx, false);
    Eval rps = rho_plus(u, ctx, true);
    Eval m = mu_fn(u, ctx, false);
    Eval ms = mu_star_fn(u, ctx);
    Eval c1 = chi_fn(0.5 - u, ctx);
    Eval c2 = chi_fn(0.5 + u, ctx);
    if (rp.pole || rps.pole || m.pole || ms.pole || c1.pole || c2.pole) continue;
    if (std::abs(rps.v) < 1e-12 || std::abs(ms.v * c2.v) < 1e-12) continue;
    const cx lhs = rp.v / rps.v;
    const cx rhs = perturb_mu * m.v * c1.v / (ms.v * c2.v);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale < 1e-12) continue;
    st.max_residual = std::max(st.max_residual, std::abs(lhs - rhs) / scale);
    ++st.n;
  }
  st.ok = (st.n == n_samples);
  return st;
}

SampleStats check_rho_trig_limit(const EllipticContext& ctx, int n_samples, Rng& rng,
                                 bool perturb_exponent) {
  SampleStats st;
  const double q6 = std::pow(ctx.q, 6.0);
  int tries = 0;
  while (st.n < n_samples && tries < 50 * n_samples + 100) {
    ++tries;
    const cx u = rng.box(1.5, 0.3);
    const cx z = qpow(ctx.q, 2.0 * u);
    if (std::abs(z - 1.0) < 0.05) continue;  // known common zero at z = 1
    // p -> 0: every {p q^k z} factor becomes 1 and {q^k/z} -> (q^k/z; q^6).
    auto f = [&](double k) { return qpoch_multi(std::pow(ctx.q, k) / z, {q6}, ctx); };
    const cx den = f(2) * f(3) * f(3) * f(4);
    if (std::abs(den) < kPoleEps) continue;
    const cx rho_p0 =
        -ctx.q * qpow(ctx.q, 2.0 * u / ctx.r) * f(0) * f(1) * f(5) * f(6) / den;
    const cx rvv = rho_vv(z, ctx.q, ctx);
    if (std::abs(rvv) < 1e-12) continue;
    const double expo = perturb_exponent ? 2.0 : 1.0;
    const cx claimed = -ctx.q * ctx.q * qpow(ctx.q, 2.0 * u * expo / ctx.r);
    const cx ratio = rho_p0 / rvv;
    const double scale = std::max(std::abs(ratio), std::abs(claimed));
    if (scale < 1e-12) continue;
    st.max_residual = std::max(st.max_residual, std::abs(ratio - claimed) / scale);
    ++st.n;
  }
  st.ok = (st.n == n_samples);
  return st;
}

}  // namespace ellq
