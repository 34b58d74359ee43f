#include "ellq/qseries.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace ellq {

namespace {

// Factors with |z w| below this are 1 to double precision; skipping them
// keeps the multi-index loops near-linear instead of N^k.
constexpr double kFactorEps = 1e-18;

cx qpoch_rec(cx z, const std::vector<double>& bases,
             const std::vector<int>& cutoffs, std::size_t level, double scale) {
  if (level == bases.size()) return cx(1.0) - z * scale;
  const double t = bases[level];
  cx prod(1.0);
  double s = scale;
  for (int n = 0; n < cutoffs[level]; ++n) {
    if (std::abs(z) * s < kFactorEps) break;
    prod *= qpoch_rec(z, bases, cutoffs, level + 1, s);
    s *= t;
  }
  return prod;
}

// Per-base factor count: smallest N with base^N < tol * 1e-2, clamped to
// [8, cap]. Slowly decaying bases (plain q from the contraction engine) get
// the depth they need; the cap keeps the tail certificate finite.
int cutoff_for_base(double base, double tol, int cap) {
  int n = static_cast<int>(std::ceil(std::log(tol * 1e-2) / std::log(base)));
  if (n < 8) n = 8;
  if (n > cap) n = cap;
  return n;
}

}  // namespace

cx qpoch_multi_cutoff(cx z, const std::vector<double>& bases, int cutoff) {
  for (double t : bases) {
    if (!(std::abs(t) < 1.0))
      throw std::invalid_argument("qpoch_multi: base with |t| >= 1 diverges");
  }
  if (bases.empty()) return cx(1.0) - z;
  const std::vector<int> cutoffs(bases.size(), cutoff);
  return qpoch_rec(z, bases, cutoffs, 0, 1.0);
}

cx qpoch_multi(cx z, const std::vector<double>& bases, const EllipticContext& ctx) {
  for (double t : bases) {
    if (!(std::abs(t) < 1.0))
      throw std::invalid_argument("qpoch_multi: base with |t| >= 1 diverges");
  }
  if (bases.empty()) return cx(1.0) - z;
  std::vector<int> cutoffs(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i)
    cutoffs[i] = ctx.cutoff_explicit ? ctx.product_cutoff
                                     : cutoff_for_base(bases[i], ctx.tol, 512);
  return qpoch_rec(z, bases, cutoffs, 0, 1.0);
}

cx theta_p(cx z, double p, const EllipticContext& ctx) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("theta_p: need 0 < p < 1");
  if (z == cx(0.0)) throw std::invalid_argument("theta_p: z = 0 (p/z undefined)");
  const std::vector<double> base{p};
  return qpoch_multi(z, base, ctx) * qpoch_multi(p / z, base, ctx) *
         qpoch_multi(cx(p), base, ctx);
}

cx theta_p_series(cx z, double p) {
  // sum over n >= 1 of the +/- n pair, until terms vanish
  cx sum(1.0);  // n = 0 term
  double sign = -1.0;
  for (int n = 1; n < 400; ++n) {
    const double pp = std::pow(p, 0.5 * n * (n - 1));
    const double pm = std::pow(p, 0.5 * n * (n + 1));  // exponent for -n
    const cx term = sign * (pp * std::pow(z, n) + pm * std::pow(z, -n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && n > 3) break;
    sign = -sign;
  }
  return sum;
}

cx bracket(cx u, BracketKind kind, const EllipticContext& ctx) {
  const bool star = bracket_is_star(kind);
  const double rr = star ? ctx.r_star : ctx.r;
  const double pp = star ? ctx.p_star : ctx.p;
  cx z = qpow(ctx.q, 2.0 * u);
  if (bracket_is_plus(kind)) z = -z;
  return qpow(ctx.q, u * u / rr - u) * theta_p(z, pp, ctx);
}

cx curly(cx z, const EllipticContext& ctx, bool starred) {
  const double pp = starred ? ctx.p_star : ctx.p;
  return qpoch_multi(z, {pp, std::pow(ctx.q, 6.0)}, ctx);
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  if (o.a.size() > a.size()) a.resize(o.a.size(), cx(0.0));
  for (std::size_t i = 0; i < o.a.size(); ++i) a[i] += o.a[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  if (o.a.size() > a.size()) a.resize(o.a.size(), cx(0.0));
  for (std::size_t i = 0; i < o.a.size(); ++i) a[i] -= o.a[i];
  return *this;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  const int n = order();
  PowerSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == cx(0.0)) continue;
    for (int j = 0; i + j <= n && j <= o.order(); ++j)
      out.a[i + j] += a[i] * o.a[j];
  }
  return out;
}

PowerSeries& PowerSeries::operator*=(cx s) {
  for (auto& c : a) c *= s;
  return *this;
}

PowerSeries PowerSeries::exp_series() const {
  const int n = order();
  PowerSeries out(n);
  out.a[0] = cx(1.0);
  // out' = this' * out  =>  m out_m = sum_{k=1..m} k a_k out_{m-k}
  for (int m = 1; m <= n; ++m) {
    cx s(0.0);
    for (int k = 1; k <= m; ++k) s += static_cast<double>(k) * a[k] * out.a[m - k];
    out.a[m] = s / static_cast<double>(m);
  }
  return out;
}

PowerSeries PowerSeries::log_series() const {
  const int n = order();
  PowerSeries out(n);
  // m a_m = m out_m + sum_{k=1..m-1} k out_k a_{m-k}  (a_0 = 1)
  for (int m = 1; m <= n; ++m) {
    cx s = static_cast<double>(m) * a[m];
    for (int k = 1; k < m; ++k) s -= static_cast<double>(k) * out.a[k] * a[m - k];
    out.a[m] = s / static_cast<double>(m);
  }
  return out;
}

cx PowerSeries::eval(cx x) const {
  cx s(0.0);
  for (int m = order(); m >= 0; --m) s = s * x + a[m];
  return s;
}

PowerSeries log_series_poch(const std::vector<PochFactor>& factors, int order,
                            bool formal) {
  PowerSeries out(order);
  for (const auto& f : factors) {
    if (!formal && !(std::abs(f.prefactor) < 1.0))
      throw std::invalid_argument("log_series_poch: prefactor with |a| >= 1");
    cx am = cx(1.0);
    for (int m = 1; m <= order; ++m) {
      am *= f.prefactor;
      double den = 1.0;
      for (double b : f.bases) den *= (1.0 - std::pow(b, m));
      out.a[m] -= f.exponent * am / (static_cast<double>(m) * den);
    }
  }
  return out;
}

}  // namespace ellq
