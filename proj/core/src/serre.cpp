#include <cmath>

#include "ellq/relations.hpp"

namespace ellq {

namespace {

// Truncated Laurent series in the two ratio variables x = z2/z1, y = z3/z2,
// exponents confined to [-W, W]^2. Out-of-window products are dropped; the
// caller leaves margin around the reported window.
struct Laurent2 {
  int W;
  std::vector<cx> a;
  explicit Laurent2(int w) : W(w), a((2 * w + 1) * (2 * w + 1), cx(0.0)) {}
  int idx(int i, int j) const { return (i + W) * (2 * W + 1) + (j + W); }
  bool in(int i, int j) const { return std::abs(i) <= W && std::abs(j) <= W; }
  cx get(int i, int j) const { return in(i, j) ? a[idx(i, j)] : cx(0.0); }
  void add(int i, int j, cx v) {
    if (in(i, j)) a[idx(i, j)] += v;
  }
  static Laurent2 one(int w) {
    Laurent2 l(w);
    l.add(0, 0, cx(1.0));
    return l;
  }
  // multiply in place by sum_k coeffs[k] X^{k (mi,mj)}
  void mul_sparse(const std::vector<cx>& coeffs, int mi, int mj) {
    Laurent2 out(W);
    for (int i = -W; i <= W; ++i)
      for (int j = -W; j <= W; ++j) {
        const cx v = a[idx(i, j)];
        if (v == cx(0.0)) continue;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          if (coeffs[k] == cx(0.0)) continue;
          out.add(i + static_cast<int>(k) * mi, j + static_cast<int>(k) * mj,
                  coeffs[k] * v);
        }
      }
    a.swap(out.a);
  }
  Laurent2 operator*(const Laurent2& o) const {
    Laurent2 out(W);
    for (int i = -W; i <= W; ++i)
      for (int j = -W; j <= W; ++j) {
        const cx v = a[idx(i, j)];
        if (v == cx(0.0)) continue;
        for (int i2 = -W; i2 <= W; ++i2)
          for (int j2 = -W; j2 <= W; ++j2) {
            const cx w = o.a[o.idx(i2, j2)];
            if (w != cx(0.0)) out.add(i + i2, j + j2, v * w);
          }
      }
    return out;
  }
};

// Taylor coefficients of (pref w; base_vals)^{expo} to order K, built one
// linear factor (1 - v w)^{+-1} at a time (stable for |v| > 1, where the
// exp-of-log route cancels catastrophically).
std::vector<cx> poch_series(cx pref, const std::vector<double>& base_vals,
                            double expo, int K) {
  std::vector<cx> args{pref};
  for (double b : base_vals) {
    std::vector<cx> next;
    for (cx a0 : args) {
      cx v = a0;
      for (int n = 0; n < 512 && std::abs(v) > 1e-22; ++n) {
        next.push_back(v);
        v *= b;
      }
    }
    args = std::move(next);
  }
  std::vector<cx> c(K + 1, cx(0.0));
  c[0] = cx(1.0);
  const long e = std::lround(expo);
  for (long rep = 0; rep < std::labs(e); ++rep) {
    for (cx v : args) {
      if (e > 0) {
        for (int k = K; k >= 1; --k) c[k] -= v * c[k - 1];  // * (1 - v w)
      } else {
        for (int k = 1; k <= K; ++k) c[k] += v * c[k - 1];  // / (1 - v w)
      }
    }
  }
  return c;
}

struct RatioRef {
  int hi, lo;  // w = z_{sigma(hi)} / z_{sigma(lo)}, positions 1..3
};

struct SerreFactor {
  double qexpo;  // argument prefactor q^{qexpo}
  bool with_p;   // argument carries one power of the side's expansion base
  RatioRef ratio;
  int expo;  // +1 numerator, -1 denominator
};

}  // namespace

RelationResult verify_serre(const EllipticContext& base, int order, bool f_side,
                            bool misprinted_prefactor, bool single_term_control) {
  RelationResult res;
  EllipticContext ctx = base.c == 1.0 ? base : base.with_level(1.0);
  const double q = ctx.q;
  const double pp = f_side ? ctx.p : ctx.p_star;  // expansion base of the side
  const int W = 6 * order + 16;
  const int K = 5 * order + 12;

  const Current cur = make_current(f_side ? "F_l1" : "E_l1", ctx);
  const GeomSum pair_geom = contraction_geom(cur, cur, ctx);
  const ResummedProduct pair_prod = ResummedProduct::from_geom(pair_geom);

  // prefactor and parenthetical data; w21 = {2,1}, w31 = {3,1}, w32 = {3,2}
  std::vector<SerreFactor> prefactor, par1, par2;
  double pw1, pw2, par2_scale_expo;
  if (!f_side) {
    prefactor = {{2, true, {3, 1}, 1},   {-1, true, {3, 1}, 1},
                 {-1, true, {3, 2}, 1},  {-1, true, {2, 1}, 1},
                 {-2, true, {3, 1}, -1}, {1, true, {3, 1}, -1},
                 {1, true, {3, 2}, -1},  {1, true, {2, 1}, -1}};
    pw1 = -2.0 / ctx.r_star;
    pw2 = -1.0 / ctx.r_star;
    par1 = {{2, false, {2, 1}, 1},
            {2, true, {3, 2}, 1},
            {-2, true, {2, 1}, -1},
            {-2, true, {3, 2}, -1}};
    // second parenthetical term: + q z_{sigma(2)} (q^2 w32; p*)-naked; the
    // telescoped kernel (z1 + q z2) - q^2 (z2 + q z3) is what the level-1
    // fields annihilate
    par2 = {{2, true, {2, 1}, 1},
            {2, false, {3, 2}, 1},
            {-2, true, {2, 1}, -1},
            {-2, true, {3, 2}, -1}};
    par2_scale_expo = 1.0;
  } else {
    if (misprinted_prefactor) {
      prefactor = {{1, true, {2, 1}, 1},   {-2, true, {3, 1}, 1},
                   {1, true, {3, 2}, 1},   {1, true, {3, 2}, 1},
                   {-1, true, {2, 1}, -1}, {2, true, {3, 1}, -1},
                   {-1, true, {3, 1}, -1}, {-1, true, {3, 2}, -1}};
    } else {
      prefactor = {{1, true, {2, 1}, 1},   {-2, true, {3, 1}, 1},
                   {1, true, {3, 1}, 1},   {1, true, {3, 2}, 1},
                   {-1, true, {2, 1}, -1}, {2, true, {3, 1}, -1},
                   {-1, true, {3, 1}, -1}, {-1, true, {3, 2}, -1}};
    }
    pw1 = 2.0 / ctx.r;
    pw2 = 1.0 / ctx.r;
    par1 = {{-2, false, {2, 1}, 1},
            {-2, true, {3, 2}, 1},
            {2, true, {2, 1}, -1},
            {2, true, {3, 2}, -1}};
    par2 = {{-2, true, {2, 1}, 1},
            {-2, false, {3, 2}, 1},
            {2, true, {2, 1}, -1},
            {2, true, {3, 2}, -1}};
    par2_scale_expo = -1.0;
  }

  // exponents of z_k in x, y (1-based): z_k = z_1 x^{ax[k]} y^{ay[k]}
  const int ax[4] = {0, 0, 1, 1};
  const int ay[4] = {0, 0, 0, 1};

  const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                           {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};

  Laurent2 total(W);
  std::vector<double> amax(total.a.size(), 0.0);  // per-coefficient peak
  double z1_expo_ref = 0.0;
  Word canon_ref;
  const int n_terms = single_term_control ? 1 : 6;

  for (int t = 0; t < n_terms; ++t) {
    const int* s = perms[t];
    auto mono = [&](const RatioRef& rr, int& mi, int& mj) {
      mi = ax[s[rr.hi - 1]] - ax[s[rr.lo - 1]];
      mj = ay[s[rr.hi - 1]] - ay[s[rr.lo - 1]];
    };
    auto mul_factors = [&](Laurent2& l, const std::vector<SerreFactor>& fs) {
      for (const auto& f : fs) {
        int mi, mj;
        mono(f.ratio, mi, mj);
        const cx pref = (f.with_p ? pp : 1.0) * std::pow(q, f.qexpo);
        l.mul_sparse(poch_series(pref, {pp}, f.expo, K), mi, mj);
      }
    };

    Laurent2 term = Laurent2::one(W);
    mul_factors(term, prefactor);

    // pairwise contraction kernels exp(N(z_later / z_earlier))
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const int mi = ax[s[j]] - ax[s[i]];
        const int mj = ay[s[j]] - ay[s[i]];
        for (const auto& f : pair_prod.factors) {
          std::vector<double> bases;
          for (double b : f.base_expos) bases.push_back(std::pow(q, b));
          term.mul_sparse(
              poch_series(std::pow(q, f.arg_expo), bases, f.exponent, K), mi, mj);
        }
      }

    // parenthetical: z_{sigma1} P1 - q^{+-1} z_{sigma2} P2  (common z_1)
    Laurent2 parA = Laurent2::one(W), parB = Laurent2::one(W);
    mul_factors(parA, par1);
    mul_factors(parB, par2);
    Laurent2 par(W);
    {
      const int i1 = ax[s[0]], j1 = ay[s[0]];
      const int i2 = ax[s[1]], j2 = ay[s[1]];
      const cx c2 = (misprinted_prefactor ? -1.0 : 1.0) * std::pow(q, par2_scale_expo);
      for (int i = -W; i <= W; ++i)
        for (int j = -W; j <= W; ++j) {
          const cx va = parA.get(i, j), vb = parB.get(i, j);
          if (va != cx(0.0)) par.add(i + i1, j + j1, va);
          if (vb != cx(0.0)) par.add(i + i2, j + j2, c2 * vb);
        }
    }
    term = term * par;

    // zero-mode scalar of the ordered triple product; slots carry the actual
    // argument labels so z-powers map onto (x, y) monomials
    Word w3;
    for (int k = 0; k < 3; ++k) {
      Word bw = bind_word(cur.word, s[k], 0.0);
      w3.insert(w3.end(), bw.begin(), bw.end());
    }
    NormalizedWord nw = normalize(w3);
    if (t == 0)
      canon_ref = nw.canonical;
    else if (!words_equal(nw.canonical, canon_ref)) {
      res.errored = true;
      res.note = "sigma terms normalize to different operators";
      return res;
    }
    double z1e = pw1 + pw2, fx = 0.0, fy = 0.0;
    fx += ax[s[0]] * pw1 + ax[s[1]] * pw2;
    fy += ay[s[0]] * pw1 + ay[s[1]] * pw2;
    for (const auto& [slot, e] : nw.scalar.zexp) {
      z1e += e;
      fx += ax[slot] * e;
      fy += ay[slot] * e;
    }
    if (t == 0)
      z1_expo_ref = z1e;
    else if (std::abs(z1e - z1_expo_ref) > 1e-9) {
      res.errored = true;
      res.note = "sigma terms carry different overall powers";
      return res;
    }
    const long ix = std::lround(fx), iy = std::lround(fy);
    if (std::abs(fx - ix) > 1e-9 || std::abs(fy - iy) > 1e-9) {
      res.errored = true;
      res.note = "fractional ratio powers do not cancel";
      return res;
    }
    const cx scalar = nw.scalar.phase * qpow(q, cx(nw.scalar.qexp));
#ifdef ELLQ_SERRE_DEBUG
    std::printf("sigma %d%d%d: scalar=(%.6f,%.6f) ix=%ld iy=%ld  t(0,0)=%.8g t(1,0)=%.8g t(0,1)=%.8g t(2,1)=%.8g\n",
                s[0], s[1], s[2], scalar.real(), scalar.imag(), ix, iy,
                term.get(0,0).real(), term.get(1,0).real(), term.get(0,1).real(),
                term.get(2,1).real());
#endif
    for (int i = -W; i <= W; ++i)
      for (int j = -W; j <= W; ++j) {
        const cx v = term.a[term.idx(i, j)];
        if (v == cx(0.0)) continue;
        const int ti = i + static_cast<int>(ix), tj = j + static_cast<int>(iy);
        if (!total.in(ti, tj)) continue;
        total.add(ti, tj, v * scalar);
        amax[total.idx(ti, tj)] =
            std::max(amax[total.idx(ti, tj)], std::abs(v * scalar));
      }
  }

  double global_peak = 0.0;
  for (int i = -order; i <= order; ++i)
    for (int j = -order; j <= order; ++j)
      global_peak = std::max(global_peak, amax[total.idx(i, j)]);
  double worst = 0.0;
  for (int i = -order; i <= order; ++i)
    for (int j = -order; j <= order; ++j) {
      // coefficients whose contributions are pure truncation dust carry no
      // information; the cancellation-aware residual floors the local peak
      const double peak = amax[total.idx(i, j)];
      if (peak < 1e-10 * global_peak) continue;
      const double rel = std::abs(total.get(i, j)) / peak;
#ifdef ELLQ_SERRE_DEBUG
      if (rel > 1e-9)
        std::printf("BAD (%d,%d): total=%.8g amax=%.8g rel=%.2e\n", i, j,
                    std::abs(total.get(i, j)), peak, rel);
#endif
      worst = std::max(worst, rel);
    }
  res.max_residual = worst;
  res.n = (2 * order + 1) * (2 * order + 1);
  res.pass = res.max_residual < ctx.tol;
  return res;
}

}  // namespace ellq
