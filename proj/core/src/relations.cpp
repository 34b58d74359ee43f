#include "ellq/relations.hpp"

#include <cmath>

namespace ellq {

namespace {

cx br(cx u, BracketKind k, const EllipticContext& ctx) { return bracket(u, k, ctx); }

Eval ratio2(cx n1, cx n2, cx d1, cx d2, double sign) {
  const cx den = d1 * d2;
  if (std::abs(den) < kPoleEps) return Eval::at_pole();
  return Eval::value(sign * n1 * n2 / den);
}

// bracket-ratio claim  sign [u+a]~[u+b]~ / ([u+c]~[u+d]~), ~ in {plain,star}
std::function<Eval(const EllipticContext&, cx, cx)> claim_br4(
    double a, double b, double c, double d, double sign, bool star) {
  const BracketKind k = star ? BracketKind::star_plain : BracketKind::plain;
  return [=](const EllipticContext& ctx, cx u1, cx u2) {
    const cx u = u1 - u2;
    return ratio2(br(u + a, k, ctx), br(u + b, k, ctx), br(u + c, k, ctx),
                  br(u + d, k, ctx), sign);
  };
}

// sign [u+a]~ / [u+b]~
std::function<Eval(const EllipticContext&, cx, cx)> claim_br2(double a, double b,
                                                              double sign,
                                                              bool star) {
  const BracketKind k = star ? BracketKind::star_plain : BracketKind::plain;
  return [=](const EllipticContext& ctx, cx u1, cx u2) {
    const cx u = u1 - u2;
    const cx den = br(u + b, k, ctx);
    if (std::abs(den) < kPoleEps) return Eval::at_pole();
    return Eval::value(sign * br(u + a, k, ctx) / den);
  };
}

// Theta_{p or p*} ratio claims with explicit argument builders
cx th(cx w, bool star, const EllipticContext& ctx) {
  return theta_p(w, star ? ctx.p_star : ctx.p, ctx);
}

std::function<Current(const EllipticContext&)> cur(const char* name) {
  return [name](const EllipticContext& ctx) { return make_current(name, ctx); };
}
std::function<Current(const EllipticContext&)> cur_shift(const char* name,
                                                         double s) {
  return [name, s](const EllipticContext& ctx) {
    return make_current(name, ctx).shifted(s);
  };
}

PochFactor pf(cx a, std::vector<double> bases, double e) { return {a, bases, e}; }

std::vector<RelationSpec> build_catalog() {
  std::vector<RelationSpec> v;

  auto add = [&](RelationSpec r) { v.push_back(std::move(r)); };

  // ---- one-sided product expansions (series checks) -------------------
  {
    RelationSpec r;
    r.id = "ope.uu";
    r.reference =
        "u+(z1) u-(z2) = u-(z2) u+(z1) (p q^{-c-2} w;p)(p* q^{c+2} w;p*)"
        "(p q^{-c+1} w;p)(p* q^{c-1} w;p*) / (p q^{-c+2} w;p)(p* q^{c-2} w;p*)"
        "(p q^{-c-1} w;p)(p* q^{c+1} w;p*),  w = z1/z2";
    r.series_kind = true;
    r.left = cur("u_plus");
    r.right = cur("u_minus");
    r.claimed_y = [](const EllipticContext& c) {
      const double q = c.q;
      auto qe = [&](double k) { return std::pow(q, k); };
      return std::vector<PochFactor>{
          pf(c.p * qe(-c.c - 2), {c.p}, 1.0), pf(c.p_star * qe(c.c + 2), {c.p_star}, 1.0),
          pf(c.p * qe(-c.c + 1), {c.p}, 1.0), pf(c.p_star * qe(c.c - 1), {c.p_star}, 1.0),
          pf(c.p * qe(-c.c + 2), {c.p}, -1.0), pf(c.p_star * qe(c.c - 2), {c.p_star}, -1.0),
          pf(c.p * qe(-c.c - 1), {c.p}, -1.0), pf(c.p_star * qe(c.c + 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.up-xp";
    r.reference =
        "u+(z1) x+(z2): (p* q^2 w;p*)(p* q^{-1} w;p*) / "
        "((p* q^{-2} w;p*)(p* q w;p*)),  w = z1/z2";
    r.series_kind = true;
    r.left = cur("u_plus");
    r.right = cur("x_plus");
    r.claimed_y = [](const EllipticContext& c) {
      const double q = c.q;
      return std::vector<PochFactor>{pf(c.p_star * q * q, {c.p_star}, 1.0),
                                     pf(c.p_star / q, {c.p_star}, 1.0),
                                     pf(c.p_star / (q * q), {c.p_star}, -1.0),
                                     pf(c.p_star * q, {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.up-xm";
    r.reference =
        "u+(z1) x-(z2): (p* q^{c-2} w;p*)(p* q^{c+1} w;p*) / "
        "((p* q^{c+2} w;p*)(p* q^{c-1} w;p*)),  w = z1/z2";
    r.series_kind = true;
    r.left = cur("u_plus");
    r.right = cur("x_minus");
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(c.p_star * qe(c.c - 2), {c.p_star}, 1.0),
                                     pf(c.p_star * qe(c.c + 1), {c.p_star}, 1.0),
                                     pf(c.p_star * qe(c.c + 2), {c.p_star}, -1.0),
                                     pf(c.p_star * qe(c.c - 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.um-xp";
    r.reference =
        "u-(z1) x+(z2): (p q^{-c-2} x;p)(p q^{-c+1} x;p) / "
        "((p q^{-c+2} x;p)(p q^{-c-1} x;p)),  x = z2/z1";
    r.series_kind = true;
    r.left = cur("u_minus");
    r.right = cur("x_plus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(c.p * qe(-c.c - 2), {c.p}, 1.0),
                                     pf(c.p * qe(-c.c + 1), {c.p}, 1.0),
                                     pf(c.p * qe(-c.c + 2), {c.p}, -1.0),
                                     pf(c.p * qe(-c.c - 1), {c.p}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.um-xm";
    r.reference =
        "u-(z1) x-(z2): (p q^2 x;p)(p q^{-1} x;p) / ((p q^{-2} x;p)(p q x;p)),"
        "  x = z2/z1";
    r.series_kind = true;
    r.left = cur("u_minus");
    r.right = cur("x_minus");
    r.claimed_x = [](const EllipticContext& c) {
      const double q = c.q;
      return std::vector<PochFactor>{pf(c.p * q * q, {c.p}, 1.0),
                                     pf(c.p / q, {c.p}, 1.0),
                                     pf(c.p / (q * q), {c.p}, -1.0),
                                     pf(c.p * q, {c.p}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-up";
    r.reference =
        "psi(z1) u+(z2): (q^{r*+2} x;p)(q^{r*-1} x;p)(q^{r*-2} x;p*)(q^{r*+1} x;p*)"
        " / ((q^{r*-2} x;p)(q^{r*+1} x;p)(q^{r*+2} x;p*)(q^{r*-1} x;p*)),  x = z2/z1";
    r.series_kind = true;
    r.left = cur("psi");
    r.right = cur("u_plus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{
          pf(qe(rs + 2), {c.p}, 1.0), pf(qe(rs - 1), {c.p}, 1.0),
          pf(qe(rs - 2), {c.p_star}, 1.0), pf(qe(rs + 1), {c.p_star}, 1.0),
          pf(qe(rs - 2), {c.p}, -1.0), pf(qe(rs + 1), {c.p}, -1.0),
          pf(qe(rs + 2), {c.p_star}, -1.0), pf(qe(rs - 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-um";
    r.reference =
        "psi(z1) u-(z2): (q^{r-2} w;p)(q^{r+1} w;p)(q^{r+2} w;p*)(q^{r-1} w;p*)"
        " / ((q^{r+2} w;p)(q^{r-1} w;p)(q^{r-2} w;p*)(q^{r+1} w;p*)),  w = z1/z2";
    r.series_kind = true;
    r.left = cur("psi");
    r.right = cur("u_minus");
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rr = c.r;
      return std::vector<PochFactor>{
          pf(qe(rr - 2), {c.p}, 1.0), pf(qe(rr + 1), {c.p}, 1.0),
          pf(qe(rr + 2), {c.p_star}, 1.0), pf(qe(rr - 1), {c.p_star}, 1.0),
          pf(qe(rr + 2), {c.p}, -1.0), pf(qe(rr - 1), {c.p}, -1.0),
          pf(qe(rr - 2), {c.p_star}, -1.0), pf(qe(rr + 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-xp";
    r.reference =
        "psi(z1) x+(z2): (q^{r*-2} x;p)(q^{r*+1} x;p)(q^{r*+2} w;p*)(q^{r*-1} w;p*)"
        " / ((q^{r*+2} x;p)(q^{r*-1} x;p)(q^{r*-2} w;p*)(q^{r*+1} w;p*)),"
        "  x = z2/z1, w = z1/z2";
    r.series_kind = true;
    r.left = cur("psi");
    r.right = cur("x_plus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{pf(qe(rs - 2), {c.p}, 1.0),
                                     pf(qe(rs + 1), {c.p}, 1.0),
                                     pf(qe(rs + 2), {c.p}, -1.0),
                                     pf(qe(rs - 1), {c.p}, -1.0)};
    };
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{pf(qe(rs + 2), {c.p_star}, 1.0),
                                     pf(qe(rs - 1), {c.p_star}, 1.0),
                                     pf(qe(rs - 2), {c.p_star}, -1.0),
                                     pf(qe(rs + 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-xm";
    r.reference =
        "psi(z1) x-(z2): (q^{r+2} x;p)(q^{r-1} x;p)(q^{r-2} w;p*)(q^{r+1} w;p*)"
        " / ((q^{r-2} x;p)(q^{r+1} x;p)(q^{r+2} w;p*)(q^{r-1} w;p*))";
    r.series_kind = true;
    r.left = cur("psi");
    r.right = cur("x_minus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(qe(c.r + 2), {c.p}, 1.0),
                                     pf(qe(c.r - 1), {c.p}, 1.0),
                                     pf(qe(c.r - 2), {c.p}, -1.0),
                                     pf(qe(c.r + 1), {c.p}, -1.0)};
    };
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(qe(c.r - 2), {c.p_star}, 1.0),
                                     pf(qe(c.r + 1), {c.p_star}, 1.0),
                                     pf(qe(c.r + 2), {c.p_star}, -1.0),
                                     pf(qe(c.r - 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-up";
    r.reference =
        "k(z1) u+(z2): (q^{r*+1} x;p)(q^{r*-1} x;p*) / ((q^{r*-1} x;p)"
        "(q^{r*+1} x;p*)),  x = z2/z1";
    r.series_kind = true;
    r.left = cur("k");
    r.right = cur("u_plus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{
          pf(qe(rs + 1), {c.p}, 1.0), pf(qe(rs - 1), {c.p_star}, 1.0),
          pf(qe(rs - 1), {c.p}, -1.0), pf(qe(rs + 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-um";
    r.reference =
        "k(z1) u-(z2): (q^{r-1} w;p)(q^{r+1} w;p*) / ((q^{r+1} w;p)"
        "(q^{r-1} w;p*)),  w = z1/z2";
    r.series_kind = true;
    r.left = cur("k");
    r.right = cur("u_minus");
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{
          pf(qe(c.r - 1), {c.p}, 1.0), pf(qe(c.r + 1), {c.p_star}, 1.0),
          pf(qe(c.r + 1), {c.p}, -1.0), pf(qe(c.r - 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-xp";
    r.reference =
        "k(z1) x+(z2): (q^{r*+1} w;p*)(q^{r*-1} x;p) / ((q^{r*-1} w;p*)"
        "(q^{r*+1} x;p))";
    r.series_kind = true;
    r.left = cur("k");
    r.right = cur("x_plus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{pf(qe(rs - 1), {c.p}, 1.0),
                                     pf(qe(rs + 1), {c.p}, -1.0)};
    };
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      const double rs = c.r_star;
      return std::vector<PochFactor>{pf(qe(rs + 1), {c.p_star}, 1.0),
                                     pf(qe(rs - 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-xm";
    r.reference =
        "k(z1) x-(z2): (q^{r-1} w;p*)(q^{r+1} x;p) / ((q^{r+1} w;p*)"
        "(q^{r-1} x;p))";
    r.series_kind = true;
    r.left = cur("k");
    r.right = cur("x_minus");
    r.claimed_x = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(qe(c.r + 1), {c.p}, 1.0),
                                     pf(qe(c.r - 1), {c.p}, -1.0)};
    };
    r.claimed_y = [](const EllipticContext& c) {
      auto qe = [&](double k) { return std::pow(c.q, k); };
      return std::vector<PochFactor>{pf(qe(c.r - 1), {c.p_star}, 1.0),
                                     pf(qe(c.r + 1), {c.p_star}, -1.0)};
    };
    add(std::move(r));
  }

  // ---- pointwise theta / bracket ratio relations ----------------------
  {
    RelationSpec r;
    r.id = "ope.psi-psi";
    r.reference =
        "psi psi: Th_p(q^{-2}z) Th_p(qz) Th_p*(q^2 z) Th_p*(q^{-1}z) / "
        "(Th_p(q^2 z) Th_p(q^{-1}z) Th_p*(q^{-2}z) Th_p*(qz)),  z = z1/z2";
    r.left = cur("psi");
    r.right = cur("psi");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      const double q = ctx.q;
      const cx den = th(q * q * z, false, ctx) * th(z / q, false, ctx) *
                     th(z / (q * q), true, ctx) * th(q * z, true, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(th(z / (q * q), false, ctx) * th(q * z, false, ctx) *
                         th(q * q * z, true, ctx) * th(z / q, true, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-e";
    r.reference =
        "psi e: Th_p*(q^{r*+2}z) Th_p*(q^{r*-1}z) / (Th_p*(q^{r*-2}z) "
        "Th_p*(q^{r*+1}z))";
    r.left = cur("psi");
    r.right = cur("e");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      auto qe = [&](double k) { return std::pow(ctx.q, k); };
      const double rs = ctx.r_star;
      const cx den = th(qe(rs - 2) * z, true, ctx) * th(qe(rs + 1) * z, true, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(th(qe(rs + 2) * z, true, ctx) *
                         th(qe(rs - 1) * z, true, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.psi-f";
    r.reference =
        "psi f: Th_p(q^{r-2}z) Th_p(q^{r+1}z) / (Th_p(q^{r+2}z) Th_p(q^{r-1}z))";
    r.left = cur("psi");
    r.right = cur("f");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      auto qe = [&](double k) { return std::pow(ctx.q, k); };
      const cx den = th(qe(ctx.r + 2) * z, false, ctx) * th(qe(ctx.r - 1) * z, false, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(th(qe(ctx.r - 2) * z, false, ctx) *
                         th(qe(ctx.r + 1) * z, false, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.e-e";
    r.reference =
        "e e: -Th_p*(q^{-2}/z) Th_p*(q^{-1}z) / (Th_p*(q^{-2}z) Th_p*(q^{-1}/z))";
    r.left = cur("e");
    r.right = cur("e");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      const double q = ctx.q;
      const cx den = th(z / (q * q), true, ctx) * th(1.0 / (q * z), true, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(-th(1.0 / (q * q * z), true, ctx) * th(z / q, true, ctx) /
                         den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.f-f";
    r.reference = "f f: -Th_p(q^2/z) Th_p(qz) / (Th_p(q^2 z) Th_p(q/z))";
    r.left = cur("f");
    r.right = cur("f");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      const double q = ctx.q;
      const cx den = th(q * q * z, false, ctx) * th(q / z, false, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(-th(q * q / z, false, ctx) * th(q * z, false, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-k";
    r.reference = "k(z1) k(z2) = z^{-1/r* + 1/r} rho(z) k(z2) k(z1),  z = z1/z2";
    r.left = cur("k");
    r.right = cur("k");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx u = u1 - u2;
      Eval rho = rho_ratio(u, ctx);
      if (rho.pole) return rho;
      return Eval::value(qpow(ctx.q, 2.0 * u * (1.0 / ctx.r - 1.0 / ctx.r_star)) *
                         rho.v);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-e";
    r.reference = "k e: Th_p*(q^{r*+1}z) / Th_p*(q^{r*-1}z)";
    r.left = cur("k");
    r.right = cur("e");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      auto qe = [&](double k) { return std::pow(ctx.q, k); };
      const cx den = th(qe(ctx.r_star - 1) * z, true, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(th(qe(ctx.r_star + 1) * z, true, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ope.k-f";
    r.reference = "k f: Th_p(q^{r-1}z) / Th_p(q^{r+1}z)";
    r.left = cur("k");
    r.right = cur("f");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx z = qpow(ctx.q, 2.0 * (u1 - u2));
      auto qe = [&](double k) { return std::pow(ctx.q, k); };
      const cx den = th(qe(ctx.r + 1) * z, false, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(th(qe(ctx.r - 1) * z, false, ctx) / den);
    };
    add(std::move(r));
  }

  // ---- elliptic currents: K, E, F exchange scalars ---------------------
  {
    RelationSpec r;
    r.id = "ell.KK";
    r.reference = "K(z1) K(z2) = rho(z1/z2) K(z2) K(z1)";
    r.left = cur("K");
    r.right = cur("K");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return rho_ratio(u1 - u2, ctx);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.KE";
    r.reference = "K E: -[u+(r*+1)/2]* / [u+(r*-1)/2]*";
    r.left = cur("K");
    r.right = cur("E");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2((ctx.r_star + 1) / 2, (ctx.r_star - 1) / 2, -1.0,
                       true)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.KF";
    r.reference = "K F: -[u+(r-1)/2] / [u+(r+1)/2]";
    r.left = cur("K");
    r.right = cur("F");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2((ctx.r - 1) / 2, (ctx.r + 1) / 2, -1.0, false)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.EE";
    r.reference = "E E: -[u+1]*[u-1/2]* / ([u-1]*[u+1/2]*)";
    r.left = cur("E");
    r.right = cur("E");
    r.claimed = claim_br4(1.0, -0.5, -1.0, 0.5, -1.0, true);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.FF";
    r.reference = "F F: -[u-1][u+1/2] / ([u+1][u-1/2])";
    r.left = cur("F");
    r.right = cur("F");
    r.claimed = claim_br4(-1.0, 0.5, 1.0, -0.5, -1.0, false);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.EE.l1";
    r.reference = "E E (free field): -[u+1]*[u-1/2]* / ([u-1]*[u+1/2]*)";
    r.force_level = 1.0;
    r.left = cur("E_l1");
    r.right = cur("E_l1");
    r.claimed = claim_br4(1.0, -0.5, -1.0, 0.5, -1.0, true);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.FF.l1";
    r.reference = "F F (free field): -[u-1][u+1/2] / ([u+1][u-1/2])";
    r.force_level = 1.0;
    r.left = cur("F_l1");
    r.right = cur("F_l1");
    r.claimed = claim_br4(-1.0, 0.5, 1.0, -0.5, -1.0, false);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.KE.l1";
    r.reference = "K E (free field): -[u+(r*+1)/2]* / [u+(r*-1)/2]*";
    r.force_level = 1.0;
    r.left = cur("K");
    r.right = cur("E_l1");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2((ctx.r_star + 1) / 2, (ctx.r_star - 1) / 2, -1.0,
                       true)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "ell.KF.l1";
    r.reference = "K F (free field): -[u+(r-1)/2] / [u+(r+1)/2]";
    r.force_level = 1.0;
    r.left = cur("K");
    r.right = cur("F_l1");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2((ctx.r - 1) / 2, (ctx.r + 1) / 2, -1.0, false)(ctx, u1, u2);
    };
    add(std::move(r));
  }

  // ---- auxiliary currents K_eps vs E, F --------------------------------
  {
    RelationSpec r;
    r.id = "aux.K+E";
    r.reference = "K+ E: -[u+(c-1)/2]* / [u+(c-3)/2]*";
    r.left = cur("K_plus");
    r.right = cur("E");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2((ctx.c - 1) / 2, (ctx.c - 3) / 2, -1.0, true)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "aux.K0E";
    r.reference = "K0 E: [u+c/2]*[u+(c-1)/2]* / ([u+c/2-1]*[u+(c+1)/2]*)";
    r.left = cur("K_zero");
    r.right = cur("E");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br4(ctx.c / 2, (ctx.c - 1) / 2, ctx.c / 2 - 1.0,
                       (ctx.c + 1) / 2, 1.0, true)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "aux.K-E";
    r.reference = "K- E: -[u+c/2]* / [u+c/2+1]*";
    r.left = cur("K_minus");
    r.right = cur("E");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return claim_br2(ctx.c / 2, ctx.c / 2 + 1.0, -1.0, true)(ctx, u1, u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "aux.K+F";
    r.reference = "K+ F: -[u-3/2] / [u-1/2]";
    r.left = cur("K_plus");
    r.right = cur("F");
    r.claimed = claim_br2(-1.5, -0.5, -1.0, false);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "aux.K0F";
    r.reference = "K0 F: [u-1][u+1/2] / ([u][u-1/2])";
    r.left = cur("K_zero");
    r.right = cur("F");
    r.claimed = claim_br4(-1.0, 0.5, 0.0, -0.5, 1.0, false);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "aux.K-F";
    r.reference = "K- F: -[u+1] / [u]";
    r.left = cur("K_minus");
    r.right = cur("F");
    r.claimed = claim_br2(1.0, 0.0, -1.0, false);
    add(std::move(r));
  }

  // ---- half currents: K_eps pair relations -----------------------------
  auto rho_at = [](const EllipticContext& ctx, cx u) { return rho_ratio(u, ctx); };
  {
    RelationSpec r;
    r.id = "hc.K+K+";
    r.reference = "K+ K+: rho(u)";
    r.left = cur("K_plus");
    r.right = cur("K_plus");
    r.claimed = [rho_at](const EllipticContext& ctx, cx u1, cx u2) {
      return rho_at(ctx, u1 - u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "hc.K-K-";
    r.reference = "K- K-: rho(u)";
    r.left = cur("K_minus");
    r.right = cur("K_minus");
    r.claimed = [rho_at](const EllipticContext& ctx, cx u1, cx u2) {
      return rho_at(ctx, u1 - u2);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "hc.K0K0";
    r.reference = "K0 K0: rho(u)^2 / (rho(u+1/2) rho(u-1/2))";
    r.left = cur("K_zero");
    r.right = cur("K_zero");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx u = u1 - u2;
      Eval a = rho_ratio(u, ctx), b = rho_ratio(u + 0.5, ctx),
           c = rho_ratio(u - 0.5, ctx);
      if (a.pole || b.pole || c.pole) return Eval::at_pole();
      const cx den = b.v * c.v;
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(a.v * a.v / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "hc.K-K+";
    r.reference =
        "K- K+: rho(u) [u+1][u+3/2][u]*[u+1/2]* / ([u][u+1/2][u+1]*[u+3/2]*)";
    r.left = cur("K_minus");
    r.right = cur("K_plus");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx u = u1 - u2;
      Eval rho = rho_ratio(u, ctx);
      if (rho.pole) return rho;
      const cx den = br(u, BracketKind::plain, ctx) *
                     br(u + 0.5, BracketKind::plain, ctx) *
                     br(u + 1.0, BracketKind::star_plain, ctx) *
                     br(u + 1.5, BracketKind::star_plain, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(rho.v * br(u + 1.0, BracketKind::plain, ctx) *
                         br(u + 1.5, BracketKind::plain, ctx) *
                         br(u, BracketKind::star_plain, ctx) *
                         br(u + 0.5, BracketKind::star_plain, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "hc.K-K0";
    r.reference = "K- K0: rho(u) [u]*[u+1] / ([u+1]*[u])";
    r.left = cur("K_minus");
    r.right = cur("K_zero");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx u = u1 - u2;
      Eval rho = rho_ratio(u, ctx);
      if (rho.pole) return rho;
      const cx den =
          br(u + 1.0, BracketKind::star_plain, ctx) * br(u, BracketKind::plain, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(rho.v * br(u, BracketKind::star_plain, ctx) *
                         br(u + 1.0, BracketKind::plain, ctx) / den);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "hc.K0K+";
    r.reference = "K0 K+: rho(u) [u]*[u+1] / ([u+1]*[u])";
    r.left = cur("K_zero");
    r.right = cur("K_plus");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      const cx u = u1 - u2;
      Eval rho = rho_ratio(u, ctx);
      if (rho.pole) return rho;
      const cx den =
          br(u + 1.0, BracketKind::star_plain, ctx) * br(u, BracketKind::plain, ctx);
      if (std::abs(den) < kPoleEps) return Eval::at_pole();
      return Eval::value(rho.v * br(u, BracketKind::star_plain, ctx) *
                         br(u + 1.0, BracketKind::plain, ctx) / den);
    };
    add(std::move(r));
  }

  // ---- vertex operators (free field, c = 1) -----------------------------
  {
    RelationSpec r;
    r.id = "vo.PhiF";
    r.reference = "Phi- F: -[u+1/2] / [u-1/2]";
    r.force_level = 1.0;
    r.left = cur("Phi");
    r.right = cur("F_l1");
    r.claimed = claim_br2(0.5, -0.5, -1.0, false);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PhiE";
    r.reference = "Phi- E = E Phi-  (factor 1)";
    r.force_level = 1.0;
    r.left = cur("Phi");
    r.right = cur("E_l1");
    r.claimed = [](const EllipticContext&, cx, cx) { return Eval::value(cx(1.0)); };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PsiF";
    r.reference = "Psi*- F = F Psi*-  (factor 1)";
    r.force_level = 1.0;
    r.left = cur("PsiStar");
    r.right = cur("F_l1");
    r.claimed = [](const EllipticContext&, cx, cx) { return Eval::value(cx(1.0)); };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PsiE";
    r.reference = "Psi*- E: -[u-1/2]* / [u+1/2]*";
    r.force_level = 1.0;
    r.left = cur("PsiStar");
    r.right = cur("E_l1");
    r.claimed = claim_br2(-0.5, 0.5, -1.0, true);
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PhiPhi.mu";
    r.reference = "Phi-(u1) Phi-(u2) = mu(u2-u1) Phi-(u2) Phi-(u1)";
    r.force_level = 1.0;
    r.left = cur("Phi");
    r.right = cur("Phi");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return mu_fn(u2 - u1, ctx, false);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PsiPsi.mustar";
    r.reference = "Psi*-(u1) Psi*-(u2) = mu*(u1-u2) Psi*-(u2) Psi*-(u1)";
    r.force_level = 1.0;
    r.left = cur("PsiStar");
    r.right = cur("PsiStar");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return mu_star_fn(u1 - u2, ctx);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PhiPsi.chi";
    r.reference = "Phi-(u1) Psi*-(u2) = chi(u1-u2) Psi*-(u2) Phi-(u1)";
    r.force_level = 1.0;
    r.left = cur("Phi");
    r.right = cur("PsiStar");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return chi_fn(u1 - u2, ctx);
    };
    add(std::move(r));
  }
  {
    RelationSpec r;
    r.id = "vo.PhiK-";
    r.reference = "Phi-(u1) K-(u2) = rho+(u2-u1+1/2) K-(u2) Phi-(u1)";
    r.force_level = 1.0;
    r.left = cur("Phi");
    r.right = cur("K_minus");
    r.claimed = [](const EllipticContext& ctx, cx u1, cx u2) {
      return rho_plus(u2 - u1 + 0.5, ctx, false);
    };
    add(std::move(r));
  }

  return v;
}

}  // namespace

const std::vector<RelationSpec>& relation_catalog() {
  static const std::vector<RelationSpec> catalog = build_catalog();
  return catalog;
}

const RelationSpec* find_relation(const std::string& id) {
  for (const auto& r : relation_catalog())
    if (r.id == id) return &r;
  return nullptr;
}

RelationResult verify_relation(const RelationSpec& rel, const EllipticContext& base,
                               int n_samples, int order, Rng& rng,
                               double tol_override) {
  RelationResult res;
  EllipticContext ctx = base;
  if (rel.force_level >= 0.0 && ctx.c != rel.force_level)
    ctx = base.with_level(rel.force_level);
  const double tol = tol_override > 0.0 ? tol_override : ctx.tol;

  const Current L = rel.left(ctx);
  const Current R = rel.right(ctx);

  if (rel.series_kind) {
    const GeomSum fwd = contraction_geom(L, R, ctx);
    const GeomSum bwd = contraction_geom(R, L, ctx);
    auto claimed = [&](const std::function<std::vector<PochFactor>(
                           const EllipticContext&)>& maker) {
      return maker ? log_series_poch(maker(ctx), order, true) : PowerSeries(order);
    };
    const PowerSeries lx = claimed(rel.claimed_x);
    const PowerSeries ly = claimed(rel.claimed_y);
    for (int m = 1; m <= order; ++m) {
      // phi = exp(N_LR(x)) exp(-N_RL(y)): x side carries +N_LR, y side -N_RL
      const double dx = std::abs(rel.perturb * fwd.eval_m(m, ctx.q) / m - lx.a[m].real());
      const double dy = std::abs(rel.perturb * -bwd.eval_m(m, ctx.q) / m - ly.a[m].real());
      const double sx = std::max(1.0, std::abs(lx.a[m]));
      const double sy = std::max(1.0, std::abs(ly.a[m]));
      res.max_residual = std::max(res.max_residual, std::max(dx / sx, dy / sy));
      ++res.n;
    }
    res.pass = res.max_residual < tol;
    return res;
  }

  ExchangeFactor ex = exchange_factor(L, R, ctx);
  if (!ex.valid) {
    res.errored = true;
    res.note = "no scalar exchange for this pair";
    return res;
  }
  int tries = 0;
  while (res.n < n_samples && tries < 80 * n_samples + 200) {
    ++tries;
    const cx u1 = rng.box(0.8, 0.12), u2 = rng.box(0.8, 0.12);
    if (std::abs(u1 - u2) < 0.05) continue;
    Eval comp = ex.eval(u1, u2, ctx);
    Eval want = rel.claimed(ctx, u1, u2);
    if (comp.pole || want.pole) continue;
    const cx cl = rel.perturb * want.v;
    const double scale = std::max(std::abs(comp.v), std::abs(cl));
    if (scale < 1e-8 || scale > 1e10) continue;
    res.max_residual = std::max(res.max_residual, std::abs(comp.v - cl) / scale);
    ++res.n;
  }
  res.pass = (res.n == n_samples) && (res.max_residual < tol);
  if (res.n < n_samples) res.errored = true;
  return res;
}

namespace {

struct AssemblyFactor {
  GeomSum crea, ann;  // a-basis couplings (signs included)
  double shift = 0.0;
  bool inverted = false;
};

// sum_m geom(m)/m ratio^m with a divergence guard
bool sum_contraction(const GeomSum& g, double ratio, double q, double& out) {
  double s = 0.0, prev = 1e300;
  double rm = 1.0;
  for (int m = 1; m <= 4000; ++m) {
    rm *= ratio;
    const double term = g.eval_m(m, q) / m * rm;
    s += term;
    const double a = std::abs(term);
    if (m > 8 && a < 1e-17 * (1.0 + std::abs(s))) {
      out = s;
      return true;
    }
    if (m > 12 && a > prev && a > 1e-8) return false;  // divergent
    prev = a;
  }
  return false;
}

}  // namespace

RelationResult verify_kappa(const EllipticContext& ctx) {
  RelationResult res;
  const Current K = make_current("K", ctx);
  if (K.atoms.size() != 1) {
    res.errored = true;
    return res;
  }
  const GeomSum comm = gs_comm_m(ctx);

  // Reassemble a product K(q^{s1} z)^{e1} ... into normally ordered form:
  // log of the c-number scalar plus combined couplings and word.
  auto assemble = [&](const std::vector<std::pair<double, bool>>& shifts,
                      double& log_scalar, Word& word,
                      std::vector<AssemblyFactor>& fs) -> bool {
    fs.clear();
    word.clear();
    log_scalar = 0.0;
    for (auto [s, inv] : shifts) {
      Current f = make_current("K", ctx).shifted(s);
      if (inv) f = f.inverted();
      AssemblyFactor af;
      af.crea = f.atoms[0].crea;
      af.ann = f.atoms[0].ann;
      af.shift = f.atoms[0].arg_qshift;
      af.inverted = inv;
      fs.push_back(af);
      Word bw = bind_word(f.word, 1, 0.0);
      word.insert(word.end(), bw.begin(), bw.end());
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i; j < fs.size(); ++j) {
        if (i == j && !fs[i].inverted) continue;  // anti-ordering self term
        GeomSum g = fs[i].ann * fs[j].crea * comm;
        g.simplify();
        double csum = 0.0;
        if (!sum_contraction(g, std::pow(ctx.q, fs[j].shift - fs[i].shift), ctx.q,
                             csum))
          return false;
        log_scalar += csum;
      }
    return true;
  };

  // target: combined couplings must equal psi(q^{t} z)
  auto check_route = [&](const std::vector<std::pair<double, bool>>& shifts,
                         double target_shift, cx kappa_formula) -> bool {
    double log_scalar;
    Word word;
    std::vector<AssemblyFactor> fs;
    if (!assemble(shifts, log_scalar, word, fs)) {
      res.errored = true;
      res.note += "divergent contraction sum; ";
      return false;
    }
    // mode content against psi at the target shift
    const Current psi = make_current("psi", ctx).shifted(target_shift);
    for (int m = 1; m <= 12; ++m) {
      double crea = 0.0, ann = 0.0;
      for (const auto& f : fs) {
        crea += f.crea.eval_m(m, ctx.q) * std::pow(ctx.q, f.shift * m);
        ann += f.ann.eval_m(m, ctx.q) * std::pow(ctx.q, -f.shift * m);
      }
      const double tc = psi.atoms[0].crea.eval_m(m, ctx.q) *
                        std::pow(ctx.q, psi.atoms[0].arg_qshift * m);
      const double ta = psi.atoms[0].ann.eval_m(m, ctx.q) *
                        std::pow(ctx.q, -psi.atoms[0].arg_qshift * m);
      const double d = std::max(std::abs(crea - tc) / std::max(1.0, std::abs(tc)),
                                std::abs(ann - ta) / std::max(1.0, std::abs(ta)));
      res.max_residual = std::max(res.max_residual, d);
    }
    // word must normalize to the H-type word with a z-free scalar
    NormalizedWord nw = normalize(word);
    Word target = {WordItem::gen(WordItem::EQ, -1),
                   WordItem::pow(1, target_shift, 1.0 / ctx.r - 1.0 / ctx.r_star,
                                 0.5 / ctx.r)};
    NormalizedWord nt = normalize(target);
    if (!words_equal(nw.canonical, nt.canonical)) {
      res.errored = true;
      res.note += "word mismatch; ";
      return false;
    }
    double zfree = 0.0;
    for (const auto& [slot, e] : nw.scalar.zexp) zfree += std::abs(e);
    res.max_residual = std::max(res.max_residual, zfree);
    const cx wscal = nw.scalar.phase * qpow(ctx.q, cx(nw.scalar.qexp)) /
                     (nt.scalar.phase * qpow(ctx.q, cx(nt.scalar.qexp)));
    const cx kappa_computed = 1.0 / (std::exp(log_scalar) * wscal);
    res.max_residual = std::max(
        res.max_residual, std::abs(kappa_computed - kappa_formula) /
                              std::max(1.0, std::abs(kappa_formula)));
    ++res.n;
    return true;
  };

  const cx kap = kappa_const(ctx);
  const cx kapp = kappa_prime_const(ctx);
  const double r = ctx.r;
  // H(z) = kappa K(qz) K(z)^{-1} K(q^{-1}z)
  check_route({{1.0, false}, {0.0, true}, {-1.0, false}}, 0.0, kap);
  // H(q^r z) = kappa K_-(z)^{-1} K_0(z) = kappa' K_+(qz) K_0(qz)^{-1}
  check_route({{r + 1.0, false}, {r, true}, {r - 1.0, false}}, r, kap);
  check_route({{r - 1.0, false}, {r, true}, {r + 1.0, false}}, r, kapp);

  res.pass = !res.errored && res.max_residual < ctx.tol && res.n == 3;
  return res;
}

RelationResult verify_ef_poles(const EllipticContext& base, int order) {
  RelationResult res;
  EllipticContext ctx = base.c == 1.0 ? base : base.with_level(1.0);
  const Current E = make_current("E_l1", ctx);
  const Current F = make_current("F_l1", ctx);
  GeomSum g = contraction_geom(E, F, ctx);
  const ResummedProduct prod = ResummedProduct::from_geom(g);

  // pole candidates: zeros of denominator factors within the annulus
  std::vector<cx> candidates;
  for (const auto& f : prod.factors) {
    if (f.exponent >= 0.0) continue;
    // (q^{a} x; bases): zeros at x = q^{-a} q^{-sum n b}; keep small n
    std::vector<double> offsets{0.0};
    for (double b : f.base_expos) {
      std::vector<double> next;
      for (double o : offsets)
        for (int n = 0; n <= 2; ++n) next.push_back(o + n * b);
      offsets = std::move(next);
    }
    for (double o : offsets) {
      const double e = -f.arg_expo - o;
      if (std::abs(e) <= 2.5) candidates.push_back(std::pow(ctx.q, e));
    }
  }
  // Newton refinement on 1/phi(x)
  auto inv_phi = [&](cx x) {
    Eval v = prod.eval(x, ctx);
    return v.pole ? cx(0.0) : cx(1.0) / v.v;
  };
  std::vector<cx> found;
  for (cx c0 : candidates) {
    cx x = c0 * (1.0 + 1e-4);
    for (int it = 0; it < 60; ++it) {
      const cx f0 = inv_phi(x);
      const cx h = 1e-7 * (std::abs(x) + 1.0);
      const cx d = (inv_phi(x + h) - inv_phi(x - h)) / (2.0 * h);
      if (std::abs(d) < 1e-300) break;
      const cx step = f0 / d;
      x -= step;
      if (std::abs(step) < 1e-15 * std::abs(x)) break;
    }
    if (std::abs(inv_phi(x)) < 1e-8) found.push_back(x);
  }
  // expect poles exactly at x = z2/z1 = q^{+-c}
  for (double target : {ctx.c, -ctx.c}) {
    const cx want = std::pow(ctx.q, target);
    double best = 1e300;
    for (cx x : found) best = std::min(best, std::abs(x - want));
    res.max_residual = std::max(res.max_residual, best);
    ++res.n;
  }

  // residue mode content: couplings of :E(z1)F(z2): at z1 = q^{+-c} z2
  // against psi at shift +- r
  for (double sgn : {1.0, -1.0}) {
    const double cshift = sgn * ctx.c;  // z1 = q^{cshift} z2
    const Current psi = make_current("psi", ctx).shifted(sgn * ctx.r);
    for (int m = 1; m <= order; ++m) {
      const double crea = E.atoms[0].crea.eval_m(m, ctx.q) *
                              std::pow(ctx.q, cshift * m) +
                          F.atoms[0].crea.eval_m(m, ctx.q);
      const double ann = E.atoms[0].ann.eval_m(m, ctx.q) *
                             std::pow(ctx.q, -cshift * m) +
                         F.atoms[0].ann.eval_m(m, ctx.q);
      const double tc = psi.atoms[0].crea.eval_m(m, ctx.q) *
                        std::pow(ctx.q, psi.atoms[0].arg_qshift * m);
      const double ta = psi.atoms[0].ann.eval_m(m, ctx.q) *
                        std::pow(ctx.q, -psi.atoms[0].arg_qshift * m);
      res.max_residual = std::max(
          res.max_residual, std::abs(crea - tc) / std::max(1.0, std::abs(tc)));
      res.max_residual = std::max(
          res.max_residual, std::abs(ann - ta) / std::max(1.0, std::abs(ta)));
    }
    ++res.n;
  }
  res.pass = res.max_residual < ctx.tol;
  return res;
}

RelationResult verify_double_swap(const EllipticContext& ctx, int n_samples,
                                  Rng& rng) {
  RelationResult res;
  for (const auto& rel : relation_catalog()) {
    EllipticContext c = ctx;
    if (rel.force_level >= 0.0 && c.c != rel.force_level)
      c = ctx.with_level(rel.force_level);
    const Current L = rel.left(c), R = rel.right(c);
    ExchangeFactor lr = exchange_factor(L, R, c);
    ExchangeFactor rl = exchange_factor(R, L, c);
    if (!lr.valid || !rl.valid) continue;
    int done = 0, tries = 0;
    while (done < n_samples && tries < 50 * n_samples + 50) {
      ++tries;
      const cx u1 = rng.box(0.7, 0.1), u2 = rng.box(0.7, 0.1);
      if (std::abs(u1 - u2) < 0.05) continue;
      Eval a = lr.eval(u1, u2, c);
      Eval b = rl.eval(u2, u1, c);
      if (a.pole || b.pole) continue;
      const cx prod = a.v * b.v;
      res.max_residual = std::max(res.max_residual, std::abs(prod - 1.0));
      ++done;
    }
    res.n += done;
  }
  res.pass = res.max_residual < ctx.tol;
  return res;
}

}  // namespace ellq
