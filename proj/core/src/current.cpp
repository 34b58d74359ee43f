#include "ellq/current.hpp"

#include <cmath>
#include <stdexcept>

namespace ellq {

namespace {

double qint(double n, double q) {
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

// alpha_{-m} = ([rm]/[r*m]) q^{cm} a_{-m};  beta_{-m} = q^{cm} a_{-m};
// beta_m = ([r*m]/[rm]) a_m.
GeomSum conv_alpha_crea(const EllipticContext& ctx) {
  GeomSum g = gs_qint(ctx.r, ctx) * gs_inv_qint(ctx.r_star, ctx) * gs_qpow(ctx.c);
  g.simplify();
  return g;
}
GeomSum conv_beta_crea(const EllipticContext& ctx) { return gs_qpow(ctx.c); }
GeomSum conv_beta_ann(const EllipticContext& ctx) {
  GeomSum g = gs_qint(ctx.r_star, ctx) * gs_inv_qint(ctx.r, ctx);
  g.simplify();
  return g;
}

ModeAtom exp_atom(GeomSum crea, GeomSum ann) {
  ModeAtom a;
  crea.simplify();
  ann.simplify();
  a.crea = std::move(crea);
  a.ann = std::move(ann);
  return a;
}

ModeAtom eigen_atom(EigenKind k) {
  ModeAtom a;
  a.eigen = k;
  return a;
}

}  // namespace

double mode_commutator(BosonFamily family, int m, const EllipticContext& ctx) {
  if (m == 0) throw std::invalid_argument("mode_commutator: m = 0");
  const double q = ctx.q;
  const double tmo = qint(2.0 * m, q) - qint(m, q);
  switch (family) {
    case BosonFamily::a:
      return tmo * std::pow(q, -ctx.c * std::abs(m)) * qint(ctx.c * m, q) / m;
    case BosonFamily::alpha:
      return tmo * qint(ctx.c * m, q) * qint(ctx.r * m, q) /
             (m * qint(ctx.r_star * m, q));
    case BosonFamily::beta:
      return tmo * qint(ctx.c * m, q) * qint(ctx.r_star * m, q) /
             (m * qint(ctx.r * m, q));
  }
  return 0.0;
}

GeomSum eigen_response(EigenKind k, const EllipticContext& ctx) {
  GeomSum g;
  switch (k) {
    case EigenKind::x_plus:
      g = gs_tmo(ctx) * gs_qpow(-ctx.c);
      break;
    case EigenKind::x_minus:
      g = gs_tmo(ctx) * (-1.0);
      break;
    case EigenKind::none:
      break;
  }
  g.simplify();
  return g;
}

Current Current::shifted(double qshift) const {
  Current out = *this;
  for (auto& a : out.atoms) a.arg_qshift += qshift;
  for (auto& it : out.word)
    if (it.kind == WordItem::Pow) it.qshift += qshift;
  return out;
}

Current Current::inverted() const {
  Current out;
  out.label = label + "^-1";
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    if (it->eigen != EigenKind::none)
      throw std::logic_error("inverted(): x^{+-} atoms have no inverse here");
    ModeAtom a = *it;
    a.crea = a.crea * -1.0;
    a.ann = a.ann * -1.0;
    a.sign = -a.sign;
    out.atoms.push_back(std::move(a));
  }
  out.word = invert_word(word);
  out.eigen_h_charge = -eigen_h_charge;
  return out;
}

Current Current::operator*(const Current& o) const {
  Current out = *this;
  out.label = label + "*" + o.label;
  out.atoms.insert(out.atoms.end(), o.atoms.begin(), o.atoms.end());
  out.word.insert(out.word.end(), o.word.begin(), o.word.end());
  out.eigen_h_charge += o.eigen_h_charge;
  return out;
}

Current make_current(const std::string& name, const EllipticContext& ctx) {
  const double r = ctx.r, rs = ctx.r_star, c = ctx.c;
  Current cur;
  cur.label = name;

  if (name == "u_plus") {
    cur.atoms.push_back(exp_atom(gs_qpow(r) * gs_inv_qint(rs, ctx), GeomSum{}));
    return cur;
  }
  if (name == "u_minus") {
    cur.atoms.push_back(exp_atom(GeomSum{}, gs_qpow(r) * gs_inv_qint(r, ctx) * -1.0));
    return cur;
  }
  if (name == "psi") {
    cur.atoms.push_back(exp_atom(gs_qpow(c) * gs_inv_qint(rs, ctx),
                                 gs_inv_qint(r, ctx) * -1.0));
    return cur;
  }
  if (name == "x_plus") {
    cur.atoms.push_back(eigen_atom(EigenKind::x_plus));
    cur.eigen_h_charge = 2.0;
    return cur;
  }
  if (name == "x_minus") {
    cur.atoms.push_back(eigen_atom(EigenKind::x_minus));
    cur.eigen_h_charge = -2.0;
    return cur;
  }
  if (name == "k") {
    // k(z) = :exp(-sum g_m alpha_m z^{-m}):,  g_m = [m]/([rm]([2m]-[m]))
    GeomSum g = gs_qint(1.0, ctx) * gs_inv_qint(r, ctx) * gs_inv_tmo(ctx);
    g.simplify();
    cur.atoms.push_back(exp_atom(g * conv_alpha_crea(ctx), g * -1.0));
    return cur;
  }
  if (name == "e") return make_current("u_plus", ctx) * make_current("x_plus", ctx);
  if (name == "f") return make_current("x_minus", ctx) * make_current("u_minus", ctx);

  if (name == "E") {
    // E(z) = e(z) e^{abar} e^{-Q} z^{-P/r*}
    Current out = make_current("e", ctx);
    out.label = "E";
    out.word = {WordItem::gen(WordItem::EAbar, 1), WordItem::gen(WordItem::EQ, -1),
                WordItem::pow(0, 0.0, -1.0 / rs, 0.0)};
    return out;
  }
  if (name == "F") {
    // F(z) = f(z) e^{-abar} z^{P/r + h/2r}
    Current out = make_current("f", ctx);
    out.label = "F";
    out.word = {WordItem::gen(WordItem::EAbar, -1),
                WordItem::pow(0, 0.0, 1.0 / r, 0.5 / r)};
    return out;
  }
  if (name == "K") {
    // K(z) = k(z) e^{-Q} z^{(1/r - 1/r*) P + h/2r}
    Current out = make_current("k", ctx);
    out.label = "K";
    out.word = {WordItem::gen(WordItem::EQ, -1),
                WordItem::pow(0, 0.0, 1.0 / r - 1.0 / rs, 0.5 / r)};
    return out;
  }
  if (name == "K_plus") return make_current("K", ctx).shifted(r - 2.0);
  if (name == "K_zero")
    return make_current("K", ctx).shifted(r).inverted() *
           make_current("K", ctx).shifted(r - 1.0);
  if (name == "K_minus") return make_current("K", ctx).shifted(r + 1.0).inverted();

  if (name == "E_l1") {
    // level 1: E(z) = eps(q) :exp(-sum alpha_m z^{-m}/[m]): e^{ahat}
    //          z^{h/2 + 1/2} e^{-Q} z^{-P/r*}
    GeomSum s = gs_inv_qint(1.0, ctx);
    cur.atoms.push_back(exp_atom(s * conv_alpha_crea(ctx), s * -1.0));
    cur.word = {WordItem::gen(WordItem::EAhat, 1), WordItem::pow(0, 0.0, 0.0, 0.5, 0.5),
                WordItem::gen(WordItem::EQ, -1), WordItem::pow(0, 0.0, -1.0 / rs, 0.0)};
    return cur;
  }
  if (name == "F_l1") {
    // level 1: F(z) = eps(q) :exp(+sum beta_m z^{-m}/[m]): e^{-ahat}
    //          z^{-h/2 + 1/2} z^{P/r + h/2r}
    GeomSum s = gs_inv_qint(1.0, ctx);
    cur.atoms.push_back(
        exp_atom(s * conv_beta_crea(ctx) * -1.0, s * conv_beta_ann(ctx)));
    cur.word = {WordItem::gen(WordItem::EAhat, -1),
                WordItem::pow(0, 0.0, 0.0, -0.5, 0.5),
                WordItem::pow(0, 0.0, 1.0 / r, 0.5 / r)};
    return cur;
  }
  if (name == "Phi") {
    // Phi_-(z) = :exp(-sum beta_m z^{-m}/([2m]-[m])): e^{ahat} z^{h/2+1/2}
    //            z^{-P/r - h/2r - 1/r}
    GeomSum s = gs_inv_tmo(ctx);
    cur.atoms.push_back(
        exp_atom(s * conv_beta_crea(ctx), s * conv_beta_ann(ctx) * -1.0));
    cur.word = {WordItem::gen(WordItem::EAhat, 1), WordItem::pow(0, 0.0, 0.0, 0.5, 0.5),
                WordItem::pow(0, 0.0, -1.0 / r, -0.5 / r, -1.0 / r)};
    return cur;
  }
  if (name == "PsiStar") {
    // Psi*_-(z) = :exp(+sum alpha_m z^{-m}/([2m]-[m])): e^{-ahat} z^{-h/2+1/2}
    //             e^{Q} z^{P/r* + 1/r*}
    GeomSum s = gs_inv_tmo(ctx);
    cur.atoms.push_back(
        exp_atom(s * conv_alpha_crea(ctx) * -1.0, s));
    cur.word = {WordItem::gen(WordItem::EAhat, -1),
                WordItem::pow(0, 0.0, 0.0, -0.5, 0.5), WordItem::gen(WordItem::EQ, 1),
                WordItem::pow(0, 0.0, 1.0 / rs, 0.0, 1.0 / rs)};
    return cur;
  }
  throw std::invalid_argument("make_current: unknown current '" + name + "'");
}

}  // namespace ellq
