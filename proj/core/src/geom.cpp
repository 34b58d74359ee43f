#include "ellq/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ellq {

GeomSum& GeomSum::operator+=(const GeomSum& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

GeomSum GeomSum::operator*(const GeomSum& o) const {
  GeomSum out;
  out.terms.reserve(terms.size() * o.terms.size());
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      GeomTerm t;
      t.coeff = a.coeff * b.coeff;
      t.expo = a.expo + b.expo;
      t.base_expos = a.base_expos;
      t.base_expos.insert(t.base_expos.end(), b.base_expos.begin(),
                          b.base_expos.end());
      out.terms.push_back(std::move(t));
    }
  return out;
}

GeomSum GeomSum::operator*(double s) const {
  GeomSum out = *this;
  for (auto& t : out.terms) t.coeff *= s;
  return out;
}

void GeomSum::simplify(double drop_below) {
  for (auto& t : terms) std::sort(t.base_expos.begin(), t.base_expos.end());
  std::sort(terms.begin(), terms.end(), [](const GeomTerm& a, const GeomTerm& b) {
    if (std::abs(a.expo - b.expo) > 1e-11) return a.expo < b.expo;
    return a.base_expos < b.base_expos;
  });
  std::vector<GeomTerm> out;
  for (const auto& t : terms) {
    bool merged = false;
    if (!out.empty()) {
      GeomTerm& b = out.back();
      if (std::abs(b.expo - t.expo) < 1e-11 &&
          b.base_expos.size() == t.base_expos.size()) {
        bool same = true;
        for (std::size_t i = 0; i < b.base_expos.size(); ++i)
          if (std::abs(b.base_expos[i] - t.base_expos[i]) > 1e-11) same = false;
        if (same) {
          b.coeff += t.coeff;
          merged = true;
        }
      }
    }
    if (!merged) out.push_back(t);
  }
  terms.clear();
  for (auto& t : out)
    if (std::abs(t.coeff) > drop_below) terms.push_back(std::move(t));
}

double GeomSum::eval_m(int m, double q) const {
  double s = 0.0;
  for (const auto& t : terms) {
    double v = t.coeff * std::pow(q, t.expo * m);
    for (double b : t.base_expos) v /= (1.0 - std::pow(q, b * m));
    s += v;
  }
  return s;
}

GeomSum gs_qpow(double a) {
  GeomSum g;
  g.terms.push_back({1.0, a, {}});
  return g;
}

GeomSum gs_qint(double a, const EllipticContext& ctx) {
  const double d = ctx.q - 1.0 / ctx.q;
  GeomSum g;
  g.terms.push_back({1.0 / d, a, {}});
  g.terms.push_back({-1.0 / d, -a, {}});
  return g;
}

GeomSum gs_inv_qint(double a, const EllipticContext& ctx) {
  if (a == 0.0) throw std::invalid_argument("gs_inv_qint: a = 0");
  const double d = ctx.q - 1.0 / ctx.q;
  const double s = a > 0 ? 1.0 : -1.0;   // [-v] = -[v]
  const double aa = std::abs(a);
  // 1/[a m] = -(q - 1/q) q^{a m} / (1 - q^{2 a m})   for a > 0
  GeomSum g;
  g.terms.push_back({-s * d, aa, {2.0 * aa}});
  return g;
}

GeomSum gs_tmo(const EllipticContext& ctx) {
  const double d = ctx.q - 1.0 / ctx.q;
  GeomSum g;
  g.terms.push_back({1.0 / d, 2.0, {}});
  g.terms.push_back({-1.0 / d, -2.0, {}});
  g.terms.push_back({-1.0 / d, 1.0, {}});
  g.terms.push_back({1.0 / d, -1.0, {}});
  return g;
}

GeomSum gs_inv_tmo(const EllipticContext& ctx) {
  // 1/([2m]-[m]) = -(q - 1/q) (q^{2m} - q^{5m}) / ((1-q^m)(1-q^{6m}))
  const double d = ctx.q - 1.0 / ctx.q;
  GeomSum g;
  g.terms.push_back({-d, 2.0, {1.0, 6.0}});
  g.terms.push_back({d, 5.0, {1.0, 6.0}});
  return g;
}

GeomSum gs_comm_m(const EllipticContext& ctx) {
  GeomSum g = gs_tmo(ctx) * gs_qpow(-ctx.c) * gs_qint(ctx.c, ctx);
  g.simplify();
  return g;
}

}  // namespace ellq
