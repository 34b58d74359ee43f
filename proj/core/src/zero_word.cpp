#include "ellq/zero_word.hpp"

#include <algorithm>
#include <cmath>

namespace ellq {

cx WordScalar::eval(const EllipticContext& ctx, const std::map<int, cx>& u) const {
  cx v = phase * qpow(ctx.q, cx(qexp));
  for (const auto& [slot, e] : zexp) {
    auto it = u.find(slot);
    if (it == u.end()) continue;
    v *= qpow(ctx.q, 2.0 * it->second * e);
  }
  return v;
}

namespace {

// scalar for swapping adjacent X Y -> Y X; accumulates into ws
void swap_scalar(const WordItem& x, const WordItem& y, WordScalar& ws) {
  auto add_z = [&](int slot, double qs, double e) {
    if (e == 0.0) return;
    ws.zexp[slot] += e;
    ws.qexp += qs * e;
  };
  if (x.kind != WordItem::Pow && y.kind != WordItem::Pow) {
    // e^{A} e^{B} = e^{B} e^{A} e^{[A,B]} with [kQ, l abar] = [kQ, l ahat] = kl pi i
    const bool xq = x.kind == WordItem::EQ;
    const bool yq = y.kind == WordItem::EQ;
    if (xq != yq) {
      const long kl = static_cast<long>(x.count) * y.count;
      if (kl % 2 != 0) ws.phase = -ws.phase;
    }
    return;
  }
  if (x.kind == WordItem::Pow && y.kind == WordItem::Pow) return;  // commute
  // one generator, one power
  const WordItem& g = (x.kind == WordItem::Pow) ? y : x;
  const WordItem& p = (x.kind == WordItem::Pow) ? x : y;
  const bool gen_moves_left = (x.kind == WordItem::Pow);
  if (g.kind == WordItem::EQ && p.p_coef != 0.0) {
    // w^{aP} e^{kQ} = e^{kQ} w^{aP} w^{ak}
    const double e = p.p_coef * g.count;
    add_z(p.slot, p.qshift, gen_moves_left ? e : -e);
  } else if (g.kind == WordItem::EAhat && p.h_coef != 0.0) {
    // w^{bh} e^{k ahat} = e^{k ahat} w^{bh} w^{2bk}
    const double e = 2.0 * p.h_coef * g.count;
    add_z(p.slot, p.qshift, gen_moves_left ? e : -e);
  }
  // EAbar commutes with all powers
}

bool item_less(const WordItem& a, const WordItem& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != WordItem::Pow) return false;
  if (a.slot != b.slot) return a.slot < b.slot;
  return a.qshift < b.qshift - 1e-12;
}

bool same_pow_base(const WordItem& a, const WordItem& b) {
  return a.kind == WordItem::Pow && b.kind == WordItem::Pow && a.slot == b.slot &&
         std::abs(a.qshift - b.qshift) < 1e-12;
}

}  // namespace

NormalizedWord normalize(const Word& w) {
  NormalizedWord out;
  Word v = w;
  // bubble passes: every adjacent swap picks up its rule scalar
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (item_less(v[i + 1], v[i])) {
        swap_scalar(v[i], v[i + 1], out.scalar);
        std::swap(v[i], v[i + 1]);
        moved = true;
      }
    }
  }
  // merge adjacent same-kind items
  Word merged;
  for (const auto& it : v) {
    if (!merged.empty()) {
      WordItem& b = merged.back();
      if (b.kind == it.kind && b.kind != WordItem::Pow) {
        b.count += it.count;
        if (b.count == 0) merged.pop_back();
        continue;
      }
      if (same_pow_base(b, it)) {
        b.p_coef += it.p_coef;
        b.h_coef += it.h_coef;
        b.c0 += it.c0;
        if (std::abs(b.p_coef) + std::abs(b.h_coef) + std::abs(b.c0) < 1e-14)
          merged.pop_back();
        continue;
      }
    }
    merged.push_back(it);
  }
  out.canonical = std::move(merged);
  return out;
}

Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& it : out) {
    it.count = -it.count;
    it.p_coef = -it.p_coef;
    it.h_coef = -it.h_coef;
    it.c0 = -it.c0;
  }
  return out;
}

Word bind_word(const Word& w, int slot, double extra_qshift) {
  Word out = w;
  for (auto& it : out) {
    if (it.kind == WordItem::Pow) {
      it.slot = slot;
      it.qshift += extra_qshift;
    }
  }
  return out;
}

bool words_equal(const Word& a, const Word& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind) return false;
    if (a[i].kind == WordItem::Pow) {
      if (a[i].slot != b[i].slot) return false;
      if (std::abs(a[i].qshift - b[i].qshift) > tol) return false;
      if (std::abs(a[i].p_coef - b[i].p_coef) > tol) return false;
      if (std::abs(a[i].h_coef - b[i].h_coef) > tol) return false;
      if (std::abs(a[i].c0 - b[i].c0) > tol) return false;
    } else if (a[i].count != b[i].count) {
      return false;
    }
  }
  return true;
}

}  // namespace ellq
