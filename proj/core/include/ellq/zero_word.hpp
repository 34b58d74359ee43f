#pragma once

#include <map>
#include <vector>

#include "ellq/context.hpp"

namespace ellq {

/// Zero-mode word items. Exchange rules are generated by
///   [P,Q] = 1, [Q,abar] = pi i, [P,abar] = 0,
///   [h,ahat] = 2, [P,ahat] = 0, [Q,ahat] = pi i,
/// with abar, ahat commuting among themselves and with h resp. P.
struct WordItem {
  enum Kind { EAbar = 0, EAhat = 1, EQ = 2, Pow = 3 };
  Kind kind = EQ;
  int count = 0;  // exponential generators e^{count * gen}

  // Pow: (q^{qshift} z_slot)^{p_coef * P + h_coef * h + c0}
  int slot = 0;
  double qshift = 0.0;
  double p_coef = 0.0, h_coef = 0.0, c0 = 0.0;

  static WordItem gen(Kind k, int n) {
    WordItem w;
    w.kind = k;
    w.count = n;
    return w;
  }
  static WordItem pow(int slot, double qshift, double p_coef, double h_coef,
                      double c0 = 0.0) {
    WordItem w;
    w.kind = Pow;
    w.slot = slot;
    w.qshift = qshift;
    w.p_coef = p_coef;
    w.h_coef = h_coef;
    w.c0 = c0;
    return w;
  }
};

using Word = std::vector<WordItem>;

/// Scalar produced by word normalization: a complex phase together with
/// accumulated powers of each slot argument (z_slot^{zexp} and matching
/// q^{qshift * zexp} folded into `phase` lazily at evaluation).
struct WordScalar {
  cx phase{1.0, 0.0};
  std::map<int, double> zexp;  // slot -> exponent of z_slot
  double qexp = 0.0;           // exponent of q from shifted arguments

  /// Evaluate with z_slot = q^{2 u_slot}; fractional powers take the
  /// principal branch through u.
  cx eval(const EllipticContext& ctx, const std::map<int, cx>& u) const;
};

struct NormalizedWord {
  WordScalar scalar;
  Word canonical;
};

/// Bring a word to canonical order (abar, ahat, Q, then powers sorted and
/// merged), accumulating all swap scalars. Idempotent on its own output.
NormalizedWord normalize(const Word& w);

/// Reverse with negated exponents: the word of an inverted current.
Word invert_word(const Word& w);

/// Rebind the slot of every Pow item (used when a current template is placed
/// at a concrete argument slot) and add an argument shift q^{extra} z.
Word bind_word(const Word& w, int slot, double extra_qshift);

bool words_equal(const Word& a, const Word& b, double tol = 1e-9);

}  // namespace ellq
