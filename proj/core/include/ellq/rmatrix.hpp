#pragma once

#include <array>
#include <vector>

#include "ellq/context.hpp"
#include "ellq/qseries.hpp"
#include "ellq/rng.hpp"

namespace ellq {

/// Basis labels for C^3: index 0,1,2 <-> v_+, v_0, v_- with weights +1,0,-1
/// (half-eigenvalues of diag(2,0,-2)).
inline int weight_of(int i) { return 1 - i; }

/// Pair index in the ordered tensor basis (v_a (x) v_b) -> 3a + b.
inline int pair_index(int a, int b) { return 3 * a + b; }

/// One 9x9 sample of the dynamical R-matrix. `m` stores the action matrix
/// exactly as displayed: m[out * 9 + in] is the entry R_{out-pair}^{in-pair},
/// rows indexed by the lower (output) pair. With this reading the dynamical
/// Yang-Baxter equation holds with the shift s -> s + (slot weight).
struct RMatrixSample {
  cx u{};
  cx s{};
  bool starred = false;
  bool pole = false;
  std::array<cx, 81> m{};

  cx at(int out, int in) const { return m[out * 9 + in]; }
  cx& at(int out, int in) { return m[out * 9 + in]; }
};

/// Symbolic form of one R-matrix entry: a sum of signed bracket ratios with
/// arguments linear in (u, s). Used for evaluation and for composing the
/// quasi-periodicity multipliers.
struct RBracket {
  double cu = 0.0, cs = 0.0, c0 = 0.0;  // argument cu*u + cs*s + c0
  bool plus = false;
};
struct RTerm {
  double coef = 1.0;
  std::vector<RBracket> num, den;
};
using REntry = std::vector<RTerm>;

/// Symbolic entry R_{ab}^{cd}; empty entry == structural zero.
const REntry& rbar_entry(int a, int b, int c, int d);

/// Evaluate one symbolic entry at (u, s); starred flips every bracket kind.
Eval rbar_entry_value(const REntry& e, cx u, cx s, const EllipticContext& ctx,
                      bool starred);

/// The 9x9 matrix \bar R(u, s); entries outside the weight-conserving block
/// pattern are exact zeros, never computed.
RMatrixSample rbar(cx u, cx s, const EllipticContext& ctx, bool starred = false);

/// R^+(u, s) = rho^+(u) \bar R(u, s) (starred: rho^{+*} and star brackets).
RMatrixSample r_plus(cx u, cx s, const EllipticContext& ctx, bool starred = false);

/// Trigonometric R-matrix of the q -> fixed, p -> 0 degeneration:
/// returns \bar R_VV(z); multiply by rho_vv for R_VV = rho_VV \bar R_VV.
RMatrixSample trig_rbar_vv(cx z, double q, const EllipticContext& ctx);

struct DybeResult {
  double max_residual = 0.0;
  int n = 0;
  bool pass = false;
  double sigma = 0.0;  // dynamical shift per unit slot weight
};

/// Both sides of the dynamical Yang-Baxter equation on C^3 (x) C^3 (x) C^3,
/// with the dynamical parameter shifted by sigma * (slot weight). When
/// use_rho is set the scalar rho^+ is included (it cancels between sides).
DybeResult check_dybe(const EllipticContext& ctx, double sigma, int n_samples,
                      Rng& rng, bool use_rho, double tol);

/// Sweeps sigma over {±1/2, ±1, ±2}; passes iff exactly one convention
/// satisfies the DYBE, and reports it.
struct DybeSweepResult {
  double selected_sigma = 0.0;
  int n_passing = 0;
  double best_residual = 1.0;
  bool pass = false;
};
DybeSweepResult dybe_sweep(const EllipticContext& ctx, int n_samples, Rng& rng,
                           double tol);

struct BlockCheckResult {
  double max_residual = 0.0;
  int n = 0;
  bool pass = false;
};

/// The two solved 2x2 blocks of the twistor equation against the main
/// R-matrix entries, up to the diagonal gauge e^{±pi i u / r}.
BlockCheckResult check_2x2_blocks(const EllipticContext& ctx, int n_samples,
                                  Rng& rng, bool drop_gauge = false);

enum class RShift { u_plus_r, s_plus_r, u_plus_rtau };

/// Every nonzero entry against the multiplier predicted by composing the
/// bracket quasi-periodicity laws through the entry's formula.
BlockCheckResult check_r_quasi_periodicity(const EllipticContext& ctx,
                                           RShift shift, int n_samples, Rng& rng);

/// Sample (u, s) away from the bracket zeros in the entry denominators.
bool rmatrix_sample_ok(cx u, cx s, const EllipticContext& ctx, bool starred);

}  // namespace ellq
