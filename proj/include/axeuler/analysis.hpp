#pragma once
// Proof-side diagnostics: the G transform and v = vtilde + G decomposition,
// specific vorticity, Riemann invariants, the recursive time-derivative table
// driving Gamma^a = dt^{a1} S^{a2} evaluation (S = t dt + r dr), light-cone
// cutoffs, the ghost weight e^{q(r-t)} with q'(s) = <s>^{-5/4}, the weighted
// energies E_k / X_k / Y_k / W_k, the order-zero ghost energy audit, and
// log-log decay fitting.

#include "axeuler/dynamics.hpp"
#include "axeuler/ledger.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace axeuler {

// ---------------------------------------------------------------- cutoffs

// chi0 = 1 for s <= 1/4, 0 for s >= 1/2 (cubic smoothstep between),
// chi1 = 1 - chi0, evaluated at s = r/<t>.
struct CutoffPair {
    double t = 0.0;
    RadialField chi0, chi1;
};

double smoothstep_cubic(double u);
double chi0_of_s(double s);
CutoffPair cutoffs(const GridPtr& g, double t);

inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }

// ------------------------------------------------------------ ghost weight

// q(s) = -int_s^inf <sigma>^{-5/4} dsigma: q <= 0, increasing, q(inf) = 0.
// Cubic-Hermite table on |s| <= 1e4 (exact q' at the nodes), asymptotic
// series beyond.
double ghost_q(double s);
double ghost_qprime(double s);

struct GhostWeight {
    double t = 0.0;
    RadialField q;       // q(r_j - t)
    RadialField qprime;  // <r_j - t>^{-5/4}
};

GhostWeight ghost_weight(const GridPtr& g, double t);

// ------------------------------------------------------- derivative table

inline constexpr int kMaxDerivOrder = 2;

// entries[k] = dt^k of each field, k = 0..K; entry k+1 is the analytic time
// derivative of the evolution equations applied to entries <= k with d/dr
// realized by ddr. G is the transform field (zero for polytropic states),
// vt = p - G, w the specific vorticity.
struct DerivativeTable {
    GridPtr grid;
    EosSpec eos;
    double t = 0.0;
    int K = 0;
    std::vector<RadialField> p, f, g, G, vt, w;
    void scale_all(double c);
};

DerivativeTable build_derivative_table(const FieldState& s, const EosSpec& eos, int K);

enum class TableField { P, F, Gfield, GTransform, VTilde, Vorticity };

struct MultiIndex {
    int dt = 0;  // a1: time derivatives (outermost)
    int s = 0;   // a2: scaling fields S
    int order() const { return dt + s; }
};

std::vector<MultiIndex> multi_indices_up_to(int k);

// Gamma^a phi together with its remaining time derivatives:
// d[j] = dt^j Gamma^a phi for j = 0..K-|a|.
struct GammaSeq {
    double t = 0.0;
    std::vector<RadialField> d;
};

GammaSeq gamma_seq(const DerivativeTable& tab, TableField fid, MultiIndex a);
RadialField gamma_apply(const DerivativeTable& tab, TableField fid, MultiIndex a);

// ------------------------------------------------------------ transforms

// G(t,r) = int_r^inf g^2 / ((1+v) r') dr' (right-to-left cumulative
// trapezoid; exactly zero beyond the support of g). Chaplygin states only.
RadialField compute_G(const FieldState& s);

// (vtilde, G) with vtilde = v - G.
std::pair<RadialField, RadialField> decompose_v(const FieldState& s);

// w = (1/rho)(d/dr + 1/r) g; rho from the state variable per EOS.
RadialField specific_vorticity(const FieldState& s, const EosSpec& eos);

// Z_pm = f +- c_dot (polytropic only).
std::pair<RadialField, RadialField> riemann_invariants(const FieldState& s, const EosSpec& eos);

// Quadratic forms of the Chaplygin system, in the direct and null-form
// arrangements (equal up to round-off).
RadialField q1_direct(const FieldState& s);
RadialField q2_direct(const FieldState& s);
RadialField q1_null_form(const FieldState& s);
RadialField q2_null_form(const FieldState& s);

// -------------------------------------------------------------- energies

double energy_E(const DerivativeTable& tab, int k);
double energy_X(const DerivativeTable& tab, const CutoffPair& cut, int k);
double energy_Y(const DerivativeTable& tab, const CutoffPair& cut, int k);
double vorticity_W(const DerivativeTable& tab, int k);

// Truncated data-size functional of (rho0 - 1, f0, g0).
double data_size_epsilon(const FieldState& initial, const RadialField& rho0, int N_trunc);

// ---------------------------------------------------------------- audits

double mass_perturbation(const FieldState& s, const EosSpec& eos);

struct GhostAuditRow {
    double t = 0.0;
    double residual = 0.0;  // normalized by the largest constituent term
};

// Order-zero ghost energy identity residual, centered at `cur` using the
// bracketing states for the time derivative.
double ghost_residual_centered(const FieldState& prev, const FieldState& cur,
                               const FieldState& next);

// Residuals at the interior snapshot times (needs >= 3 snapshots).
std::vector<GhostAuditRow> ghost_energy_audit(const std::vector<FieldState>& snapshots,
                                              const EosSpec& eos);

// ------------------------------------------------------------- decay fit

struct FitResult {
    double exponent = 0.0;
    double r_squared = 0.0;
    int n_used = 0;
    int n_excluded = 0;  // nonpositive values dropped
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FitResult fit_decay(const std::vector<std::pair<double, double>>& series,
                    double t_lo, double t_hi);

// --------------------------------------------------------- ledger rows

// Evaluates every ledger column at the state's time; ghost_residual is
// supplied by the caller (it needs bracketing states).
LedgerRow compute_ledger_row(const FieldState& s, const EosSpec& eos, int K,
                             double ghost_residual);

} // namespace axeuler
