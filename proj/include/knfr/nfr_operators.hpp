#pragma once

//==============================================================================
// Modulation-localized bilinear operators and their chronicle-indexed
// multilinear compositions.
//
// Every operator below is a restricted discrete convolution
//
//   out(xi) = h_xi * sum_{xi1+xi2=xi, both modes on grid} factor * v1_hat(xi1) * v2_hat(xi2)
//
// where pairs whose sum leaves the lattice are dropped (sharp truncation, no
// periodic wrap: wrapping would alias spurious resonances into the modulation
// statistics). The restriction predicates compare Phi(xi,xi1,xi2) - alpha
// against a threshold M.
//
// All convolutions run on the symmetric sub-lattice |m| <= n/2 - 1. The
// unpaired mode -n/2 is a DFT artifact with no mirror partner; keeping it out
// of the interaction algebra makes every operator exactly Hermitian on real
// fields.
//
// The deep-level evaluators never call trig in their inner loops: with
// omega(xi) = xi^5 + beta*xi^3 the accumulated modulation telescopes over a
// tree,  mu_tilde_k = sum_{leaves} omega(xi_a) - omega(xi_root),  so the phase
// e^{i tau mu_tilde} factors into one precomputed per-mode phase on each leaf
// plus a conjugate on the root.
//==============================================================================

#include "knfr/state.hpp"
#include "knfr/trees.hpp"

namespace knfr {

enum class BilinearKind {
    N_leq,      // restriction |Phi - alpha| <= M, oscillatory factor e^{itPhi}
    N_dyadic,   // restriction M < |Phi - alpha| <= 2M, oscillatory factor
    I_gt,       // restriction |Phi - alpha| >  M, factor e^{itPhi} / (Phi - alpha)
    I_dyadic,   // restriction M < |Phi - alpha| <= 2M, with the divisor
};

enum class BilinearWeight {
    symbol_xi,  // -i*xi
    weighted_j, // +|xi|^s * |xi_j|^{1-s}, j in {1,2}
};

struct BilinearSpec {
    BilinearKind kind = BilinearKind::N_leq;
    double alpha = 0.0;
    double M = 1.0;  // >= 1
    BilinearWeight weight = BilinearWeight::symbol_xi;
    int j = 1;       // slot carrying the |xi_j|^{1-s} factor (weighted only)
    double s = 0.0;  // regularity used by the weighted symbol

    void validate() const;
};

// Full-state application of one localized bilinear operator.
SpectralState apply_bilinear(const BilinearSpec& spec, const SpectralState& v1,
                             const SpectralState& v2, double t, double beta);

// Single output mode of the same sum; the building block for explicit
// operator compositions whose inner (alpha, M) depend on the outer pair.
Complex bilinear_mode(const BilinearSpec& spec, const SpectralState& v1,
                      const SpectralState& v2, double t, double beta, int out_index);

// sgn(eta)|eta|^s - weighted free convolution with phase e^{itPhi};
// sgn(0)*|0|^s is taken as 0.
SpectralState apply_H(const SpectralState& v1, const SpectralState& v2, double s,
                      double t, double beta);

// Cutoff chain: C_0 keeps |mu_tilde_1| > N; for generations g >= 2 the set
// C_{g-1} keeps |mu_tilde_g| <= (2g+1)^3 * max{|mu_tilde_1|, |mu_tilde_{g-1}|}^{1-delta}.
struct CutoffChain {
    double N = 2.0;      // > 1
    double delta = 0.5;  // in (0, 1)
    int depth = 3;

    void validate() const;
    bool in_c0(double mu_tilde_1) const;
    // Threshold of C_{g-1} given the already-accumulated history, g >= 2.
    double threshold(int g, double abs_mu1, double abs_mu_prev) const;
};

enum class Variant {
    N0,     // boundary terms: level k evaluates on chronicles of k-1 generations
    N1,     // kept small-modulation terms, level k on chronicles of k generations
    N2,     // remainder terms, level k on chronicles of k generations
    Nfull,  // N1 + N2 (no final cutoff), level k on chronicles of k generations
};

// Number of generations the chronicle must have for `variant` at level k.
int chronicle_generations(Variant variant, int k);

// One chronicle's multilinear term at level k. The chronicle depth must
// match chronicle_generations(variant, k).
SpectralState eval_term(const Chronicle& c, Variant variant, int k, const SpectralState& v,
                        double t, const CutoffChain& chain, double beta);

// Sum over all chronicles of the appropriate size. k <= depth bound.
SpectralState eval_level(Variant variant, int k, const SpectralState& v, double t,
                         const CutoffChain& chain, double beta);

inline constexpr int kMaxLevel = 4;

}  // namespace knfr
