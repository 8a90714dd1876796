#include "knfr/nfr_operators.hpp"

#include <array>
#include <cmath>

#include "knfr/parallel.hpp"

namespace knfr {

namespace {

// xi^5 + beta*xi^3: the symbol whose per-mode phases reassemble every
// accumulated modulation through the telescoping identity.
inline double omega(double xi, double beta) {
    double xi2 = xi * xi;
    return xi * xi2 * (xi2 + beta);
}

// Factored modulation function; callers guarantee xi = xi1 + xi2. Grouped
// exactly as in dispersion::phi so the two routes round identically.
inline double phi_on_plane(double xi, double xi1, double xi2, double beta) {
    return -xi * (xi1 * xi2) * (5.0 * ((xi1 * xi1 + xi2 * xi2) + xi1 * xi2) + 3.0 * beta);
}

std::vector<Complex> mode_phases(const FrequencyGrid& grid, double t, double beta) {
    std::vector<Complex> p(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        double theta = t * omega(grid.xi(i), beta);
        p[i] = Complex(std::cos(theta), std::sin(theta));
    }
    return p;
}

inline bool band_ok(BilinearKind kind, double deviation, double M) {
    double a = std::fabs(deviation);
    switch (kind) {
        case BilinearKind::N_leq: return a <= M;
        case BilinearKind::I_gt: return a > M;
        case BilinearKind::N_dyadic:
        case BilinearKind::I_dyadic: return a > M && a <= 2.0 * M;
    }
    return false;
}

inline bool has_divisor(BilinearKind kind) {
    return kind == BilinearKind::I_gt || kind == BilinearKind::I_dyadic;
}

inline double weight_value(const BilinearSpec& spec, double xi, double xi1, double xi2) {
    if (spec.weight == BilinearWeight::symbol_xi) return xi;  // the -i is applied outside
    double xij = (spec.j == 1) ? xi1 : xi2;
    double a = std::pow(std::fabs(xi), spec.s);
    double b = std::pow(std::fabs(xij), 1.0 - spec.s);
    return a * b;
}

}  // namespace

void BilinearSpec::validate() const {
    if (!(M >= 1.0)) throw Error("BilinearSpec: M must be >= 1");
    if (weight == BilinearWeight::weighted_j && j != 1 && j != 2)
        throw Error("BilinearSpec: weighted slot j must be 1 or 2");
    if (weight == BilinearWeight::weighted_j && s < 0.0)
        throw Error("BilinearSpec: weighted symbol needs s >= 0");
}

// The interaction algebra lives on the symmetric sub-lattice |m| <= n/2 - 1:
// the unpaired mode -n/2 takes no part in any restricted convolution (as
// input, output, or internal split), which keeps every operator exactly
// Hermitian-compatible on real fields. It still rides along through the
// linear flow and the transforms.
Complex bilinear_mode(const BilinearSpec& spec, const SpectralState& v1,
                      const SpectralState& v2, double t, double beta, int out_index) {
    const FrequencyGrid& g = v1.grid;
    const int half = g.n / 2;
    const double h = g.h_xi();
    const int mb = g.mode(out_index);
    if (mb == -half) return Complex(0.0, 0.0);
    const double xi = mb * h;

    Complex acc(0.0, 0.0);
    int lo = std::max(-half + 1, mb - half + 1);
    int hi = std::min(half - 1, mb + half - 1);
    for (int m1 = lo; m1 <= hi; ++m1) {
        int m2 = mb - m1;
        double xi1 = m1 * h, xi2 = m2 * h;
        double mu = phi_on_plane(xi, xi1, xi2, beta);
        double d = mu - spec.alpha;
        if (!band_ok(spec.kind, d, spec.M)) continue;
        double w = weight_value(spec, xi, xi1, xi2);
        if (has_divisor(spec.kind)) w /= d;
        double theta = t * mu;
        Complex phase(std::cos(theta), std::sin(theta));
        acc += w * phase * v1.coeffs[m1 + half] * v2.coeffs[m2 + half];
    }
    acc *= h;
    if (spec.weight == BilinearWeight::symbol_xi) acc *= Complex(0.0, -1.0);
    return acc;
}

SpectralState apply_bilinear(const BilinearSpec& spec, const SpectralState& v1,
                             const SpectralState& v2, double t, double beta) {
    spec.validate();
    if (v1.grid != v2.grid) throw Error("apply_bilinear: grid mismatch");
    const FrequencyGrid& g = v1.grid;
    SpectralState out(g);
    // a shifted restriction |Phi - alpha| is not mirror-symmetric, so the
    // standalone operator preserves reality only at alpha = 0
    out.reality_flag = v1.reality_flag && v2.reality_flag && spec.alpha == 0.0;

    std::vector<Complex> P = mode_phases(g, t, beta);
    const int half = g.n / 2;
    const double h = g.h_xi();

    parallel_for_each(static_cast<std::size_t>(g.n), [&](std::size_t idx) {
        const int mb = g.mode(static_cast<int>(idx));
        if (mb == -half) return;  // off the symmetric sub-lattice
        const double xi = mb * h;
        Complex acc(0.0, 0.0);
        int lo = std::max(-half + 1, mb - half + 1);
        int hi = std::min(half - 1, mb + half - 1);
        for (int m1 = lo; m1 <= hi; ++m1) {
            int m2 = mb - m1;
            double xi1 = m1 * h, xi2 = m2 * h;
            double mu = phi_on_plane(xi, xi1, xi2, beta);
            double d = mu - spec.alpha;
            if (!band_ok(spec.kind, d, spec.M)) continue;
            double w = weight_value(spec, xi, xi1, xi2);
            if (has_divisor(spec.kind)) w /= d;
            // e^{itPhi} = P[xi1] * P[xi2] * conj(P[xi])
            acc += w * P[m1 + half] * P[m2 + half] * v1.coeffs[m1 + half] * v2.coeffs[m2 + half];
        }
        acc *= h * std::conj(P[idx]);
        if (spec.weight == BilinearWeight::symbol_xi) acc *= Complex(0.0, -1.0);
        out.coeffs[idx] = acc;
    });
    return out;
}

SpectralState apply_H(const SpectralState& v1, const SpectralState& v2, double s,
                      double t, double beta) {
    if (v1.grid != v2.grid) throw Error("apply_H: grid mismatch");
    if (s < 0.0) throw Error("apply_H: s must be >= 0");
    const FrequencyGrid& g = v1.grid;
    SpectralState out(g);

    std::vector<Complex> P = mode_phases(g, t, beta);
    const int half = g.n / 2;
    const double h = g.h_xi();

    parallel_for_each(static_cast<std::size_t>(g.n), [&](std::size_t idx) {
        const int mb = g.mode(static_cast<int>(idx));
        if (mb == 0 || mb == -half) {
            out.coeffs[idx] = Complex(0.0, 0.0);  // sgn(0)|0|^s = 0; -n/2 unpaired
            return;
        }
        const double eta = mb * h;
        const double w = (eta > 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(eta), s);
        Complex acc(0.0, 0.0);
        int lo = std::max(-half + 1, mb - half + 1);
        int hi = std::min(half - 1, mb + half - 1);
        for (int m1 = lo; m1 <= hi; ++m1) {
            int m2 = mb - m1;
            acc += P[m1 + half] * P[m2 + half] * v1.coeffs[m1 + half] * v2.coeffs[m2 + half];
        }
        out.coeffs[idx] = w * h * acc * std::conj(P[idx]);
    });
    return out;
}

void CutoffChain::validate() const {
    if (!(N > 1.0)) throw Error("CutoffChain: N must exceed 1");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("CutoffChain: delta must lie in (0,1)");
}

bool CutoffChain::in_c0(double mu_tilde_1) const { return std::fabs(mu_tilde_1) > N; }

double CutoffChain::threshold(int g, double abs_mu1, double abs_mu_prev) const {
    double base = 2.0 * g + 1.0;
    return base * base * base * std::pow(std::fmax(abs_mu1, abs_mu_prev), 1.0 - delta);
}

int chronicle_generations(Variant variant, int k) {
    if (variant == Variant::N0) {
        if (k < 2) throw Error("eval: N0 requires level k >= 2");
        return k - 1;
    }
    if (k < 1) throw Error("eval: level k must be >= 1");
    return k;
}

namespace {

enum class GenCheck { none, c0, not_c0, cutoff_in, cutoff_out };

struct TermPlan {
    int gens = 0;
    std::array<int, kMaxLevel> split_node{};
    std::array<int, kMaxLevel> left_child{};
    std::array<int, kMaxLevel> right_child{};
    std::array<bool, kMaxLevel> left_is_leaf{};
    std::array<bool, kMaxLevel> right_is_leaf{};
    std::array<GenCheck, kMaxLevel> check{};
    std::array<bool, kMaxLevel> divisor{};
};

TermPlan make_plan(const Chronicle& c, Variant variant, int k) {
    int gens = chronicle_generations(variant, k);
    if (c.generations() != gens)
        throw Error("eval_term: chronicle depth does not match variant/level");
    TermPlan plan;
    plan.gens = gens;
    for (int g = 1; g <= gens; ++g) {
        GenerationTriple tri = generation_nodes(c, g);
        plan.split_node[g - 1] = tri.node;
        plan.left_child[g - 1] = tri.left;
        plan.right_child[g - 1] = tri.right;
        plan.left_is_leaf[g - 1] = c.tree.nodes[tri.left].is_terminal();
        plan.right_is_leaf[g - 1] = c.tree.nodes[tri.right].is_terminal();

        GenCheck check = GenCheck::none;
        if (g == 1) {
            if (variant == Variant::N0 || k >= 2)
                check = GenCheck::c0;
            else if (variant == Variant::N1)
                check = GenCheck::not_c0;
            else if (variant == Variant::N2)
                check = GenCheck::c0;
        } else if (g < gens) {
            check = GenCheck::cutoff_out;
        } else {  // final generation
            switch (variant) {
                case Variant::N0: check = GenCheck::cutoff_out; break;
                case Variant::N1: check = GenCheck::cutoff_in; break;
                case Variant::N2: check = GenCheck::cutoff_out; break;
                case Variant::Nfull: check = GenCheck::none; break;
            }
        }
        plan.check[g - 1] = check;
        // Divisors i*mu_tilde_j run over j = 1..k-1: every generation for N0,
        // all but the last otherwise.
        plan.divisor[g - 1] = (variant == Variant::N0) ? true : (g < gens);
    }
    return plan;
}

struct TermEvaluator {
    const TermPlan* plan;
    const CutoffChain* chain;
    const Complex* leaf_values;  // phase-folded v: e^{it omega(xi)} v_hat(xi)
    double h_xi;
    int half;
    double beta;

    std::array<int, 2 * kMaxLevel + 1> modes{};
    double abs_mu1 = 0.0;
    Complex acc{0.0, 0.0};

    inline bool passes(GenCheck check, double mu_tilde, double thr) const {
        switch (check) {
            case GenCheck::none: return true;
            case GenCheck::c0: return std::fabs(mu_tilde) > chain->N;
            case GenCheck::not_c0: return std::fabs(mu_tilde) <= chain->N;
            case GenCheck::cutoff_in: return std::fabs(mu_tilde) <= thr;
            case GenCheck::cutoff_out: return std::fabs(mu_tilde) > thr;
        }
        return false;
    }

    void descend(int g, double mu_prev, double prod_xi, double prod_mu, Complex leaf) {
        const int gi = g - 1;
        const int b = plan->split_node[gi];
        const int mb = modes[b];
        if (mb == 0) return;  // the i*xi^{(g)} weight vanishes
        const double xib = mb * h_xi;
        prod_xi *= xib;

        const GenCheck check = plan->check[gi];
        double thr = 0.0;
        if (check == GenCheck::cutoff_in || check == GenCheck::cutoff_out)
            thr = chain->threshold(g, abs_mu1, std::fabs(mu_prev));

        const int lo = std::max(-half + 1, mb - half + 1);
        const int hi = std::min(half - 1, mb + half - 1);
        const int G = plan->gens;

        if (g == G && !plan->divisor[gi]) {
            // Hot path: last generation of N1/N2/Nfull. Both children are
            // final leaves and the divisor product is already complete.
            const double ratio = prod_xi / prod_mu;
            Complex local(0.0, 0.0);
            for (int m1 = lo; m1 <= hi; ++m1) {
                const int m2 = mb - m1;
                const double xi1 = m1 * h_xi, xi2 = m2 * h_xi;
                const double mu_tilde = mu_prev + phi_on_plane(xib, xi1, xi2, beta);
                if (!passes(check, mu_tilde, thr)) continue;
                local += leaf_values[m1 + half] * leaf_values[m2 + half];
            }
            acc += ratio * (leaf * local);
            return;
        }

        for (int m1 = lo; m1 <= hi; ++m1) {
            const int m2 = mb - m1;
            const double xi1 = m1 * h_xi, xi2 = m2 * h_xi;
            const double mu_tilde = mu_prev + phi_on_plane(xib, xi1, xi2, beta);
            if (!passes(check, mu_tilde, thr)) continue;

            double next_prod_mu = plan->divisor[gi] ? prod_mu * mu_tilde : prod_mu;
            Complex lf = leaf;
            if (plan->left_is_leaf[gi]) lf *= leaf_values[m1 + half];
            if (plan->right_is_leaf[gi]) lf *= leaf_values[m2 + half];

            if (g == G) {
                acc += (prod_xi / next_prod_mu) * lf;
            } else {
                modes[plan->left_child[gi]] = m1;
                modes[plan->right_child[gi]] = m2;
                if (g == 1) abs_mu1 = std::fabs(mu_tilde);
                descend(g + 1, mu_tilde, prod_xi, next_prod_mu, lf);
            }
        }
    }
};

void accumulate_term(const TermPlan& plan, const CutoffChain& chain, const SpectralState& v,
                     const std::vector<Complex>& P, const std::vector<Complex>& folded,
                     double beta, SpectralState& out) {
    const FrequencyGrid& g = v.grid;
    const int half = g.n / 2;
    // prefactor: -i^{gens} / i^{#divisors};  gens - divisors is 1 except for
    // N0 where the counts match.
    int div_count = 0;
    for (int j = 0; j < plan.gens; ++j) div_count += plan.divisor[j] ? 1 : 0;
    Complex prefactor = (plan.gens == div_count) ? Complex(-1.0, 0.0) : Complex(0.0, -1.0);
    double scale = std::pow(g.h_xi(), plan.gens);

    parallel_for_each(static_cast<std::size_t>(g.n), [&](std::size_t idx) {
        const int root_mode = g.mode(static_cast<int>(idx));
        if (root_mode == -half) return;  // off the symmetric sub-lattice
        TermEvaluator ev;
        ev.plan = &plan;
        ev.chain = &chain;
        ev.leaf_values = folded.data();
        ev.h_xi = g.h_xi();
        ev.half = half;
        ev.beta = beta;
        ev.modes[0] = root_mode;
        ev.descend(1, 0.0, 1.0, 1.0, Complex(1.0, 0.0));
        out.coeffs[idx] += prefactor * scale * std::conj(P[idx]) * ev.acc;
    });
}

std::vector<Complex> fold_phases(const SpectralState& v, const std::vector<Complex>& P) {
    std::vector<Complex> folded(v.coeffs.size());
    for (std::size_t i = 0; i < folded.size(); ++i) folded[i] = P[i] * v.coeffs[i];
    return folded;
}

}  // namespace

SpectralState eval_term(const Chronicle& c, Variant variant, int k, const SpectralState& v,
                        double t, const CutoffChain& chain, double beta) {
    chain.validate();
    if (!v.valid()) throw Error("eval_term: invalid state");
    TermPlan plan = make_plan(c, variant, k);
    std::vector<Complex> P = mode_phases(v.grid, t, beta);
    std::vector<Complex> folded = fold_phases(v, P);
    SpectralState out(v.grid);
    out.reality_flag = v.reality_flag;
    accumulate_term(plan, chain, v, P, folded, beta, out);
    return out;
}

SpectralState eval_level(Variant variant, int k, const SpectralState& v, double t,
                         const CutoffChain& chain, double beta) {
    chain.validate();
    if (!v.valid()) throw Error("eval_level: invalid state");
    if (k > kMaxLevel) throw Error("eval_level: level exceeds configured depth bound");
    int gens = chronicle_generations(variant, k);
    std::vector<Chronicle> chronicles = enumerate_chronicles(gens);
    std::vector<TermPlan> plans;
    plans.reserve(chronicles.size());
    for (const Chronicle& c : chronicles) plans.push_back(make_plan(c, variant, k));

    std::vector<Complex> P = mode_phases(v.grid, t, beta);
    std::vector<Complex> folded = fold_phases(v, P);
    SpectralState out(v.grid);
    out.reality_flag = v.reality_flag;
    for (const TermPlan& plan : plans) accumulate_term(plan, chain, v, P, folded, beta, out);
    return out;
}

}  // namespace knfr
