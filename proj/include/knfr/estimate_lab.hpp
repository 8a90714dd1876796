#pragma once

//==============================================================================
// Numerical verification harness for the multilinear estimates: operator-norm
// scaling in the modulation threshold M, level decay in N and the depth k,
// weighted FL-infinity bounds, the sup-bilinear bound, remainder decay, and
// the differentiation-by-parts identity along an oracle path.
//
// Every scaling assertion is an envelope check: the measured sup ratios must
// be dominated by a single constant times the target power across the sweep.
// The fitted log-log slope is reported as a diagnostic; the pass condition is
// domination (the estimates are one-sided upper bounds, so a slope steeper
// than the target is fine, a flatter one is not).
//==============================================================================

#include <cstdint>
#include <string>
#include <vector>

#include "knfr/nfe_solver.hpp"
#include "knfr/nfr_operators.hpp"

namespace knfr {

struct ProbeConfig {
    std::uint64_t seed = 1;
    int samples = 50;          // >= 50
    double s = 0.0;
    double sigma = 1.0;
    double beta = 1.0;
    double delta = 0.1;
    double t = 0.0;            // evaluation time for the operators
    std::vector<double> M_list;  // strictly increasing, dyadic
    std::vector<double> N_list;  // strictly increasing
    int k_min = 2;
    int k_max = 3;
    FrequencyGrid grid;

    void validate() const;
};

struct ScalingReport {
    std::string name;
    std::vector<double> sweep;      // M, N, k, or n values
    std::vector<double> measured;   // sup ratios per sweep point
    std::vector<double> bound;      // C_fit * shape(sweep point)
    double target_exponent = 0.0;
    double fitted_slope = 0.0;      // free least-squares slope (diagnostic)
    double fitted_constant = 0.0;   // least-squares constant at the target slope
    double envelope_constant = 0.0; // max measured/shape (the single dominating C)
    double max_overshoot = 0.0;     // max measured / (fitted_constant * shape)
    bool pass = false;
    std::string note;

    std::string to_csv() const;   // one row per sweep point, with header
    std::string to_json() const;  // summary object
};

// Random state with spectral profile <xi>^{-s-0.6} * complex Gaussian,
// normalized so hs_norm(., s) == 1 (or flinf_norm == 1). Deterministic in
// (seed, sample_index); independent of thread scheduling.
SpectralState random_state(const FrequencyGrid& grid, double s, std::uint64_t seed,
                           std::uint64_t sample_index);
SpectralState random_state_flinf(const FrequencyGrid& grid, double s, std::uint64_t seed,
                                 std::uint64_t sample_index);
// Conjugate-symmetric variant (real physical field, Nyquist zeroed).
SpectralState random_real_state(const FrequencyGrid& grid, double s, std::uint64_t seed,
                                std::uint64_t sample_index);

// Largest |Phi - alpha| over all admissible grid pairs; the saturation point
// for M- and N-sweeps on this lattice.
double modulation_range(const FrequencyGrid& grid, double beta, double alpha = 0.0);

// H^s operator-norm scaling of N^alpha_{<=M} (target +1/2) or I^alpha_{>M}
// (target -1/2); also used for the dyadic kinds.
ScalingReport probe_bilinear_scaling(BilinearKind kind, double alpha, const ProbeConfig& cfg);

// Mixed-norm scaling of the weighted kinds, slot j in FL-infinity, the other
// slot in H^sigma. Requires 0 <= s <= min(1, sigma).
ScalingReport probe_weighted_scaling(int j, const ProbeConfig& cfg);

// Decay of ||N0^(k)|| / ||v||^k (target exponent -(k-1)/2 + (k-2) delta/2 in N)
// and ||N1^(k)|| / ||v||^{k+1} (target -(k-2)/2 + (k-3) delta/2); one report
// per k in [k_min, k_max].
std::vector<ScalingReport> probe_level_decay(Variant variant, const ProbeConfig& cfg);

// sup_{xi != 0} |N2^(k)_hat(v)(t,xi)| / |xi|^{1-s} against the printed
// envelope, plus strict decrease in k.
std::vector<ScalingReport> probe_remainder(const ProbeConfig& cfg);

// sup_xi |h_xi sum |xi|^s v1 v2| <= C ||v1||_{H^s} ||v2||_{H^s}, constant
// compared across grids n in {64, 128, 256}.
ScalingReport probe_sup_bilinear(const ProbeConfig& cfg);

struct IbpReport {
    double relative_residual = 0.0;  // max over interior samples
    double denominator = 0.0;        // scale used for the relative error
    int samples_used = 0;
};

// Residual of N2^(k-1)(v) = d/dt N0^(k)(v) + N1^(k)(v) + N2^(k)(v) along an
// oracle v-path, with d/dt by central differences at the sample spacing.
IbpReport probe_ibp_identity(int k, const ProbeConfig& cfg, const TimeSampledPath& oracle_path);

// Largest envelope constant over the level estimates (N0, N1 for k in range,
// plus the level-1 bilinear bound): the empirical stand-in for the absolute
// constant in the contraction inequalities.
double calibrate_estimate_constant(const ProbeConfig& cfg);

}  // namespace knfr
