#pragma once

#include <string>
#include <vector>

#include "knfr/nfr_operators.hpp"
#include "knfr/reference_solver.hpp"

namespace knfr {

struct NfeConfig {
    double r = 1.0;        // data-size bound, >= ||u0||_{H^s}
    double s = 0.0;        // regularity of the contraction space
    double delta = 0.1;    // cutoff-chain exponent, in (0,1)
    double N = 100.0;      // first modulation threshold, > 1
    double T = 0.1;        // half-width of the time interval, > 0
    int depth = 3;         // truncation level K, 2..kMaxLevel
    int time_steps = 32;   // n_t, >= 8
    double picard_tol = 1e-10;
    int max_picard_iters = 60;
    double C_est = 1.0;    // empirical constant used by the validation report
    bool override_validation = false;

    void validate_fields() const;
    CutoffChain chain() const { return CutoffChain{N, delta, depth}; }
};

// The parameter inequalities behind the contraction argument, evaluated
// with C = C_est. Report-only: callers decide what to do with failures.
struct ContractionReport {
    struct Item {
        std::string name;
        double lhs;
        double rhs;
        bool pass;
    };
    std::vector<Item> items;
    bool all_pass = false;
    std::string binding;  // inequality with the largest lhs/rhs ratio
};

ContractionReport validate_contraction_params(const NfeConfig& cfg);

// Path with v(tau_m) = u0 at every node; the starting Picard iterate.
TimeSampledPath constant_path(const SpectralState& u0, double T, int n_t, int direction = +1);

// One application of the truncated normal-form right-hand side:
//   u0 + sum_{k=2}^K [ N0^(k)(v(t), t) - N0^(k)(v(0), 0) ]
//      + trapezoid_{0}^{t} sum_{k=1}^K N1^(k)(v(tau), tau) dtau
// evaluated on every grid time of the path.
TimeSampledPath nfe_rhs(const TimeSampledPath& path, const SpectralState& u0,
                        const NfeConfig& cfg, double beta);

struct PicardDiagnostics {
    std::vector<double> distances;  // sup-in-time H^s update sizes per sweep
    std::vector<double> ratios;     // successive distance ratios
    double contraction_ratio = 0.0; // max ratio observed
    int iterations = 0;
    bool converged = false;
};

struct PicardResult {
    TimeSampledPath path;
    PicardDiagnostics diagnostics;
};

// Fixed-point iteration v <- nfe_rhs(v) from the constant path. Throws
// PicardError (with the distance history) if max_picard_iters is exhausted.
PicardResult picard_solve(const SpectralState& u0, const NfeConfig& cfg, double beta,
                          int direction = +1);

// Plug a path into the original integral formulation
//   v(t) = u0 + int_0^t N(v(tau)) dtau
// (full unrestricted integrand, trapezoid in tau) and return the sup-in-time
// H^s mismatch. End-to-end check of truncation + quadrature consistency.
double duhamel_residual(const TimeSampledPath& path, const SpectralState& u0,
                        const NfeConfig& cfg, double beta);

}  // namespace knfr
