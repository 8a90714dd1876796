#pragma once

#include <vector>

#include "knfr/errors.hpp"

namespace knfr {

// Dispersion coefficients after renormalization: the fifth-order coefficient
// is fixed at -1 and only the third-order one varies (usually -1, 0, or 1).
struct ModulationParams {
    static constexpr double alpha_eq = -1.0;
    double beta = 0.0;
};

// Per-generation modulations mu_j and their left-to-right prefix sums.
struct ModulationTrace {
    std::vector<double> mu;
    std::vector<double> mu_tilde;

    static ModulationTrace from_mus(const std::vector<double>& mus) {
        ModulationTrace t;
        t.mu = mus;
        t.mu_tilde.resize(mus.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < mus.size(); ++i) {
            acc += mus[i];
            t.mu_tilde[i] = acc;
        }
        return t;
    }
};

// Resonance mismatch on the convolution plane xi = xi1 + xi2, in the
// factored form -xi*xi1*xi2*(5*(xi1^2+xi1*xi2+xi2^2)+3*beta). The factored
// form is only valid on the plane, so the constraint is asserted (1e-9
// absolute); violations at call sites are bugs, not data.
double phi(double xi, double xi1, double xi2, double beta);

// Literal quintic+cubic form xi1^5+xi2^5-xi^5+beta*(xi1^3+xi2^3-xi^3),
// defined off the plane as well; serves as the independent route.
double phi_unfactored(double xi, double xi1, double xi2, double beta);

// d/dxi1 of the slice xi1 -> phi(xi, xi1, xi-xi1) at fixed total xi:
// (xi1^2-(xi-xi1)^2)*(5*(xi1^2+(xi-xi1)^2)+3*beta).
double g_slice_derivative(double xi, double xi1, double beta);

// d/dxi1 of the slice xi1 -> phi(xi1+xi2, xi1, xi2) at fixed xi2:
// -xi2*(xi+xi1)*(5*(xi1^2+xi^2)+3*beta) with xi = xi1+xi2.
double h_slice_derivative(double xi1, double xi2, double beta);

enum class SliceKind {
    fixed_total,   // xi fixed, pair (xi1, xi - xi1)
    fixed_second,  // xi2 fixed, pair (xi1, xi2), total xi1 + xi2
};

struct LevelSetQuery {
    SliceKind kind = SliceKind::fixed_total;
    double fixed_value = 0.0;  // xi or xi2, per kind
    double beta = 0.0;
    double alpha = 0.0;   // level being probed
    double M = 1.0;       // half-width of the band |phi - alpha| <= M
    double window_lo = 0.0;
    double window_hi = 0.0;
    long resolution = 10000;  // uniform sample count, >= 1e4
};

// Deterministic brute-force estimate of the Lebesgue measure of
// { xi1 in window : |phi_slice(xi1) - alpha| <= M } by uniform midpoint
// sampling (count * step). Not Monte Carlo, so identical queries give
// identical answers.
double levelset_measure(const LevelSetQuery& q);

}  // namespace knfr
