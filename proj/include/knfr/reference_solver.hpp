#pragma once

#include <vector>

#include "knfr/state.hpp"

namespace knfr {

// Path sampled on a uniform time grid; times[m] = m * (T/n_t) with the sign
// of the march direction baked into the times themselves.
struct TimeSampledPath {
    std::vector<double> times;
    std::vector<SpectralState> states;
    int direction = +1;  // +1 forward, -1 backward

    int samples() const { return static_cast<int>(states.size()); }
};

struct RefConfig {
    FrequencyGrid grid;
    double dt = 1e-4;
    double T = 1.0;
    double beta = 1.0;
    double dealias_fraction = 2.0 / 3.0;  // in (0, 1]
    int sample_stride = 1;
    bool disable_nonlinearity = false;  // test hook: pure linear flow

    void validate() const;
};

struct ReferenceSolution {
    TimeSampledPath u_path;  // physical-variable spectra u_hat(t)
    TimeSampledPath v_path;  // interaction representation of the same samples
};

// One integrating-factor RK4 step of
//   d/dt u_hat = i(xi^5 + beta xi^3) u_hat - i xi * sqrt(2 pi) * F((F^{-1} m u)^2) * m,
// the dealiased pseudo-spectral form of the renormalized fifth-order flow.
// The linear phase is integrated exactly; m is the dealias mask.
SpectralState reference_step(const SpectralState& u_hat, double dt, const RefConfig& cfg);

// March from u0 over [0, T] (or [0, -T] when direction = -1), sampling every
// sample_stride steps. The u-path samples are reconstructed from the v-path
// by the inverse gauge, so from_interaction(v_path[m], t_m) reproduces
// u_path[m] bitwise.
ReferenceSolution reference_solve(const SpectralState& u0, const RefConfig& cfg,
                                  int direction = +1);

}  // namespace knfr
