#pragma once

#include "knfr/state.hpp"

namespace knfr {

// Canonical smooth profiles, centered in the box by default. All are built by
// sampling in physical space and transforming, so they return real fields.
SpectralState sech2_profile(const FrequencyGrid& grid, double amplitude, double width);
SpectralState gaussian_profile(const FrequencyGrid& grid, double amplitude, double width);
// amplitude * cos(mode * h_xi * x)
SpectralState cosine_profile(const FrequencyGrid& grid, double amplitude, int mode);

// Rescale so hs_norm(state, s) == target exactly (no-op on the zero state).
SpectralState scaled_to_hs(const SpectralState& state, double target, double s);

}  // namespace knfr
