#include "knfr/initial_data.hpp"

#include <cmath>

namespace knfr {

namespace {
SpectralState from_profile(const FrequencyGrid& grid, double (*f)(double, double),
                           double amplitude, double width) {
    std::vector<double> samples(grid.n);
    double center = 0.5 * grid.L;
    for (int j = 0; j < grid.n; ++j) samples[j] = amplitude * f((grid.x(j) - center) / width, 0.0);
    return forward_transform(grid, samples);
}
}  // namespace

SpectralState sech2_profile(const FrequencyGrid& grid, double amplitude, double width) {
    return from_profile(
        grid, [](double z, double) { double c = std::cosh(z); return 1.0 / (c * c); }, amplitude,
        width);
}

SpectralState gaussian_profile(const FrequencyGrid& grid, double amplitude, double width) {
    return from_profile(grid, [](double z, double) { return std::exp(-0.5 * z * z); }, amplitude,
                        width);
}

SpectralState cosine_profile(const FrequencyGrid& grid, double amplitude, int mode) {
    std::vector<double> samples(grid.n);
    double k = mode * grid.h_xi();
    for (int j = 0; j < grid.n; ++j) samples[j] = amplitude * std::cos(k * grid.x(j));
    return forward_transform(grid, samples);
}

SpectralState scaled_to_hs(const SpectralState& state, double target, double s) {
    double norm = hs_norm(state, s);
    if (norm == 0.0) return state;
    return scaled(state, target / norm);
}

}  // namespace knfr
