#pragma once

#include <cmath>

#include "knfr/errors.hpp"

namespace knfr {

// Truncated symmetric frequency lattice standing in for the real line.
// Modes are m*h_xi for m = -n/2 .. n/2-1 (natural signed order, 0 on the
// grid), h_xi = 2*pi/L. Refining h_xi -> 0 and xi_max -> infinity is done
// by enlarging L and n, never by changing the index convention.
struct FrequencyGrid {
    double L = 0.0;  // period of the physical box
    int n = 0;       // mode count, even, >= 8

    FrequencyGrid() = default;
    FrequencyGrid(double period_length, int mode_count) : L(period_length), n(mode_count) {
        if (!(L > 0.0)) throw Error("FrequencyGrid: period length must be positive");
        if (n < 8 || n % 2 != 0) throw Error("FrequencyGrid: mode count must be even and >= 8");
    }

    double h_xi() const { return 6.283185307179586476925286766559 / L; }
    double h_x() const { return L / n; }
    double xi_max() const { return (n / 2) * h_xi(); }

    int mode(int index) const { return index - n / 2; }
    int index_of_mode(int m) const { return m + n / 2; }
    bool mode_on_grid(int m) const { return m >= -n / 2 && m < n / 2; }
    double xi(int index) const { return mode(index) * h_xi(); }
    double x(int j) const { return j * h_x(); }

    bool operator==(const FrequencyGrid& o) const { return L == o.L && n == o.n; }
    bool operator!=(const FrequencyGrid& o) const { return !(*this == o); }
};

// Regularity pair (s, sigma) for the mixed-norm estimates.
struct SobolevIndex {
    double s = 0.0;
    double sigma = 0.0;

    bool valid_basic() const { return s >= 0.0; }
    // Range demanded by the weighted-operator bounds.
    bool valid_weighted() const { return s >= 0.0 && s <= std::fmin(1.0, sigma); }
};

}  // namespace knfr
