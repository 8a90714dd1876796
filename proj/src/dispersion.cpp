#include "knfr/dispersion.hpp"

#include <cmath>
#include <string>

namespace knfr {

double phi(double xi, double xi1, double xi2, double beta) {
    if (std::fabs(xi - (xi1 + xi2)) > 1e-9)
        throw Error("phi: arguments violate xi = xi1 + xi2 (off-plane by " +
                    std::to_string(xi - (xi1 + xi2)) + ")");
    // grouped so that swapping xi1 and xi2 gives the identical rounding
    return -xi * (xi1 * xi2) * (5.0 * ((xi1 * xi1 + xi2 * xi2) + xi1 * xi2) + 3.0 * beta);
}

double phi_unfactored(double xi, double xi1, double xi2, double beta) {
    // The quintic sum cancels catastrophically near the resonant set; extended
    // precision keeps this route a usable independent reference there.
    auto p3 = [](long double a) { return a * a * a; };
    auto p5 = [](long double a) { return a * a * a * a * a; };
    long double a = xi, b = xi1, c = xi2;
    return static_cast<double>(p5(b) + p5(c) - p5(a) +
                               static_cast<long double>(beta) * (p3(b) + p3(c) - p3(a)));
}

double g_slice_derivative(double xi, double xi1, double beta) {
    double xi2 = xi - xi1;
    return (xi1 * xi1 - xi2 * xi2) * (5.0 * (xi1 * xi1 + xi2 * xi2) + 3.0 * beta);
}

double h_slice_derivative(double xi1, double xi2, double beta) {
    double xi = xi1 + xi2;
    return -xi2 * (xi + xi1) * (5.0 * (xi1 * xi1 + xi * xi) + 3.0 * beta);
}

double levelset_measure(const LevelSetQuery& q) {
    if (!(q.window_hi > q.window_lo)) throw Error("levelset_measure: empty window");
    if (q.resolution < 10000) throw Error("levelset_measure: resolution must be >= 1e4");
    if (!(q.M >= 1.0)) throw Error("levelset_measure: M must be >= 1");

    const double step = (q.window_hi - q.window_lo) / static_cast<double>(q.resolution);
    long hits = 0;
    for (long i = 0; i < q.resolution; ++i) {
        double xi1 = q.window_lo + (static_cast<double>(i) + 0.5) * step;
        double value;
        if (q.kind == SliceKind::fixed_total)
            value = phi(q.fixed_value, xi1, q.fixed_value - xi1, q.beta);
        else
            value = phi(xi1 + q.fixed_value, xi1, q.fixed_value, q.beta);
        if (std::fabs(value - q.alpha) <= q.M) ++hits;
    }
    return static_cast<double>(hits) * step;
}

}  // namespace knfr
