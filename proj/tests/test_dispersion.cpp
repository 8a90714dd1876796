#include <cmath>

#include "doctest.h"
#include "knfr/dispersion.hpp"
#include "knfr/rng.hpp"

using namespace knfr;

TEST_CASE("phi: zero factors and the (3,1,2) value") {
    for (double beta : {-1.0, 0.0, 1.0}) {
        CHECK(phi(1.0, 1.0, 0.0, beta) == 0.0);
        CHECK(phi(0.0, 4.2, -4.2, beta) == 0.0);
    }
    // independent arithmetic: 1^5 + 2^5 - 3^5 = -210
    CHECK(phi(3.0, 1.0, 2.0, 0.0) == doctest::Approx(-210.0));
    CHECK(phi_unfactored(3.0, 1.0, 2.0, 0.0) == doctest::Approx(-210.0));
    CHECK(phi_unfactored(1.0, 1.0, 0.0, 0.7) == 0.0);
    CHECK_THROWS_AS(phi(1.0, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("phi symmetry in the pair") {
    Philox rng(101, 0);
    for (int i = 0; i < 200; ++i) {
        auto [a, b] = rng.uniform2(i);
        double xi1 = 200.0 * (a - 0.5), xi2 = 200.0 * (b - 0.5);
        CHECK(phi(xi1 + xi2, xi1, xi2, 1.0) == phi(xi1 + xi2, xi2, xi1, 1.0));
    }
}

TEST_CASE("factored and unfactored forms agree on the constraint plane") {
    Philox rng(13, 1);
    for (double beta : {-1.0, 0.0, 1.0}) {
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            auto [a, b] = rng.uniform2(static_cast<std::uint64_t>(i) + (beta + 2) * 1000000);
            double xi1 = 2000.0 * (a - 0.5), xi2 = 2000.0 * (b - 0.5);
            double f = phi(xi1 + xi2, xi1, xi2, beta);
            double u = phi_unfactored(xi1 + xi2, xi1, xi2, beta);
            worst = std::fmax(worst, std::fabs(f - u) / (1.0 + std::fabs(f)));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("slice derivatives match their printed closed forms") {
    // symmetric point of the fixed-total slice
    CHECK(g_slice_derivative(3.0, 1.5, -1.0) == 0.0);
    // (xi, xi1) = (10, 9): (81-1)*(5*(81+1)) = 80*410
    CHECK(g_slice_derivative(10.0, 9.0, 0.0) == doctest::Approx(32800.0));
    // leading factor of the fixed-second slice
    CHECK(h_slice_derivative(2.3, 0.0, 1.0) == 0.0);
    // sign: xi2 > 0, xi + xi1 > 0, beta = 0 -> negative
    CHECK(h_slice_derivative(1.0, 2.0, 0.0) < 0.0);
}

TEST_CASE("slice derivatives against central finite differences") {
    Philox rng(17, 2);
    auto fd = [](auto f, double x) {
        double step = 1e-5 * (1.0 + std::fabs(x));
        return (f(x + step) - f(x - step)) / (2.0 * step);
    };
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        auto [a, b] = rng.uniform2(i);
        double beta = (i % 3) - 1.0;
        double xi = 20.0 * (a - 0.5), xi1 = 20.0 * (b - 0.5);

        double g_exact = g_slice_derivative(xi, xi1, beta);
        double g_num = fd([&](double y) { return phi_unfactored(xi, y, xi - y, beta); }, xi1);
        if (std::fabs(g_exact) > 1e-2) {
            CHECK(std::fabs(g_num - g_exact) < 1e-6 * std::fabs(g_exact));
            ++checked;
        }

        double xi2 = 20.0 * (a - 0.2);
        double h_exact = h_slice_derivative(xi1, xi2, beta);
        double h_num = fd([&](double y) { return phi_unfactored(y + xi2, y, xi2, beta); }, xi1);
        if (std::fabs(h_exact) > 1e-2) {
            CHECK(std::fabs(h_num - h_exact) < 1e-6 * std::fabs(h_exact));
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("modulation trace prefix sums") {
    ModulationTrace t = ModulationTrace::from_mus({3.0, -1.0, 2.5});
    REQUIRE(t.mu_tilde.size() == 3);
    CHECK(t.mu_tilde[0] == 3.0);
    CHECK(t.mu_tilde[1] == 2.0);
    CHECK(t.mu_tilde[2] == 4.5);
    CHECK(ModulationParams{}.alpha_eq == -1.0);
}

TEST_CASE("levelset measure: trivial windows") {
    LevelSetQuery q;
    q.kind = SliceKind::fixed_total;
    q.fixed_value = 4.0;
    q.beta = 1.0;
    q.alpha = 0.0;
    q.window_lo = 0.0;
    q.window_hi = 4.0;
    q.resolution = 20000;

    // M at least the sup of |phi - alpha| on the window: the whole window
    double sup = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        double xi1 = q.window_lo + (q.window_hi - q.window_lo) * i / 1000.0;
        sup = std::fmax(sup, std::fabs(phi(4.0, xi1, 4.0 - xi1, 1.0)));
    }
    q.M = 2.0 * sup;
    CHECK(levelset_measure(q) == doctest::Approx(4.0).epsilon(1e-12));

    // a level far out of reach: empty set
    q.alpha = 10.0 * sup;
    q.M = 1.0;
    CHECK(levelset_measure(q) == 0.0);

    q.window_hi = q.window_lo;
    CHECK_THROWS_AS(levelset_measure(q), Error);
    q.window_hi = 4.0;
    q.resolution = 100;
    CHECK_THROWS_AS(levelset_measure(q), Error);
    q.resolution = 20000;
    q.M = 0.5;
    CHECK_THROWS_AS(levelset_measure(q), Error);
}

TEST_CASE("levelset measure: mean-value scaling in the separated regime") {
    // fixed-total slices at |xi| = 10, 20, 40 in the regime |xi2| << |xi|:
    // measure(M) * xi^4 / M stays bounded by one constant, and the measure is
    // monotone in M. Two resolutions agree to 1%.
    double bound = 0.0;
    for (double xi : {10.0, 20.0, 40.0}) {
        double prev = -1.0;
        for (double M : {100.0, 1000.0, 10000.0}) {
            LevelSetQuery q;
            q.kind = SliceKind::fixed_total;
            q.fixed_value = xi;
            q.beta = 0.0;
            q.alpha = 0.0;
            q.M = M;
            // window around xi2 = xi - xi1 in [-2, 2]: xi1 in [xi-2, xi+2]
            q.window_lo = xi - 2.0;
            q.window_hi = xi + 2.0;
            q.resolution = 200000;
            double measure = levelset_measure(q);
            CHECK(measure >= prev);
            prev = measure;
            q.resolution = 400000;
            double measure2 = levelset_measure(q);
            if (measure > 0.0)
                CHECK(std::fabs(measure2 - measure) <= 0.01 * measure + 4.0 * 4.0 / 200000.0);
            bound = std::fmax(bound, measure * std::pow(xi, 4) / M);
        }
    }
    CHECK(bound > 0.0);
    CHECK(bound < 10.0);  // the mean-value constant for this slice family
}
