#include <cmath>
#include <complex>

#include "doctest.h"
#include "knfr/estimate_lab.hpp"
#include "knfr/initial_data.hpp"
#include "knfr/rng.hpp"
#include "knfr/state.hpp"

using namespace knfr;

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

FrequencyGrid small_grid() { return FrequencyGrid(8.0 * M_PI, 32); }  // h_xi = 0.25
}  // namespace

TEST_CASE("grid invariants and validation") {
    FrequencyGrid g = small_grid();
    CHECK(g.h_xi() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.xi(g.index_of_mode(0)) == 0.0);
    CHECK(g.mode(0) == -16);
    CHECK(g.mode(g.n - 1) == 15);
    CHECK_THROWS_AS(FrequencyGrid(1.0, 7), Error);
    CHECK_THROWS_AS(FrequencyGrid(1.0, 6), Error);
    CHECK_THROWS_AS(FrequencyGrid(-1.0, 16), Error);
}

TEST_CASE("hs_norm: zero, single mode, summation oracle") {
    FrequencyGrid g = small_grid();
    SpectralState zero(g);
    CHECK(hs_norm(zero, 0.7) == 0.0);

    SpectralState single(g);
    single.coeffs[g.index_of_mode(0)] = 1.0;
    for (double s : {0.0, 0.5, 2.0})
        CHECK(hs_norm(single, s) == doctest::Approx(std::sqrt(g.h_xi())).epsilon(1e-14));

    SpectralState v = random_state(g, 0.0, 7, 0);
    // s = 0: h^{1/2} times the Euclidean norm, summed directly
    double euclid = 0.0;
    for (auto c : v.coeffs) euclid += std::norm(c);
    euclid = std::sqrt(euclid);
    CHECK(hs_norm(v, 0.0) == doctest::Approx(std::sqrt(g.h_xi()) * euclid).epsilon(1e-13));
    // generic s against an independent accumulation
    double s = 1.3, acc = 0.0;
    for (int i = 0; i < g.n; ++i)
        acc += std::pow(1.0 + g.xi(i) * g.xi(i), s) * std::norm(v.coeffs[i]);
    CHECK(hs_norm(v, s) == doctest::Approx(std::sqrt(g.h_xi() * acc)).epsilon(1e-13));
}

TEST_CASE("flinf_norm: zero, single mode, scan oracle") {
    FrequencyGrid g = small_grid();
    SpectralState zero(g);
    CHECK(flinf_norm(zero) == 0.0);

    SpectralState single(g);
    single.coeffs[5] = Complex(0.0, 3.0);
    CHECK(flinf_norm(single) == doctest::Approx(3.0));

    SpectralState v = random_state(g, 0.0, 11, 3);
    double best = 0.0;
    for (auto c : v.coeffs) best = std::fmax(best, std::abs(c));
    CHECK(flinf_norm(v) == best);
}

TEST_CASE("interaction gauge: identity cases and single-mode phase") {
    FrequencyGrid g = small_grid();
    SpectralState v = random_state(g, 0.0, 3, 1);

    SpectralState at0 = to_interaction(v, 0.0, 1.0);
    for (int i = 0; i < g.n; ++i) CHECK(at0.coeffs[i] == v.coeffs[i]);

    SpectralState moved = to_interaction(v, 2.7, -1.0);
    CHECK(moved.coeffs[g.index_of_mode(0)] == v.coeffs[g.index_of_mode(0)]);

    // xi0 = 1, t = pi, beta = 0: multiplier e^{-i pi} = -1
    SpectralState single(g);
    int idx = g.index_of_mode(4);  // 4 * 0.25 = 1
    single.coeffs[idx] = Complex(0.4, -0.2);
    SpectralState out = to_interaction(single, M_PI, 0.0);
    CHECK(std::abs(out.coeffs[idx] - Complex(-0.4, 0.2)) < 1e-14);
}

TEST_CASE("gauge round trip and isometry") {
    FrequencyGrid g = small_grid();
    SpectralState v = random_state(g, 0.0, 5, 2);

    SpectralState rt = from_interaction(to_interaction(v, 0.37, 1.0), 0.37, 1.0);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) worst = std::fmax(worst, std::abs(rt.coeffs[i] - v.coeffs[i]));
    CHECK(worst < 1e-13 * flinf_norm(v));

    for (double s : {0.0, 0.5, 1.0})
        for (double t : {0.1, 3.0, -2.0})
            for (double beta : {-1.0, 0.0, 1.0})
                CHECK(hs_norm(to_interaction(v, t, beta), s) ==
                      doctest::Approx(hs_norm(v, s)).epsilon(1e-12));
}

TEST_CASE("reality preservation through the gauge") {
    FrequencyGrid g = small_grid();
    SpectralState v = random_real_state(g, 0.0, 13, 0);
    CHECK(reality_defect(v) < 1e-12);
    SpectralState moved = to_interaction(v, 1.3, 1.0);
    CHECK(moved.reality_flag);
    CHECK(reality_defect(moved) < 1e-12);
}

TEST_CASE("transforms: constant field, cosine closed form, round trips") {
    FrequencyGrid g = small_grid();

    std::vector<double> constant(g.n, 2.5);
    SpectralState chat = forward_transform(g, constant);
    for (int i = 0; i < g.n; ++i)
        if (g.mode(i) != 0) CHECK(std::abs(chat.coeffs[i]) < 1e-13);
    CHECK(std::abs(chat.coeffs[g.index_of_mode(0)]) > 1.0);

    // cos(k x) with k = 3 h_xi: two symmetric modes of height L/(2 sqrt(2 pi))
    SpectralState cosine = cosine_profile(g, 1.0, 3);
    double expected = g.L / (2.0 * kSqrt2Pi);
    CHECK(cosine.coeffs[g.index_of_mode(3)].real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cosine.coeffs[g.index_of_mode(-3)].real() == doctest::Approx(expected).epsilon(1e-12));
    double rest = 0.0;
    for (int i = 0; i < g.n; ++i)
        if (std::abs(g.mode(i)) != 3) rest = std::fmax(rest, std::abs(cosine.coeffs[i]));
    CHECK(rest < 1e-12 * expected);

    // round trip on random real samples
    std::vector<double> samples(g.n);
    Philox rng(21, 0);
    for (int j = 0; j < g.n; ++j) samples[j] = rng.gaussian2(j).first;
    std::vector<double> back = inverse_transform(forward_transform(g, samples));
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::fmax(worst, std::fabs(back[j] - samples[j]));
    CHECK(worst < 1e-12);

    CHECK_THROWS_AS(forward_transform(g, std::vector<double>(g.n + 1, 0.0)), Error);
}

TEST_CASE("transforms on a non-power-of-two grid") {
    FrequencyGrid g(10.0, 12);
    std::vector<double> samples(g.n);
    for (int j = 0; j < g.n; ++j) samples[j] = std::sin(0.3 + 2.0 * M_PI * j / g.n);
    std::vector<double> back = inverse_transform(forward_transform(g, samples));
    for (int j = 0; j < g.n; ++j) CHECK(back[j] == doctest::Approx(samples[j]).epsilon(1e-12));
}

TEST_CASE("Parseval: spectral H^0 equals physical L^2") {
    FrequencyGrid g = small_grid();
    std::vector<double> samples(g.n);
    Philox rng(31, 0);
    for (int j = 0; j < g.n; ++j) samples[j] = rng.gaussian2(j).second;
    SpectralState v = forward_transform(g, samples);

    double physical = 0.0;  // periodic trapezoid = h_x * sum
    for (double u : samples) physical += u * u;
    physical = std::sqrt(g.h_x() * physical);
    CHECK(hs_norm(v, 0.0) == doctest::Approx(physical).epsilon(1e-10));
}

TEST_CASE("lattice convolution matches the transform of a product") {
    // sqrt(2 pi) F(u1 u2) = h_xi sum_{xi1+xi2=xi} u1_hat u2_hat for band-limited
    // inputs (no aliasing, no truncation): the coupling every interaction
    // operator relies on.
    FrequencyGrid g = small_grid();
    const int half = g.n / 2;
    SpectralState v1(g), v2(g);
    Philox rng(41, 0);
    for (int m = 0; m <= half / 4; ++m) {
        auto [a, b] = rng.gaussian2(static_cast<std::uint64_t>(m));
        auto [c, d] = rng.gaussian2(static_cast<std::uint64_t>(m + half));
        Complex z1(a, b), z2(c, d);
        if (m == 0) { z1 = Complex(a, 0.0); z2 = Complex(c, 0.0); }
        v1.coeffs[g.index_of_mode(m)] = z1;
        v2.coeffs[g.index_of_mode(m)] = z2;
        if (m > 0) {
            v1.coeffs[g.index_of_mode(-m)] = std::conj(z1);
            v2.coeffs[g.index_of_mode(-m)] = std::conj(z2);
        }
    }
    std::vector<double> u1 = inverse_transform(v1), u2 = inverse_transform(v2);
    std::vector<double> prod(g.n);
    for (int j = 0; j < g.n; ++j) prod[j] = u1[j] * u2[j];
    SpectralState lhs = forward_transform(g, prod);

    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < g.n; ++i) {
        int m = g.mode(i);
        Complex conv(0.0, 0.0);
        for (int m1 = -half; m1 < half; ++m1) {
            int m2 = m - m1;
            if (m2 < -half || m2 >= half) continue;
            conv += v1.coeffs[g.index_of_mode(m1)] * v2.coeffs[g.index_of_mode(m2)];
        }
        conv *= g.h_xi();
        worst = std::fmax(worst, std::abs(kSqrt2Pi * lhs.coeffs[i] - conv));
        scale = std::fmax(scale, std::abs(conv));
    }
    CHECK(worst < 1e-12 * (1.0 + scale));
}

TEST_CASE("JSON round trip is bit-exact") {
    FrequencyGrid g = small_grid();
    SpectralState v = random_state(g, 0.5, 17, 4);
    SpectralState back = state_from_json(state_to_json(v));
    REQUIRE(back.grid == v.grid);
    for (int i = 0; i < g.n; ++i) {
        CHECK(back.coeffs[i].real() == v.coeffs[i].real());
        CHECK(back.coeffs[i].imag() == v.coeffs[i].imag());
    }
}

TEST_CASE("SobolevIndex ranges") {
    CHECK(SobolevIndex{0.5, 1.0}.valid_weighted());
    CHECK(SobolevIndex{1.0, 1.0}.valid_weighted());
    CHECK_FALSE(SobolevIndex{1.2, 2.0}.valid_weighted());
    CHECK_FALSE(SobolevIndex{0.5, 0.3}.valid_weighted());
    CHECK_FALSE(SobolevIndex{-0.1, 1.0}.valid_basic());
}
