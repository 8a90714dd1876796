#include <cmath>

#include "doctest.h"
#include "knfr/estimate_lab.hpp"
#include "knfr/initial_data.hpp"
#include "knfr/nfe_solver.hpp"

using namespace knfr;

namespace {

NfeConfig test_config() {
    NfeConfig cfg;
    cfg.r = 1.0;
    cfg.s = 0.0;
    cfg.delta = 0.5;
    cfg.N = 1000.0;
    cfg.T = 0.2;
    cfg.depth = 2;
    cfg.time_steps = 8;
    cfg.picard_tol = 1e-10;
    cfg.max_picard_iters = 40;
    cfg.C_est = 0.01;
    return cfg;
}

FrequencyGrid solver_grid() { return FrequencyGrid(4.0 * M_PI, 16); }

}  // namespace

TEST_CASE("contraction validation: the worked examples") {
    NfeConfig cfg;
    cfg.r = 1.0;
    cfg.delta = 0.5;
    cfg.C_est = 1.0;
    cfg.N = 1e6;
    cfg.T = 1e-5;
    ContractionReport rep = validate_contraction_params(cfg);
    CHECK(rep.all_pass);
    REQUIRE(rep.items.size() == 5);

    // N = 2 breaks (24Cr)^2 < N for any C >= 1/12
    cfg.N = 2.0;
    cfg.C_est = 1.0 / 12.0;
    rep = validate_contraction_params(cfg);
    CHECK_FALSE(rep.items[3].pass);

    // T just above its bound: exactly the time inequality fails
    cfg = test_config();
    double bound = 1.0 / (12.0 * cfg.C_est * cfg.r * std::sqrt(cfg.N));
    cfg.T = bound * 1.0001;
    rep = validate_contraction_params(cfg);
    CHECK_FALSE(rep.items[2].pass);
    int failures = 0;
    for (const auto& item : rep.items) failures += item.pass ? 0 : 1;
    CHECK(failures == 1);
    CHECK(rep.binding == rep.items[2].name);

    cfg.T = bound * 0.9999;
    CHECK(validate_contraction_params(cfg).all_pass);
}

TEST_CASE("zero data converges immediately to the zero path") {
    NfeConfig cfg = test_config();
    SpectralState zero(solver_grid());
    PicardResult result = picard_solve(zero, cfg, 1.0);
    CHECK(result.diagnostics.converged);
    CHECK(result.diagnostics.iterations == 1);
    for (const SpectralState& s : result.path.states) CHECK(flinf_norm(s) == 0.0);
}

TEST_CASE("rhs at t = 0 returns the data exactly") {
    NfeConfig cfg = test_config();
    FrequencyGrid g = solver_grid();
    SpectralState u0 = scaled_to_hs(gaussian_profile(g, 1.0, 1.0), 0.5, 0.0);
    TimeSampledPath path = constant_path(u0, cfg.T, cfg.time_steps);
    TimeSampledPath out = nfe_rhs(path, u0, cfg, 1.0);
    for (int i = 0; i < g.n; ++i) CHECK(out.states[0].coeffs[i] == u0.coeffs[i]);
}

TEST_CASE("one rhs application against a direct summation oracle") {
    NfeConfig cfg = test_config();
    cfg.depth = 3;
    FrequencyGrid g = solver_grid();
    double beta = 1.0;
    SpectralState u0 = scaled_to_hs(gaussian_profile(g, 1.0, 1.0), 0.5, 0.0);
    TimeSampledPath path = constant_path(u0, cfg.T, cfg.time_steps);
    TimeSampledPath out = nfe_rhs(path, u0, cfg, beta);

    // independent assembly at one interior node, straight-line quadrature
    int m = 5;
    CutoffChain chain = cfg.chain();
    SpectralState expect = u0;
    for (int k = 2; k <= cfg.depth; ++k) {
        axpy(expect, 1.0, eval_level(Variant::N0, k, path.states[m], path.times[m], chain, beta));
        axpy(expect, -1.0, eval_level(Variant::N0, k, path.states[0], path.times[0], chain, beta));
    }
    double h = cfg.T / cfg.time_steps;
    for (int i = 0; i < m; ++i) {
        for (int k = 1; k <= cfg.depth; ++k) {
            SpectralState gi = eval_level(Variant::N1, k, path.states[i], path.times[i], chain, beta);
            SpectralState gj =
                eval_level(Variant::N1, k, path.states[i + 1], path.times[i + 1], chain, beta);
            axpy(expect, 0.5 * h, gi);
            axpy(expect, 0.5 * h, gj);
        }
    }
    CHECK(hs_norm(difference(out.states[m], expect), 0.0) < 1e-12 * (1.0 + hs_norm(expect, 0.0)));
}

TEST_CASE("picard iteration contracts and satisfies the fixed point") {
    NfeConfig cfg = test_config();
    FrequencyGrid g = solver_grid();
    double beta = 1.0;
    SpectralState u0 = scaled_to_hs(gaussian_profile(g, 1.0, 1.0), 0.8, 0.0);

    PicardResult result = picard_solve(u0, cfg, beta);
    CHECK(result.diagnostics.converged);
    for (double ratio : result.diagnostics.ratios) CHECK(ratio < 1.0);

    TimeSampledPath fixed = nfe_rhs(result.path, u0, cfg, beta);
    double defect = 0.0;
    for (int m = 0; m < fixed.samples(); ++m)
        defect = std::fmax(defect,
                           hs_norm(difference(fixed.states[m], result.path.states[m]), cfg.s));
    CHECK(defect <= 2.0 * cfg.picard_tol);
}

TEST_CASE("halving the tolerance moves the path by at most the old tolerance") {
    NfeConfig cfg = test_config();
    cfg.picard_tol = 1e-8;
    FrequencyGrid g = solver_grid();
    SpectralState u0 = scaled_to_hs(gaussian_profile(g, 1.0, 1.2), 0.8, 0.0);

    PicardResult coarse = picard_solve(u0, cfg, 1.0);
    cfg.picard_tol = 5e-9;
    PicardResult fine = picard_solve(u0, cfg, 1.0);
    double moved = 0.0;
    for (int m = 0; m < coarse.path.samples(); ++m)
        moved = std::fmax(
            moved, hs_norm(difference(coarse.path.states[m], fine.path.states[m]), cfg.s));
    CHECK(moved <= 1e-8);
}

TEST_CASE("Lipschitz dependence on the data") {
    NfeConfig cfg = test_config();
    FrequencyGrid g = solver_grid();
    SpectralState a = scaled_to_hs(gaussian_profile(g, 1.0, 1.0), 0.8, 0.0);
    SpectralState b = scaled_to_hs(sech2_profile(g, 1.0, 1.3), 0.78, 0.0);

    PicardResult ra = picard_solve(a, cfg, 1.0);
    PicardResult rb = picard_solve(b, cfg, 1.0);
    double data_dist = hs_norm(difference(a, b), cfg.s);
    double sol_dist = 0.0;
    for (int m = 0; m < ra.path.samples(); ++m)
        sol_dist =
            std::fmax(sol_dist, hs_norm(difference(ra.path.states[m], rb.path.states[m]), cfg.s));
    double ratio = std::fmax(ra.diagnostics.contraction_ratio, rb.diagnostics.contraction_ratio);
    REQUIRE(ratio < 1.0);
    CHECK(sol_dist <= data_dist / (1.0 - ratio) * (1.0 + 1e-6));
}

TEST_CASE("forward and backward solves agree with the data at tau = 0") {
    NfeConfig cfg = test_config();
    FrequencyGrid g = solver_grid();
    SpectralState u0 = scaled_to_hs(gaussian_profile(g, 1.0, 1.1), 0.7, 0.0);
    PicardResult fwd = picard_solve(u0, cfg, 1.0, +1);
    PicardResult bwd = picard_solve(u0, cfg, 1.0, -1);
    CHECK(bwd.path.times.back() == doctest::Approx(-cfg.T));
    for (int i = 0; i < g.n; ++i) {
        CHECK(fwd.path.states[0].coeffs[i] == u0.coeffs[i]);
        CHECK(bwd.path.states[0].coeffs[i] == u0.coeffs[i]);
    }
}

TEST_CASE("solver guards: ball radius, validation, non-convergence") {
    NfeConfig cfg = test_config();
    FrequencyGrid g = solver_grid();
    SpectralState big = scaled_to_hs(gaussian_profile(g, 1.0, 1.0), 2.0, 0.0);
    CHECK_THROWS_AS(picard_solve(big, cfg, 1.0), Error);

    SpectralState ok = scaled_to_hs(big, 0.5, 0.0);
    cfg.C_est = 50.0;  // forces validation failure
    CHECK_THROWS_AS(picard_solve(ok, cfg, 1.0), Error);
    cfg.override_validation = true;
    CHECK_NOTHROW(picard_solve(ok, cfg, 1.0));

    cfg = test_config();
    cfg.max_picard_iters = 1;
    cfg.picard_tol = 1e-16;
    try {
        picard_solve(ok, cfg, 1.0);
        FAIL("expected PicardError");
    } catch (const PicardError& e) {
        CHECK(e.distance_history.size() == 1);
    }
}

TEST_CASE("duhamel residual: zero path, depth and quadrature refinement") {
    // Broadband data on a wide-range lattice so the depth-3 terms are live.
    FrequencyGrid g(2.0 * M_PI, 32);
    NfeConfig cfg = test_config();
    cfg.N = 30.0;
    cfg.delta = 0.1;
    cfg.T = 0.1;
    cfg.C_est = 0.002;
    cfg.time_steps = 16;
    double beta = 1.0;

    SpectralState zero(g);
    PicardResult rz = picard_solve(zero, cfg, beta);
    CHECK(duhamel_residual(rz.path, zero, cfg, beta) == 0.0);

    SpectralState u0 = scaled_to_hs(random_real_state(g, 0.0, 211, 0), 0.8, 0.0);
    cfg.depth = 2;
    double res_k2 = duhamel_residual(picard_solve(u0, cfg, beta).path, u0, cfg, beta);
    cfg.depth = 3;
    double res_k3 = duhamel_residual(picard_solve(u0, cfg, beta).path, u0, cfg, beta);
    CHECK(res_k3 < res_k2);

    cfg.depth = 2;
    cfg.time_steps = 32;
    double res_fine = duhamel_residual(picard_solve(u0, cfg, beta).path, u0, cfg, beta);
    CHECK(res_fine < res_k2);
}

TEST_CASE("config field validation") {
    NfeConfig cfg = test_config();
    cfg.delta = 1.0;
    CHECK_THROWS_AS(cfg.validate_fields(), Error);
    cfg = test_config();
    cfg.depth = 5;
    CHECK_THROWS_AS(cfg.validate_fields(), Error);
    cfg = test_config();
    cfg.time_steps = 4;
    CHECK_THROWS_AS(cfg.validate_fields(), Error);
}
