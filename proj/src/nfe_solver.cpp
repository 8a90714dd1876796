#include "knfr/nfe_solver.hpp"

#include <cmath>

namespace knfr {

void NfeConfig::validate_fields() const {
    if (!(r > 0.0)) throw Error("NfeConfig: r must be positive");
    if (s < 0.0) throw Error("NfeConfig: s must be >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("NfeConfig: delta must lie in (0,1)");
    if (!(N > 1.0)) throw Error("NfeConfig: N must exceed 1");
    if (!(T > 0.0)) throw Error("NfeConfig: T must be positive");
    if (depth < 2 || depth > kMaxLevel) throw Error("NfeConfig: depth must be in [2, 4]");
    if (time_steps < 8) throw Error("NfeConfig: need at least 8 time steps");
    if (!(picard_tol > 0.0)) throw Error("NfeConfig: picard_tol must be positive");
    if (max_picard_iters < 1) throw Error("NfeConfig: max_picard_iters must be >= 1");
}

ContractionReport validate_contraction_params(const NfeConfig& cfg) {
    const double r = cfg.r, d = cfg.delta, N = cfg.N, T = cfg.T, C = cfg.C_est;
    ContractionReport rep;
    auto add = [&](const std::string& name, double lhs, double rhs) {
        rep.items.push_back({name, lhs, rhs, lhs < rhs});
    };
    add("2r N^{-(1-delta)/2} < 1/2", 2.0 * r * std::pow(N, -(1.0 - d) / 2.0), 0.5);
    add("15C/2 < N^{delta/2}", 7.5 * C, std::pow(N, d / 2.0));
    add("T <= 1/(12 C r N^{1/2})", T, 1.0 / (12.0 * C * r * std::sqrt(N)));
    add("(24Cr)^2 < N", std::pow(24.0 * C * r, 2), N);
    add("(4r)^{2/(1+delta)} < N", std::pow(4.0 * r, 2.0 / (1.0 + d)), N);
    // The time bound is non-strict.
    rep.items[2].pass = rep.items[2].lhs <= rep.items[2].rhs;

    rep.all_pass = true;
    double worst = -1.0;
    for (const auto& item : rep.items) {
        rep.all_pass = rep.all_pass && item.pass;
        double ratio = item.lhs / item.rhs;
        if (ratio > worst) {
            worst = ratio;
            rep.binding = item.name;
        }
    }
    return rep;
}

TimeSampledPath constant_path(const SpectralState& u0, double T, int n_t, int direction) {
    TimeSampledPath path;
    path.direction = direction;
    double step = direction * T / n_t;
    for (int m = 0; m <= n_t; ++m) {
        path.times.push_back(m * step);
        path.states.push_back(u0);
    }
    return path;
}

namespace {

double sup_hs_distance(const TimeSampledPath& a, const TimeSampledPath& b, double s) {
    double worst = 0.0;
    for (int m = 0; m < a.samples(); ++m)
        worst = std::fmax(worst, hs_norm(difference(a.states[m], b.states[m]), s));
    return worst;
}

// Cumulative trapezoid of per-sample states g_m along the path times.
std::vector<SpectralState> trapezoid_prefix(const TimeSampledPath& path,
                                            const std::vector<SpectralState>& g) {
    std::vector<SpectralState> integral;
    integral.reserve(g.size());
    SpectralState acc(path.states.front().grid);
    acc.reality_flag = g.front().reality_flag;
    integral.push_back(acc);
    for (int m = 1; m < static_cast<int>(g.size()); ++m) {
        double h = path.times[m] - path.times[m - 1];
        SpectralState inc = acc;
        axpy(inc, 0.5 * h, g[m - 1]);
        axpy(inc, 0.5 * h, g[m]);
        acc = inc;
        integral.push_back(acc);
    }
    return integral;
}

}  // namespace

TimeSampledPath nfe_rhs(const TimeSampledPath& path, const SpectralState& u0,
                        const NfeConfig& cfg, double beta) {
    cfg.validate_fields();
    if (path.samples() < 2) throw Error("nfe_rhs: path too short");
    if (path.states.front().grid != u0.grid) throw Error("nfe_rhs: grid mismatch");
    const CutoffChain chain = cfg.chain();
    const int n_samples = path.samples();

    // Integrand sum_{k=1}^K N1^(k)(v(tau_m), tau_m) at every node.
    std::vector<SpectralState> integrand;
    integrand.reserve(n_samples);
    for (int m = 0; m < n_samples; ++m) {
        SpectralState g = eval_level(Variant::N1, 1, path.states[m], path.times[m], chain, beta);
        for (int k = 2; k <= cfg.depth; ++k)
            axpy(g, 1.0, eval_level(Variant::N1, k, path.states[m], path.times[m], chain, beta));
        integrand.push_back(std::move(g));
    }
    std::vector<SpectralState> integral = trapezoid_prefix(path, integrand);

    // Boundary terms sum_{k=2}^K N0^(k)(v(t), t), and the same at tau = 0.
    auto boundary = [&](const SpectralState& v, double t) {
        SpectralState b(v.grid);
        b.reality_flag = v.reality_flag;
        for (int k = 2; k <= cfg.depth; ++k)
            axpy(b, 1.0, eval_level(Variant::N0, k, v, t, chain, beta));
        return b;
    };
    SpectralState b0 = boundary(path.states.front(), path.times.front());

    TimeSampledPath out;
    out.direction = path.direction;
    out.times = path.times;
    out.states.reserve(n_samples);
    for (int m = 0; m < n_samples; ++m) {
        SpectralState bm = (m == 0) ? b0 : boundary(path.states[m], path.times[m]);
        SpectralState vm = u0;
        axpy(vm, 1.0, bm);
        axpy(vm, -1.0, b0);
        axpy(vm, 1.0, integral[m]);
        out.states.push_back(std::move(vm));
    }
    return out;
}

PicardResult picard_solve(const SpectralState& u0, const NfeConfig& cfg, double beta,
                          int direction) {
    cfg.validate_fields();
    if (direction != 1 && direction != -1) throw Error("picard_solve: direction must be +-1");
    double data_size = hs_norm(u0, cfg.s);
    if (data_size > cfg.r * (1.0 + 1e-12))
        throw Error("picard_solve: ||u0||_{H^s} exceeds the configured ball radius r");
    ContractionReport rep = validate_contraction_params(cfg);
    if (!rep.all_pass && !cfg.override_validation)
        throw Error("picard_solve: contraction parameter validation failed (binding: " +
                    rep.binding + ")");

    PicardResult result;
    result.path = constant_path(u0, cfg.T, cfg.time_steps, direction);
    for (int iter = 1; iter <= cfg.max_picard_iters; ++iter) {
        TimeSampledPath next = nfe_rhs(result.path, u0, cfg, beta);
        double dist = sup_hs_distance(next, result.path, cfg.s);
        result.diagnostics.distances.push_back(dist);
        if (result.diagnostics.distances.size() >= 2) {
            double prev = result.diagnostics.distances[result.diagnostics.distances.size() - 2];
            if (prev > 0.0) {
                double ratio = dist / prev;
                result.diagnostics.ratios.push_back(ratio);
                result.diagnostics.contraction_ratio =
                    std::fmax(result.diagnostics.contraction_ratio, ratio);
            }
        }
        result.path = std::move(next);
        result.diagnostics.iterations = iter;
        if (dist <= cfg.picard_tol) {
            result.diagnostics.converged = true;
            return result;
        }
    }
    throw PicardError("picard_solve: no convergence after max_picard_iters sweeps",
                      result.diagnostics.distances);
}

double duhamel_residual(const TimeSampledPath& path, const SpectralState& u0,
                        const NfeConfig& cfg, double beta) {
    if (path.samples() < 2) throw Error("duhamel_residual: path too short");
    const CutoffChain chain = cfg.chain();
    std::vector<SpectralState> integrand;
    integrand.reserve(path.samples());
    for (int m = 0; m < path.samples(); ++m)
        integrand.push_back(
            eval_level(Variant::Nfull, 1, path.states[m], path.times[m], chain, beta));
    std::vector<SpectralState> integral = trapezoid_prefix(path, integrand);

    double worst = 0.0;
    for (int m = 0; m < path.samples(); ++m) {
        SpectralState expect = u0;
        axpy(expect, 1.0, integral[m]);
        worst = std::fmax(worst, hs_norm(difference(path.states[m], expect), cfg.s));
    }
    return worst;
}

}  // namespace knfr
