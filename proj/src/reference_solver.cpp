#include "knfr/reference_solver.hpp"

#include <cmath>

namespace knfr {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

std::vector<double> dealias_mask(const FrequencyGrid& g, double fraction) {
    std::vector<double> mask(g.n, 0.0);
    double cut = fraction * g.xi_max();
    for (int i = 0; i < g.n; ++i) mask[i] = (std::fabs(g.xi(i)) <= cut) ? 1.0 : 0.0;
    return mask;
}

// Nonlinear term -i xi sqrt(2 pi) F((F^{-1} masked u)^2) masked; matches the
// lattice-weighted convolution h_xi * sum u_hat u_hat on the retained band.
SpectralState nonlinear_term(const SpectralState& u_hat, const std::vector<double>& mask) {
    const FrequencyGrid& g = u_hat.grid;
    SpectralState masked = u_hat;
    for (int i = 0; i < g.n; ++i) masked.coeffs[i] *= mask[i];
    std::vector<Complex> phys = inverse_transform_complex(masked);
    for (Complex& z : phys) z *= z;
    SpectralState prod = forward_transform_complex(g, phys);
    SpectralState out(g);
    out.reality_flag = u_hat.reality_flag;
    for (int i = 0; i < g.n; ++i) {
        double xi = g.xi(i);
        out.coeffs[i] = Complex(0.0, -xi) * kSqrt2Pi * prod.coeffs[i] * mask[i];
    }
    return out;
}

bool state_finite(const SpectralState& s) {
    for (const Complex& c : s.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

std::vector<Complex> linear_phase(const FrequencyGrid& g, double beta, double dt) {
    std::vector<Complex> e(g.n);
    for (int i = 0; i < g.n; ++i) {
        double xi = g.xi(i);
        double theta = dt * (std::pow(xi, 5) + beta * std::pow(xi, 3));
        e[i] = Complex(std::cos(theta), std::sin(theta));
    }
    return e;
}

SpectralState apply_phase(const SpectralState& s, const std::vector<Complex>& e) {
    SpectralState out = s;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= e[i];
    return out;
}

SpectralState step_impl(const SpectralState& u_hat, double dt, const RefConfig& cfg,
                        const std::vector<double>& mask) {
    const FrequencyGrid& g = u_hat.grid;
    if (cfg.disable_nonlinearity) {
        return apply_phase(u_hat, linear_phase(g, cfg.beta, dt));
    }
    // RK4 in the step-local interaction variable w(tau) = e^{-L tau} u(t+tau):
    //   dw/dtau = e^{-L tau} N(e^{L tau} w)
    std::vector<Complex> Eh = linear_phase(g, cfg.beta, 0.5 * dt);
    std::vector<Complex> Eh_inv = linear_phase(g, cfg.beta, -0.5 * dt);
    std::vector<Complex> Ef = linear_phase(g, cfg.beta, dt);
    std::vector<Complex> Ef_inv = linear_phase(g, cfg.beta, -dt);

    auto rhs_at = [&](const SpectralState& w, const std::vector<Complex>* fwd,
                      const std::vector<Complex>* inv) {
        SpectralState u = fwd ? apply_phase(w, *fwd) : w;
        SpectralState n = nonlinear_term(u, mask);
        return inv ? apply_phase(n, *inv) : n;
    };

    SpectralState k1 = rhs_at(u_hat, nullptr, nullptr);
    SpectralState w2 = u_hat;
    axpy(w2, 0.5 * dt, k1);
    SpectralState k2 = rhs_at(w2, &Eh, &Eh_inv);
    SpectralState w3 = u_hat;
    axpy(w3, 0.5 * dt, k2);
    SpectralState k3 = rhs_at(w3, &Eh, &Eh_inv);
    SpectralState w4 = u_hat;
    axpy(w4, dt, k3);
    SpectralState k4 = rhs_at(w4, &Ef, &Ef_inv);

    SpectralState w = u_hat;
    axpy(w, dt / 6.0, k1);
    axpy(w, dt / 3.0, k2);
    axpy(w, dt / 3.0, k3);
    axpy(w, dt / 6.0, k4);
    return apply_phase(w, Ef);
}

}  // namespace

void RefConfig::validate() const {
    if (!(dt > 0.0)) throw Error("RefConfig: dt must be positive");
    if (!(T > 0.0)) throw Error("RefConfig: T must be positive");
    if (!(dt <= T)) throw Error("RefConfig: dt must not exceed T");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw Error("RefConfig: dealias fraction must lie in (0, 1]");
    if (sample_stride < 1) throw Error("RefConfig: sample stride must be >= 1");
}

SpectralState reference_step(const SpectralState& u_hat, double dt, const RefConfig& cfg) {
    if (!u_hat.valid()) throw Error("reference_step: invalid state");
    std::vector<double> mask = dealias_mask(u_hat.grid, cfg.dealias_fraction);
    SpectralState out = step_impl(u_hat, dt, cfg, mask);
    if (!state_finite(out)) throw BlowUpError("reference_step: non-finite state", 0);
    return out;
}

ReferenceSolution reference_solve(const SpectralState& u0, const RefConfig& cfg, int direction) {
    cfg.validate();
    if (!u0.valid()) throw Error("reference_solve: invalid initial state");
    if (direction != 1 && direction != -1) throw Error("reference_solve: direction must be +-1");

    const std::vector<double> mask = dealias_mask(u0.grid, cfg.dealias_fraction);
    const double dt = direction * cfg.dt;
    const long total_steps = std::lround(cfg.T / cfg.dt);

    ReferenceSolution sol;
    sol.u_path.direction = direction;
    sol.v_path.direction = direction;

    auto record = [&](const SpectralState& u_hat, long step) {
        double t = static_cast<double>(step) * dt;
        SpectralState v = to_interaction(u_hat, t, cfg.beta);
        sol.v_path.times.push_back(t);
        sol.v_path.states.push_back(v);
        sol.u_path.times.push_back(t);
        sol.u_path.states.push_back(from_interaction(v, t, cfg.beta));
    };

    SpectralState u_hat = u0;
    record(u_hat, 0);
    for (long step = 1; step <= total_steps; ++step) {
        u_hat = step_impl(u_hat, dt, cfg, mask);
        if (!state_finite(u_hat)) throw BlowUpError("reference_solve: blow-up detected", step);
        if (step % cfg.sample_stride == 0 || step == total_steps) record(u_hat, step);
    }
    return sol;
}

}  // namespace knfr
