#include "knfr/state.hpp"

#include <cmath>

#include "json.hpp"
#include "knfr/fft.hpp"

namespace knfr {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

void require_valid(const SpectralState& s, const char* who) {
    if (!s.valid()) throw Error(std::string(who) + ": coefficient length does not match grid");
}
}  // namespace

double hs_norm(const SpectralState& state, double s) {
    require_valid(state, "hs_norm");
    double acc = 0.0;
    for (int i = 0; i < state.grid.n; ++i) {
        double xi = state.grid.xi(i);
        double w = std::pow(1.0 + xi * xi, s);
        acc += w * std::norm(state.coeffs[i]);
    }
    return std::sqrt(state.grid.h_xi() * acc);
}

double flinf_norm(const SpectralState& state) {
    require_valid(state, "flinf_norm");
    double best = 0.0;
    for (const Complex& c : state.coeffs) best = std::fmax(best, std::abs(c));
    return best;
}

double reality_defect(const SpectralState& state) {
    require_valid(state, "reality_defect");
    const int n = state.grid.n;
    double scale = flinf_norm(state);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int m = 1; m < n / 2; ++m) {
        Complex a = state.coeffs[state.grid.index_of_mode(m)];
        Complex b = state.coeffs[state.grid.index_of_mode(-m)];
        worst = std::fmax(worst, std::abs(b - std::conj(a)));
    }
    worst = std::fmax(worst, std::fabs(state.coeffs[state.grid.index_of_mode(0)].imag()));
    return worst / scale;
}

SpectralState to_interaction(const SpectralState& u_hat, double t, double beta) {
    require_valid(u_hat, "to_interaction");
    SpectralState out = u_hat;
    for (int i = 0; i < u_hat.grid.n; ++i) {
        double xi = u_hat.grid.xi(i);
        double theta = -t * (std::pow(xi, 5) + beta * std::pow(xi, 3));
        out.coeffs[i] *= Complex(std::cos(theta), std::sin(theta));
    }
    return out;
}

SpectralState from_interaction(const SpectralState& v_hat, double t, double beta) {
    return to_interaction(v_hat, -t, beta);
}

SpectralState forward_transform_complex(const FrequencyGrid& grid, const std::vector<Complex>& samples) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw Error("forward_transform: sample count does not match grid");
    std::vector<Complex> work = samples;
    dft_inplace(work, -1);
    // work[mm] = sum_j e^{-2 pi i j mm / n}; signed mode m maps to mm = m mod n.
    SpectralState out(grid);
    const double scale = grid.h_x() / kSqrt2Pi;
    for (int i = 0; i < grid.n; ++i) {
        int m = grid.mode(i);
        int mm = m >= 0 ? m : m + grid.n;
        out.coeffs[i] = scale * work[mm];
    }
    return out;
}

SpectralState forward_transform(const FrequencyGrid& grid, const std::vector<double>& samples) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw Error("forward_transform: sample count does not match grid");
    std::vector<Complex> work(samples.begin(), samples.end());
    SpectralState out = forward_transform_complex(grid, work);
    out.reality_flag = true;
    return out;
}

std::vector<Complex> inverse_transform_complex(const SpectralState& state) {
    require_valid(state, "inverse_transform");
    const int n = state.grid.n;
    std::vector<Complex> work(n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        int m = state.grid.mode(i);
        int mm = m >= 0 ? m : m + n;
        work[mm] = state.coeffs[i];
    }
    dft_inplace(work, +1);
    const double scale = state.grid.h_xi() / kSqrt2Pi;
    for (Complex& c : work) c *= scale;
    return work;
}

std::vector<double> inverse_transform(const SpectralState& state) {
    std::vector<Complex> z = inverse_transform_complex(state);
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
    return out;
}

SpectralState& axpy(SpectralState& y, Complex a, const SpectralState& x) {
    if (y.grid != x.grid) throw Error("axpy: grid mismatch");
    for (int i = 0; i < y.grid.n; ++i) y.coeffs[i] += a * x.coeffs[i];
    y.reality_flag = y.reality_flag && x.reality_flag && a.imag() == 0.0;
    return y;
}

SpectralState scaled(const SpectralState& x, Complex a) {
    SpectralState out = x;
    for (Complex& c : out.coeffs) c *= a;
    out.reality_flag = x.reality_flag && a.imag() == 0.0;
    return out;
}

SpectralState difference(const SpectralState& a, const SpectralState& b) {
    if (a.grid != b.grid) throw Error("difference: grid mismatch");
    SpectralState out = a;
    for (int i = 0; i < a.grid.n; ++i) out.coeffs[i] -= b.coeffs[i];
    out.reality_flag = a.reality_flag && b.reality_flag;
    return out;
}

std::string state_to_json(const SpectralState& state) {
    require_valid(state, "state_to_json");
    nlohmann::json j;
    j["L"] = state.grid.L;
    j["n"] = state.grid.n;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& c : state.coeffs) coeffs.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

SpectralState state_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FrequencyGrid grid(j.at("L").get<double>(), j.at("n").get<int>());
    SpectralState out(grid);
    const auto& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != grid.n)
        throw Error("state_from_json: coefficient count does not match n");
    for (int i = 0; i < grid.n; ++i)
        out.coeffs[i] = Complex(coeffs[i][0].get<double>(), coeffs[i][1].get<double>());
    out.reality_flag = reality_defect(out) < 1e-12;
    return out;
}

}  // namespace knfr
