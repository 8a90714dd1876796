#pragma once

//==============================================================================
// Spectral states on a truncated frequency lattice, their norms, the discrete
// Fourier transform pair, and the linear-propagator gauge.
//
// Transform convention (fixed here, used everywhere else):
//
//   v_hat(xi_m) = (h_x / sqrt(2*pi)) * sum_j e^{-i x_j xi_m} u(x_j)
//   u(x_j)      = (h_xi / sqrt(2*pi)) * sum_m e^{+i x_j xi_m} v_hat(xi_m)
//
// With h_x*h_xi*n = 2*pi this pair is mutually inverse and Parseval is
// unitary:  h_xi * sum |v_hat|^2 = h_x * sum |u|^2.  Under it the transform
// of a pointwise product carries exactly the lattice weight h_xi:
//
//   sqrt(2*pi) * F(u1*u2)(xi) = h_xi * sum_{xi1+xi2=xi} u1_hat(xi1) u2_hat(xi2)
//
// (equality modulo aliasing/truncation), which is the discrete realization of
// the bilinear frequency integral used by every interaction operator in this
// project. All constant factors live in that single h_xi weight; no other 2*pi
// appears anywhere downstream.
//==============================================================================

#include <complex>
#include <string>
#include <vector>

#include "knfr/grid.hpp"

namespace knfr {

using Complex = std::complex<double>;

struct SpectralState {
    FrequencyGrid grid;
    std::vector<Complex> coeffs;  // coeffs[i] = v_hat(grid.xi(i))
    bool reality_flag = false;    // v_hat(-xi) == conj(v_hat(xi)) claimed

    SpectralState() = default;
    explicit SpectralState(const FrequencyGrid& g, bool real_field = false)
        : grid(g), coeffs(g.n, Complex(0.0, 0.0)), reality_flag(real_field) {}

    bool valid() const { return static_cast<int>(coeffs.size()) == grid.n; }
};

// ||v||_{H^s} = ( h_xi * sum <xi>^{2s} |v_hat|^2 )^{1/2},  <xi> = (1+xi^2)^{1/2}
double hs_norm(const SpectralState& state, double s);

// sup_xi |v_hat(xi)|
double flinf_norm(const SpectralState& state);

// Largest Hermitian-symmetry violation |v_hat(-xi) - conj(v_hat(xi))| over the
// paired modes, relative to the largest coefficient. Nyquist has no partner
// and is skipped.
double reality_defect(const SpectralState& state);

// Gauge of the linear Kawahara flow: multiply mode xi by e^{-i t (xi^5 + beta xi^3)}.
SpectralState to_interaction(const SpectralState& u_hat, double t, double beta);
// Exact inverse phase (computed as the t -> -t gauge, so the phases are
// bitwise conjugate).
SpectralState from_interaction(const SpectralState& v_hat, double t, double beta);

// Discrete transform pair in the convention above. forward_transform expects
// exactly grid.n physical samples on x_j = j*L/n.
SpectralState forward_transform(const FrequencyGrid& grid, const std::vector<double>& samples);
std::vector<double> inverse_transform(const SpectralState& state);
// Complex-valued inverse (no reality assumption); used by the time steppers.
std::vector<Complex> inverse_transform_complex(const SpectralState& state);
SpectralState forward_transform_complex(const FrequencyGrid& grid, const std::vector<Complex>& samples);

// Linear algebra on states sharing one grid.
SpectralState& axpy(SpectralState& y, Complex a, const SpectralState& x);  // y += a*x
SpectralState scaled(const SpectralState& x, Complex a);
SpectralState difference(const SpectralState& a, const SpectralState& b);

// JSON wire format {"L":..., "n":..., "coeffs":[[re,im],...]}; numbers are
// emitted so that parsing restores bit-identical doubles.
std::string state_to_json(const SpectralState& state);
SpectralState state_from_json(const std::string& text);

}  // namespace knfr
