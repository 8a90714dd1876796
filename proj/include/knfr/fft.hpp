#pragma once

#include <complex>
#include <vector>

namespace knfr {

// In-place complex DFT, sign = -1 for e^{-i...} kernels, +1 for e^{+i...}.
// No normalization is applied. Radix-2 for power-of-two lengths, direct
// O(n^2) evaluation otherwise (grids here are small).
void dft_inplace(std::vector<std::complex<double>>& data, int sign);

}  // namespace knfr
