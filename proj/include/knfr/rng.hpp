#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace knfr {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Pure function of (key, counter): streams can be split per sample and
// drawn in parallel with results independent of thread scheduling.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          c2_(static_cast<std::uint32_t>(stream)),
          c3_(static_cast<std::uint32_t>(stream >> 32)) {}

    // The i-th 128-bit block of this stream.
    void block(std::uint64_t index, std::uint32_t out[4]) const {
        std::uint32_t ctr[4] = {static_cast<std::uint32_t>(index),
                                static_cast<std::uint32_t>(index >> 32), c2_, c3_};
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            one_round(ctr, k0, k1);
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out[0] = ctr[0]; out[1] = ctr[1]; out[2] = ctr[2]; out[3] = ctr[3];
    }

    // Two uniforms in (0, 1] from one block.
    std::pair<double, double> uniform2(std::uint64_t index) const {
        std::uint32_t b[4];
        block(index, b);
        auto u64 = [](std::uint32_t hi, std::uint32_t lo) {
            return (static_cast<std::uint64_t>(hi) << 32) | lo;
        };
        constexpr double scale = 1.0 / 18446744073709551616.0;  // 2^-64
        double u1 = (static_cast<double>(u64(b[0], b[1])) + 1.0) * scale;
        double u2 = (static_cast<double>(u64(b[2], b[3])) + 1.0) * scale;
        return {u1, u2};
    }

    // Standard complex-normal pair (Box-Muller), one block per draw.
    std::pair<double, double> gaussian2(std::uint64_t index) const {
        auto [u1, u2] = uniform2(index);
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static void one_round(std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1) {
        auto mulhilo = [](std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
            std::uint64_t p = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(p >> 32);
            lo = static_cast<std::uint32_t>(p);
        };
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(0xD2511F53u, ctr[0], hi0, lo0);
        mulhilo(0xCD9E8D57u, ctr[2], hi1, lo1);
        std::uint32_t r0 = hi1 ^ ctr[1] ^ k0;
        std::uint32_t r1 = lo1;
        std::uint32_t r2 = hi0 ^ ctr[3] ^ k1;
        std::uint32_t r3 = lo0;
        ctr[0] = r0; ctr[1] = r1; ctr[2] = r2; ctr[3] = r3;
    }

    std::uint32_t key0_, key1_, c2_, c3_;
};

}  // namespace knfr
