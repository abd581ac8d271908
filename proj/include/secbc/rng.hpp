#pragma once

// Philox4x32-10 counter-based generator. Every random draw in the library is
// addressed by (seed, domain, a, b, c) so results never depend on call order
// or thread scheduling.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace secbc {

namespace philox {

using Ctr = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Ctr round(Ctr c, Key k) {
    constexpr std::uint64_t M0 = 0xD2511F53u;
    constexpr std::uint64_t M1 = 0xCD9E8D57u;
    std::uint64_t p0 = M0 * c[0];
    std::uint64_t p1 = M1 * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

inline Ctr block(Ctr c, Key k) {
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            k[0] += W0;
            k[1] += W1;
        }
        c = round(c, k);
    }
    return c;
}

}  // namespace philox

// Domains keep independent uses of the same seed apart.
enum class Domain : std::uint32_t {
    resolvability_codebook = 1,
    resolvability_encoder = 2,
    bc_u0 = 3,
    bc_u1 = 4,
    bc_u2 = 5,
    bc_trial = 6,
    aux_sample = 7,
    seed_draw = 8,
    test = 99,
};

class CounterRng {
public:
    CounterRng(std::uint64_t seed, Domain domain, std::uint32_t a = 0, std::uint32_t b = 0,
               std::uint32_t c = 0)
        : key_{static_cast<std::uint32_t>(seed) ^ (static_cast<std::uint32_t>(domain) * 0x85EBCA6Bu),
               static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, a, b, c} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox::block(ctr_, key_);
            ++ctr_[0];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on [0,1) with 53 bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1].
    double uniform_pos() { return 1.0 - uniform(); }

    double exponential() { return -std::log(uniform_pos()); }

    std::uint64_t below(std::uint64_t n) {
        // Lemire-free rejection: n is small everywhere it is used.
        const std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= lim);
        return x % n;
    }

    std::size_t categorical(const double* p, std::size_t k) {
        double u = uniform();
        double acc = 0.0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (p[i] <= 0.0) continue;
            last = i;
            acc += p[i];
            if (u < acc) return i;
        }
        return last;
    }

private:
    philox::Key key_;
    philox::Ctr ctr_;
    philox::Ctr buf_{};
    int pos_ = 4;
};

}  // namespace secbc
