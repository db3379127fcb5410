#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hfsk {

// Philox4x32-10 counter-based generator. Streams are cheap to construct,
// so every Monte Carlo packet owns one keyed by (master seed, stream id,
// packet index); results are then independent of worker count and
// iteration order.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream, std::uint64_t packet) {
        // SplitMix64 mixing to decorrelate nearby (seed, stream, packet)
        // triples before they become Philox keys/counters.
        std::uint64_t k = mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ull));
        key_[0] = static_cast<std::uint32_t>(k);
        key_[1] = static_cast<std::uint32_t>(k >> 32);
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(packet);
        ctr_[3] = static_cast<std::uint32_t>(packet >> 32);
        pos_ = 4;
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = generate();
            bump_counter();
            pos_ = 0;
        }
        return block_[pos_++];
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        const std::uint64_t bits = ((hi >> 6) << 27) | (lo >> 5); // 26 + 27
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe as a log() argument.
    double next_double_open() { return 1.0 - next_double(); }

    double uniform_angle() { return 2.0 * std::numbers::pi * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

    // Box-Muller pair, N(0, 1) each.
    std::array<double, 2> next_normal_pair() {
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    static std::uint64_t mix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::array<std::uint32_t, 4> generate() const {
        std::array<std::uint32_t, 4> c = ctr_;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return c;
    }

    void bump_counter() {
        if (++ctr_[0] == 0 && ++ctr_[1] == 0) {
            ++ctr_[2];
        }
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> block_;
    int pos_;
};

} // namespace hfsk
