#include <doctest.h>

#include <bit>
#include <stdexcept>

#include "hfsk/analysis.hpp"
#include "hfsk/decoder.hpp"
#include "hfsk/rng.hpp"

using namespace hfsk;

namespace {

std::vector<ReceivedMatrix> as_received(const Trellis& trellis, const std::vector<int>& symbols) {
    std::vector<CodeMatrix> symbol_matrix(static_cast<std::size_t>(trellis.symbol_count));
    for (const auto& row : trellis.branches)
        for (const auto& br : row) symbol_matrix[static_cast<std::size_t>(br.output_symbol)] = br.matrix;
    std::vector<ReceivedMatrix> out;
    for (int s : symbols) out.push_back({trellis.h, symbol_matrix[static_cast<std::size_t>(s)].mask});
    return out;
}

Trellis h3_trellis() { return build_trellis(ConvCode::standard_7_5(), PermutationMapping::builtin(3)); }

} // namespace

TEST_CASE("noiseless round trip decodes exactly") {
    const auto trellis = h3_trellis();
    const std::vector<std::uint8_t> bits{1, 0, 0};
    const auto received = as_received(trellis, encode(trellis.code, bits, true));
    const auto result = viterbi_decode(trellis, received, 3);
    CHECK(result.bits == bits);
    CHECK(result.path_metric == 0);
}

TEST_CASE("all-zero received matrices cost H per stage against the zero path") {
    const auto trellis = h3_trellis();
    const int packet = 4;
    std::vector<ReceivedMatrix> received(static_cast<std::size_t>(packet + 2), ReceivedMatrix{3, 0});
    const auto result = viterbi_decode(trellis, received, packet);
    CHECK(result.bits == std::vector<std::uint8_t>(4, 0));
    CHECK(result.path_metric == (packet + 2) * 3);
}

TEST_CASE("single flipped cell never changes the decision") {
    const auto trellis = h3_trellis();
    const std::vector<std::uint8_t> bits{1, 1, 0, 1, 0};
    const auto clean = as_received(trellis, encode(trellis.code, bits, true));
    for (std::size_t u = 0; u < clean.size(); ++u) {
        for (int cell = 0; cell < 9; ++cell) {
            auto corrupted = clean;
            corrupted[u].mask ^= 1u << cell;
            const auto result = viterbi_decode(trellis, corrupted, static_cast<int>(bits.size()));
            CHECK(result.bits == bits);
        }
    }
}

TEST_CASE("random packets round trip with metric zero") {
    const auto trellis = h3_trellis();
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        Philox rng(41, 15, trial);
        std::vector<std::uint8_t> bits(24);
        for (auto& b : bits) b = rng.bernoulli(0.5);
        const auto received = as_received(trellis, encode(trellis.code, bits, true));
        const auto result = viterbi_decode(trellis, received, static_cast<int>(bits.size()));
        CHECK(result.bits == bits);
        CHECK(result.path_metric == 0);
    }
}

TEST_CASE("survivor metric never exceeds the true path metric") {
    const auto trellis = h3_trellis();
    DerivedEnergies e;
    e.es_r = 1.0;
    e.i_pu = 0.0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Philox rng(43, 16, trial);
        std::vector<std::uint8_t> bits(16);
        for (auto& b : bits) b = rng.bernoulli(0.5);
        const auto symbols = encode(trellis.code, bits, true);
        const auto clean = as_received(trellis, symbols);
        std::vector<ReceivedMatrix> noisy = clean;
        const std::vector<std::uint8_t> no_pu(9, 0);
        long true_metric = 0;
        for (std::size_t u = 0; u < noisy.size(); ++u) {
            const CodeMatrix t{3, clean[u].mask};
            noisy[u] = transmit_matrix(t, no_pu, e, 1.0, rng);
            true_metric += std::popcount(noisy[u].mask ^ clean[u].mask);
        }
        const auto result = viterbi_decode(trellis, noisy, static_cast<int>(bits.size()));
        CHECK(result.path_metric <= true_metric);
    }
}

TEST_CASE("decoding is deterministic, ties included") {
    const auto trellis = h3_trellis();
    // All-zero received ties every stage heavily; two runs must agree.
    std::vector<ReceivedMatrix> received(8, ReceivedMatrix{3, 0});
    const auto a = viterbi_decode(trellis, received, 6);
    const auto b = viterbi_decode(trellis, received, 6);
    CHECK(a.bits == b.bits);
    CHECK(a.path_metric == b.path_metric);
    CHECK(a.tie_count == b.tie_count);
    CHECK(a.tie_count > 0);
}

TEST_CASE("length mismatch is a domain error") {
    const auto trellis = h3_trellis();
    std::vector<ReceivedMatrix> received(4, ReceivedMatrix{3, 0});
    CHECK_THROWS_AS(viterbi_decode(trellis, received, 4), std::invalid_argument);
}

TEST_CASE("identity code decodes per-branch nearest matrices") {
    const auto trellis = build_trellis(ConvCode::identity(), PermutationMapping::builtin(2));
    // Received exactly T2 = permutation 21.
    const auto received = as_received(trellis, {1, 0, 1});
    const auto result = viterbi_decode(trellis, received, 3);
    CHECK(result.bits == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(result.path_metric == 0);
}
