#include "hfsk/decoder.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace hfsk {

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

DecodeResult run_viterbi(const Trellis& trellis, int packet_bits, int stages,
                         const std::vector<std::vector<int>>& branch_metric) {
    // branch_metric[stage] indexed by output symbol.
    const int states = trellis.state_count();
    std::vector<long> metric(static_cast<std::size_t>(states), kInf);
    std::vector<long> next_metric(static_cast<std::size_t>(states));
    metric[0] = 0;
    // Survivor bookkeeping: predecessor state and input bit per (stage, state).
    std::vector<std::int16_t> prev(static_cast<std::size_t>(stages) * states, -1);
    std::vector<std::int8_t> inbit(static_cast<std::size_t>(stages) * states, 0);
    long tie_count = 0;

    for (int u = 0; u < stages; ++u) {
        const bool flush = u >= packet_bits;
        std::fill(next_metric.begin(), next_metric.end(), kInf);
        auto* prev_row = &prev[static_cast<std::size_t>(u) * states];
        auto* bit_row = &inbit[static_cast<std::size_t>(u) * states];
        for (int s = 0; s < states; ++s) {
            const long base = metric[static_cast<std::size_t>(s)];
            if (base >= kInf) continue;
            const int max_input = flush ? 0 : 1;
            for (int input = 0; input <= max_input; ++input) {
                const auto& br = trellis.branches[static_cast<std::size_t>(s)][static_cast<std::size_t>(input)];
                const long cand = base + branch_metric[static_cast<std::size_t>(u)]
                                             [static_cast<std::size_t>(br.output_symbol)];
                long& cur = next_metric[static_cast<std::size_t>(br.next_state)];
                if (cand < cur) {
                    cur = cand;
                    prev_row[br.next_state] = static_cast<std::int16_t>(s);
                    bit_row[br.next_state] = static_cast<std::int8_t>(input);
                } else if (cand == cur && cur < kInf) {
                    // Tie: the earlier (smaller) predecessor index already
                    // holds the slot because states are scanned ascending.
                    ++tie_count;
                }
            }
        }
        metric.swap(next_metric);
    }

    const int final_state = 0;
    if (metric[0] >= kInf) throw std::logic_error("viterbi: zero state unreachable");

    DecodeResult result;
    result.path_metric = metric[0];
    result.tie_count = tie_count;
    result.bits.resize(static_cast<std::size_t>(stages));
    int s = final_state;
    for (int u = stages - 1; u >= 0; --u) {
        result.bits[static_cast<std::size_t>(u)] =
            static_cast<std::uint8_t>(inbit[static_cast<std::size_t>(u) * states + s]);
        s = prev[static_cast<std::size_t>(u) * states + s];
    }
    result.bits.resize(static_cast<std::size_t>(packet_bits));
    return result;
}

} // namespace

DecodeResult viterbi_decode(const Trellis& trellis, const std::vector<ReceivedMatrix>& received,
                            int packet_bits) {
    const int stages = packet_bits + trellis.code.memory;
    if (static_cast<int>(received.size()) != stages)
        throw std::invalid_argument("viterbi_decode: expected L + memory received matrices");
    std::vector<std::vector<int>> metrics(static_cast<std::size_t>(stages),
                                          std::vector<int>(static_cast<std::size_t>(trellis.symbol_count)));
    // Branch metric = cell Hamming distance between the received matrix and
    // the branch's code matrix; precompute per stage per symbol.
    std::vector<std::uint32_t> symbol_mask(static_cast<std::size_t>(trellis.symbol_count));
    for (const auto& row : trellis.branches)
        for (const auto& br : row)
            symbol_mask[static_cast<std::size_t>(br.output_symbol)] = br.matrix.mask;
    for (int u = 0; u < stages; ++u) {
        if (received[static_cast<std::size_t>(u)].h != trellis.h)
            throw std::invalid_argument("viterbi_decode: received matrix H mismatch");
        for (int sym = 0; sym < trellis.symbol_count; ++sym)
            metrics[static_cast<std::size_t>(u)][static_cast<std::size_t>(sym)] = std::popcount(
                received[static_cast<std::size_t>(u)].mask ^ symbol_mask[static_cast<std::size_t>(sym)]);
    }
    return run_viterbi(trellis, packet_bits, stages, metrics);
}

DecodeResult viterbi_decode_metrics(const Trellis& trellis,
                                    const std::vector<std::vector<int>>& symbol_metrics, int packet_bits) {
    const int stages = packet_bits + trellis.code.memory;
    if (static_cast<int>(symbol_metrics.size()) != stages)
        throw std::invalid_argument("viterbi_decode_metrics: expected L + memory stages");
    return run_viterbi(trellis, packet_bits, stages, symbol_metrics);
}

} // namespace hfsk
