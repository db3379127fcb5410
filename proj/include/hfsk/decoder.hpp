#pragma once

#include <cstdint>
#include <vector>

#include "hfsk/channel.hpp"
#include "hfsk/convolutional.hpp"

namespace hfsk {

struct DecodeResult {
    std::vector<std::uint8_t> bits; // L information bits
    long path_metric = 0;           // cumulative Hamming distance of the survivor
    long tie_count = 0;             // metric ties broken during decoding
};

// Minimum-cumulative-Hamming-distance terminated path. The received
// sequence must hold L + memory matrices; the trailing `memory` stages are
// flush stages and only admit input 0. Ties keep the survivor coming from
// the smaller previous-state index.
DecodeResult viterbi_decode(const Trellis& trellis, const std::vector<ReceivedMatrix>& received, int packet_bits);

// Same algorithm over an arbitrary per-stage branch metric: metric(stage,
// branch) with the branch identified by its output symbol. Used by the
// binary-coded baseline and the exhaustive oracle.
DecodeResult viterbi_decode_metrics(const Trellis& trellis,
                                    const std::vector<std::vector<int>>& symbol_metrics, int packet_bits);

} // namespace hfsk
