#pragma once

#include <cstdint>
#include <vector>

#include "hfsk/codebook.hpp"
#include "hfsk/convolutional.hpp"
#include "hfsk/marcum.hpp"

namespace hfsk {

// The four conditional hard-decision probabilities of one detector cell.
// With a PU present the SU contribution is negligible, so the PU-case
// probability does not depend on q.
struct CellLikelihoods {
    double p_b1_q1_no_pu = 0.0;
    double p_b0_q1_no_pu = 1.0;
    double p_b1_q0_no_pu = 0.0;
    double p_b0_q0_no_pu = 1.0;
    double p_b1_pu = 0.0;
    double p_b0_pu = 1.0;

    double prob(bool b, bool q, bool pu) const {
        if (pu) return b ? p_b1_pu : p_b0_pu;
        if (q) return b ? p_b1_q1_no_pu : p_b0_q1_no_pu;
        return b ? p_b1_q0_no_pu : p_b0_q0_no_pu;
    }
    // Steady-state mixture over the band's PU activity.
    double prob_mixed(bool b, bool q, double p_on) const {
        return prob(b, q, true) * p_on + prob(b, q, false) * (1.0 - p_on);
    }
};

CellLikelihoods cell_likelihoods(double es_r, double i_pu, double n0, int h);

// One simple error event: a path diverging from and remerging with the zero
// state exactly once.
struct ErrorEvent {
    std::vector<std::uint8_t> input_bits; // divergence to remerge, flush zeros included
    std::vector<int> symbols;             // branch output symbols
    std::vector<std::uint8_t> pattern;    // expanded bits (column-major matrices)
    int weight = 0;                       // expanded Hamming weight vs the zero path
    int input_weight = 0;                 // information-bit errors the event causes
};

struct WeightClass {
    int weight = 0;
    std::vector<ErrorEvent> events;
};

struct PathSpectrum {
    int h = 0;
    int d_free_star = 0;
    int z = 0;
    CodeMatrix zero_matrix;           // branch matrix of the all-zero path
    std::vector<WeightClass> classes; // ascending weight, z+1 entries

    std::size_t path_count() const {
        std::size_t n = 0;
        for (const auto& c : classes) n += c.events.size();
        return n;
    }
    // Zero-path expansion matching an event's length.
    std::vector<std::uint8_t> zero_pattern(std::size_t branches) const;
};

// All simple error events of the z+1 lowest expanded-weight classes.
PathSpectrum enumerate_paths(const Trellis& trellis, int z);

// Expanded pattern of the all-zero-input codeword over `branches` stages.
std::vector<std::uint8_t> zero_path_pattern(const Trellis& trellis, std::size_t branches);

// Literal stage-wise product: probability that the channel outputs exactly
// the competing pattern given the transmitted one, each cell mixed over its
// band's steady-state PU probability. p_on_per_band[j] in [0,1].
double path_pair_probability(const std::vector<std::uint8_t>& transmitted,
                             const std::vector<std::uint8_t>& competing, const CellLikelihoods& like,
                             const std::vector<double>& p_on_per_band, int h);

enum class TieRule { HalfError, FullError, NoError };

// Probability that hard-decision Viterbi prefers the competing pattern:
// more than half of the differing cells must land on the competitor, ties
// weighted per the rule. Exact Poisson-binomial over the differing cells,
// PU activity entering as the per-cell steady-state mixture.
double pairwise_error_probability(const std::vector<std::uint8_t>& transmitted,
                                  const std::vector<std::uint8_t>& competing, const CellLikelihoods& like,
                                  const std::vector<double>& p_on_per_band, int h,
                                  TieRule tie = TieRule::HalfError);

struct BerEstimate {
    double value = 0.0;
    int z_used = 0;
    std::vector<double> per_d_contributions; // one entry per weight class
};

struct BerOptions {
    TieRule tie = TieRule::HalfError;
    // Weight events by their information-bit error count (the standard
    // union-bound bit weighting) rather than counting each path once.
    bool bit_weighted = true;
};

// Truncated union-bound BER: every stored path evaluated individually
// against the zero path (band-asymmetric PU statistics make equal-weight
// paths unequal), clamped to [0,1].
BerEstimate approximate_ber(const PathSpectrum& spectrum, const CellLikelihoods& like,
                            const std::vector<double>& p_on_per_band, BerOptions opts = {});

// Expected throughput, Eq.-(19) style: (1 - PER) * Rp * L with
// PER = 1 - (1 - Pe)^L.
double expected_throughput(double pe, int packet_bits, double packets_per_s);

// Proposition-1 style invariance check: the truncated bound evaluated
// against `trials` random transmitted codewords, each event mapped through
// the row-preserving index permutation that carries the zero codeword onto
// the transmitted one. Returns the maximum |bound(c) - bound(0)|.
// p_on_cell(band, global_step) supplies the per-cell On probability;
// row-constant profiles must yield spread ~0, row-varying ones need not.
struct Proposition1Result {
    double bound_zero = 0.0;
    double max_spread = 0.0;
};

using POnProfile = std::vector<std::vector<double>>; // [band][global step]

Proposition1Result proposition1_check(const Trellis& trellis, const CellLikelihoods& like,
                                      const POnProfile& p_on_cell, int z, int trials, std::uint64_t seed);

// Convenience profiles for the check.
POnProfile row_constant_profile(const std::vector<double>& p_on_per_band, int h, std::size_t steps);
POnProfile row_varying_profile(const std::vector<double>& p_on_per_band, int h, std::size_t steps);

} // namespace hfsk
