#include "hfsk/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include "hfsk/channel.hpp"
#include "hfsk/rng.hpp"

namespace hfsk {

CellLikelihoods cell_likelihoods(double es_r, double i_pu, double n0, int h) {
    if (n0 <= 0.0) throw std::invalid_argument("cell_likelihoods: N0 must be positive");
    if (es_r <= 0.0 || i_pu < 0.0 || h < 1) throw std::invalid_argument("cell_likelihoods: invalid energies");
    CellLikelihoods like;
    const double w = kThresholdFactor * std::sqrt(2.0 * es_r / n0);
    like.p_b1_q1_no_pu = marcum_q1(std::sqrt(2.0 * es_r / (h * n0)), w);
    like.p_b1_q0_no_pu = std::exp(-0.36 * es_r / n0);
    like.p_b1_pu = marcum_q1(std::sqrt(2.0 * i_pu / (h * n0)), w);
    like.p_b0_q1_no_pu = 1.0 - like.p_b1_q1_no_pu;
    like.p_b0_q0_no_pu = 1.0 - like.p_b1_q0_no_pu;
    like.p_b0_pu = 1.0 - like.p_b1_pu;
    return like;
}

namespace {

struct Partial {
    int state;
    int weight;
    std::vector<std::uint8_t> inputs;
    std::vector<int> symbols;
};

// All simple error events with expanded weight <= bound. Events leave the
// zero state on a nonzero input and end on the first return to it. A depth
// guard catches catastrophic configurations (zero-weight loops).
void enumerate_up_to(const Trellis& trellis, int bound, std::vector<ErrorEvent>& out) {
    const std::uint32_t zero_mask = trellis.branches[0][0].matrix.mask;
    const std::size_t max_len = 16 + static_cast<std::size_t>(trellis.state_count()) *
                                         static_cast<std::size_t>(bound / 2 + 2);
    std::vector<Partial> stack;
    {
        const auto& br = trellis.branches[0][1];
        const int w = std::popcount(br.matrix.mask ^ zero_mask);
        if (w <= bound) stack.push_back({br.next_state, w, {1}, {br.output_symbol}});
    }
    while (!stack.empty()) {
        Partial cur = std::move(stack.back());
        stack.pop_back();
        if (cur.state == 0) {
            ErrorEvent ev;
            ev.input_bits = cur.inputs;
            ev.symbols = cur.symbols;
            ev.weight = cur.weight;
            for (std::uint8_t b : cur.inputs) ev.input_weight += b;
            out.push_back(std::move(ev));
            continue;
        }
        if (cur.inputs.size() >= max_len)
            throw std::runtime_error("enumerate_paths: event length guard tripped (catastrophic code?)");
        // Push input 1 first so input 0 is explored first when popping,
        // keeping enumeration order deterministic.
        for (int input = 1; input >= 0; --input) {
            const auto& br = trellis.branches[static_cast<std::size_t>(cur.state)][static_cast<std::size_t>(input)];
            const int w = cur.weight + std::popcount(br.matrix.mask ^ zero_mask);
            if (w > bound) continue;
            Partial next;
            next.state = br.next_state;
            next.weight = w;
            next.inputs = cur.inputs;
            next.inputs.push_back(static_cast<std::uint8_t>(input));
            next.symbols = cur.symbols;
            next.symbols.push_back(br.output_symbol);
            stack.push_back(std::move(next));
        }
    }
}

int free_distance(const Trellis& trellis) {
    // Uniform-cost search from the diverging branch back to state 0.
    const std::uint32_t zero_mask = trellis.branches[0][0].matrix.mask;
    using Node = std::pair<int, int>; // (weight, state)
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    std::vector<int> settled(static_cast<std::size_t>(trellis.state_count()), 0);
    {
        const auto& br = trellis.branches[0][1];
        const int w = std::popcount(br.matrix.mask ^ zero_mask);
        if (br.next_state == 0) return w; // memory-0 pass-through
        pq.push({w, br.next_state});
    }
    while (!pq.empty()) {
        auto [w, s] = pq.top();
        pq.pop();
        if (settled[static_cast<std::size_t>(s)]) continue;
        settled[static_cast<std::size_t>(s)] = 1;
        for (int input = 0; input < 2; ++input) {
            const auto& br = trellis.branches[static_cast<std::size_t>(s)][static_cast<std::size_t>(input)];
            const int nw = w + std::popcount(br.matrix.mask ^ zero_mask);
            if (br.next_state == 0) return nw;
            if (!settled[static_cast<std::size_t>(br.next_state)]) pq.push({nw, br.next_state});
        }
    }
    throw std::runtime_error("enumerate_paths: no remerging path exists");
}

} // namespace

std::vector<std::uint8_t> PathSpectrum::zero_pattern(std::size_t branches) const {
    std::vector<std::uint8_t> bits;
    bits.reserve(branches * static_cast<std::size_t>(h) * h);
    for (std::size_t u = 0; u < branches; ++u) append_matrix_bits(zero_matrix, bits);
    return bits;
}

PathSpectrum enumerate_paths(const Trellis& trellis, int z) {
    if (z < 0) throw std::invalid_argument("enumerate_paths: z must be nonnegative");
    PathSpectrum spec;
    spec.h = trellis.h;
    spec.z = z;
    spec.zero_matrix = trellis.branches[0][0].matrix;
    spec.d_free_star = free_distance(trellis);

    std::vector<CodeMatrix> symbol_matrix(static_cast<std::size_t>(trellis.symbol_count));
    for (const auto& row : trellis.branches)
        for (const auto& br : row) symbol_matrix[static_cast<std::size_t>(br.output_symbol)] = br.matrix;

    const int quantum = 2 * trellis.h; // largest per-branch weight step
    int bound = spec.d_free_star + z * quantum;
    const int bound_cap = spec.d_free_star + (z + 2) * quantum;
    std::vector<ErrorEvent> events;
    std::map<int, std::vector<ErrorEvent>> by_weight;
    for (;;) {
        events.clear();
        enumerate_up_to(trellis, bound, events);
        by_weight.clear();
        for (auto& ev : events) by_weight[ev.weight].push_back(std::move(ev));
        if (static_cast<int>(by_weight.size()) >= z + 1 || bound >= bound_cap) break;
        bound += quantum;
    }

    // Memory-0 codes have finitely many classes; keep what exists.
    int kept = 0;
    for (auto& [w, evs] : by_weight) {
        if (kept > z) break;
        WeightClass cls;
        cls.weight = w;
        cls.events = std::move(evs);
        for (auto& ev : cls.events) {
            ev.pattern.reserve(ev.symbols.size() * static_cast<std::size_t>(trellis.h) * trellis.h);
            for (int sym : ev.symbols)
                append_matrix_bits(symbol_matrix[static_cast<std::size_t>(sym)], ev.pattern);
        }
        spec.classes.push_back(std::move(cls));
        ++kept;
    }
    if (spec.classes.empty() || spec.classes.front().weight != spec.d_free_star)
        throw std::logic_error("enumerate_paths: lowest class does not match the free distance");
    spec.z = static_cast<int>(spec.classes.size()) - 1;
    return spec;
}

std::vector<std::uint8_t> zero_path_pattern(const Trellis& trellis, std::size_t branches) {
    std::vector<std::uint8_t> bits;
    bits.reserve(branches * static_cast<std::size_t>(trellis.h) * trellis.h);
    for (std::size_t u = 0; u < branches; ++u) append_matrix_bits(trellis.branches[0][0].matrix, bits);
    return bits;
}

double path_pair_probability(const std::vector<std::uint8_t>& transmitted,
                             const std::vector<std::uint8_t>& competing, const CellLikelihoods& like,
                             const std::vector<double>& p_on_per_band, int h) {
    if (transmitted.size() != competing.size())
        throw std::invalid_argument("path_pair_probability: pattern length mismatch");
    const std::size_t block = static_cast<std::size_t>(h) * h;
    if (block == 0 || transmitted.size() % block != 0)
        throw std::invalid_argument("path_pair_probability: length must be a multiple of H^2");
    if (static_cast<int>(p_on_per_band.size()) != h)
        throw std::invalid_argument("path_pair_probability: need one P_On per band");
    double prod = 1.0;
    for (std::size_t idx = 0; idx < transmitted.size(); ++idx) {
        const int row = static_cast<int>(idx % block % static_cast<std::size_t>(h));
        const bool q = transmitted[idx] != 0;
        const bool b = competing[idx] != 0;
        prod *= like.prob_mixed(b, q, p_on_per_band[static_cast<std::size_t>(row)]);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

namespace {

double decision_error_from_match_probs(std::vector<double>& probs, TieRule tie) {
    const std::size_t d = probs.size();
    if (d == 0) return 1.0; // identical patterns: nothing distinguishes the competitor
    // Canonical order keeps the accumulation independent of cell order.
    std::sort(probs.begin(), probs.end());
    std::vector<double> pmf(d + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t used = 0;
    for (double p : probs) {
        ++used;
        for (std::size_t x = used; x-- > 0;) {
            pmf[x + 1] += pmf[x] * p;
            pmf[x] *= 1.0 - p;
        }
    }
    double err = 0.0;
    for (std::size_t x = d / 2 + 1; x <= d; ++x) err += pmf[x];
    if (d % 2 == 0) {
        switch (tie) {
            case TieRule::HalfError: err += 0.5 * pmf[d / 2]; break;
            case TieRule::FullError: err += pmf[d / 2]; break;
            case TieRule::NoError: break;
        }
    }
    return std::min(err, 1.0);
}

// Match probabilities of the differing cells with a per-cell On profile.
std::vector<double> match_probs_profile(const std::vector<std::uint8_t>& transmitted,
                                        const std::vector<std::uint8_t>& competing,
                                        const CellLikelihoods& like, const POnProfile& p_on_cell, int h) {
    const std::size_t block = static_cast<std::size_t>(h) * h;
    std::vector<double> match;
    for (std::size_t idx = 0; idx < transmitted.size(); ++idx) {
        if (transmitted[idx] == competing[idx]) continue;
        const std::size_t branch = idx / block;
        const std::size_t local = idx % block;
        const int row = static_cast<int>(local % static_cast<std::size_t>(h));
        const std::size_t step = branch * static_cast<std::size_t>(h) + local / static_cast<std::size_t>(h);
        const bool q = transmitted[idx] != 0;
        const double p_on = p_on_cell[static_cast<std::size_t>(row)][step];
        match.push_back(like.prob_mixed(!q, q, p_on));
    }
    return match;
}

} // namespace

double pairwise_error_probability(const std::vector<std::uint8_t>& transmitted,
                                  const std::vector<std::uint8_t>& competing, const CellLikelihoods& like,
                                  const std::vector<double>& p_on_per_band, int h, TieRule tie) {
    if (transmitted.size() != competing.size())
        throw std::invalid_argument("pairwise_error_probability: pattern length mismatch");
    const std::size_t block = static_cast<std::size_t>(h) * h;
    if (block == 0 || transmitted.size() % block != 0)
        throw std::invalid_argument("pairwise_error_probability: length must be a multiple of H^2");
    if (static_cast<int>(p_on_per_band.size()) != h)
        throw std::invalid_argument("pairwise_error_probability: need one P_On per band");
    std::vector<double> match;
    for (std::size_t idx = 0; idx < transmitted.size(); ++idx) {
        if (transmitted[idx] == competing[idx]) continue;
        const int row = static_cast<int>(idx % block % static_cast<std::size_t>(h));
        const bool q = transmitted[idx] != 0;
        // A differing cell matches the competitor when the detector emits
        // the complement of q.
        match.push_back(like.prob_mixed(!q, q, p_on_per_band[static_cast<std::size_t>(row)]));
    }
    return decision_error_from_match_probs(match, tie);
}

BerEstimate approximate_ber(const PathSpectrum& spectrum, const CellLikelihoods& like,
                            const std::vector<double>& p_on_per_band, BerOptions opts) {
    if (spectrum.classes.empty()) throw std::invalid_argument("approximate_ber: empty spectrum");
    BerEstimate est;
    est.z_used = spectrum.z;
    double sum = 0.0;
    for (const auto& cls : spectrum.classes) {
        double contrib = 0.0;
        for (const auto& ev : cls.events) {
            const auto zero = spectrum.zero_pattern(ev.symbols.size());
            contrib += (opts.bit_weighted ? ev.input_weight : 1) *
                       pairwise_error_probability(zero, ev.pattern, like, p_on_per_band, spectrum.h, opts.tie);
        }
        est.per_d_contributions.push_back(contrib);
        sum += contrib;
    }
    est.value = std::clamp(sum, 0.0, 1.0);
    return est;
}

double expected_throughput(double pe, int packet_bits, double packets_per_s) {
    if (pe < 0.0 || pe > 1.0) throw std::invalid_argument("expected_throughput: Pe must lie in [0,1]");
    if (packet_bits < 1 || packets_per_s <= 0.0)
        throw std::invalid_argument("expected_throughput: L >= 1 and Rp > 0 required");
    const double per = 1.0 - std::pow(1.0 - pe, packet_bits);
    return (1.0 - per) * packets_per_s * packet_bits;
}

POnProfile row_constant_profile(const std::vector<double>& p_on_per_band, int h, std::size_t steps) {
    POnProfile profile(static_cast<std::size_t>(h), std::vector<double>(steps));
    for (int j = 0; j < h; ++j)
        std::fill(profile[static_cast<std::size_t>(j)].begin(), profile[static_cast<std::size_t>(j)].end(),
                  p_on_per_band[static_cast<std::size_t>(j)]);
    return profile;
}

POnProfile row_varying_profile(const std::vector<double>& p_on_per_band, int h, std::size_t steps) {
    POnProfile profile(static_cast<std::size_t>(h), std::vector<double>(steps));
    for (int j = 0; j < h; ++j)
        for (std::size_t s = 0; s < steps; ++s)
            profile[static_cast<std::size_t>(j)][s] =
                p_on_per_band[static_cast<std::size_t>(j)] * (s % 2 == 0 ? 1.0 : 0.2);
    return profile;
}

namespace {

// Row-preserving index permutation carrying the zero codeword onto the
// transmitted one: per branch, for each band, swap the two columns in which
// the zero symbol and the transmitted symbol light that band.
std::vector<std::uint8_t> apply_row_swap(const std::vector<std::uint8_t>& pattern,
                                         const std::vector<std::uint8_t>& zero,
                                         const std::vector<std::uint8_t>& transmitted, int h) {
    const std::size_t block = static_cast<std::size_t>(h) * h;
    std::vector<std::uint8_t> out = pattern;
    for (std::size_t base = 0; base < pattern.size(); base += block) {
        for (int row = 0; row < h; ++row) {
            int col_a = -1, col_b = -1;
            for (int col = 0; col < h; ++col) {
                const std::size_t idx = base + static_cast<std::size_t>(col) * h + static_cast<std::size_t>(row);
                if (zero[idx]) col_a = col;
                if (transmitted[idx]) col_b = col;
            }
            if (col_a < 0 || col_b < 0 || col_a == col_b) continue;
            const std::size_t ia = base + static_cast<std::size_t>(col_a) * h + static_cast<std::size_t>(row);
            const std::size_t ib = base + static_cast<std::size_t>(col_b) * h + static_cast<std::size_t>(row);
            std::swap(out[ia], out[ib]);
        }
    }
    return out;
}

double truncated_bound_profile(const PathSpectrum& spectrum, const CellLikelihoods& like,
                               const POnProfile& p_on_cell, const std::vector<std::uint8_t>& transmitted_bits,
                               const std::vector<std::vector<std::uint8_t>>& competing_per_event, int h) {
    double sum = 0.0;
    std::size_t k = 0;
    for (const auto& cls : spectrum.classes) {
        for (const auto& ev : cls.events) {
            const auto& comp = competing_per_event[k++];
            std::vector<std::uint8_t> trans(transmitted_bits.begin(),
                                            transmitted_bits.begin() + static_cast<std::ptrdiff_t>(comp.size()));
            auto match = match_probs_profile(trans, comp, like, p_on_cell, h);
            sum += ev.input_weight * decision_error_from_match_probs(match, TieRule::HalfError);
        }
    }
    return sum;
}

} // namespace

Proposition1Result proposition1_check(const Trellis& trellis, const CellLikelihoods& like,
                                      const POnProfile& p_on_cell, int z, int trials, std::uint64_t seed) {
    const auto spectrum = enumerate_paths(trellis, z);
    const int h = trellis.h;
    std::size_t max_branches = 0;
    for (const auto& cls : spectrum.classes)
        for (const auto& ev : cls.events) max_branches = std::max(max_branches, ev.symbols.size());
    for (const auto& row : p_on_cell)
        if (row.size() < max_branches * static_cast<std::size_t>(h))
            throw std::invalid_argument("proposition1_check: profile shorter than the longest event");

    // Reference bound: zero codeword transmitted, events as competitors.
    const auto zero_bits = zero_path_pattern(trellis, max_branches);
    std::vector<std::vector<std::uint8_t>> competing;
    for (const auto& cls : spectrum.classes)
        for (const auto& ev : cls.events) competing.push_back(ev.pattern);
    Proposition1Result result;
    result.bound_zero = truncated_bound_profile(spectrum, like, p_on_cell, zero_bits, competing, h);

    std::vector<CodeMatrix> symbol_matrix(static_cast<std::size_t>(trellis.symbol_count));
    for (const auto& row : trellis.branches)
        for (const auto& br : row) symbol_matrix[static_cast<std::size_t>(br.output_symbol)] = br.matrix;

    for (int t = 0; t < trials; ++t) {
        Philox rng(seed, 0x70726f70ull, static_cast<std::uint64_t>(t));
        std::vector<std::uint8_t> info(max_branches);
        for (auto& b : info) b = rng.bernoulli(0.5);
        const auto symbols = encode(trellis.code, info, false);
        std::vector<std::uint8_t> trans_bits;
        for (int sym : symbols) append_matrix_bits(symbol_matrix[static_cast<std::size_t>(sym)], trans_bits);

        std::vector<std::vector<std::uint8_t>> mapped;
        mapped.reserve(competing.size());
        for (const auto& comp : competing) {
            std::vector<std::uint8_t> zero_slice(zero_bits.begin(),
                                                 zero_bits.begin() + static_cast<std::ptrdiff_t>(comp.size()));
            std::vector<std::uint8_t> trans_slice(trans_bits.begin(),
                                                  trans_bits.begin() + static_cast<std::ptrdiff_t>(comp.size()));
            mapped.push_back(apply_row_swap(comp, zero_slice, trans_slice, h));
        }
        const double bound_c = truncated_bound_profile(spectrum, like, p_on_cell, trans_bits, mapped, h);
        result.max_spread = std::max(result.max_spread, std::fabs(bound_c - result.bound_zero));
    }
    return result;
}

} // namespace hfsk
