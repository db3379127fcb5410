#pragma once

#include <string>
#include <vector>

#include "hfsk/codebook.hpp"

namespace hfsk {

// Feedforward rate-1/n convolutional code. Generators are octal tap masks
// with the MSB on the current input bit (controller form); memory 0 with a
// single generator 1 degenerates to an uncoded pass-through, which is the
// H=2 configuration.
struct ConvCode {
    int n = 2;
    int memory = 2;
    std::vector<unsigned> generators{07, 05};

    static ConvCode standard_7_5() { return ConvCode{}; }
    static ConvCode identity() { return ConvCode{1, 0, {01}}; }
    // Parse "7,5" (octal) given explicit memory.
    static ConvCode from_octal(const std::string& generators, int memory);

    void validate() const;
    int state_count() const { return 1 << memory; }

    // One encoder step: returns the n-bit output symbol and advances state.
    int step(int& state, int input_bit) const;
};

// Encode; termination appends `memory` flush zeros driving the register back
// to state 0. Output symbols are n-bit integers, MSB = first generator.
std::vector<int> encode(const ConvCode& code, const std::vector<std::uint8_t>& bits, bool terminate);

struct TrellisBranch {
    int next_state = 0;
    int output_symbol = 0;
    CodeMatrix matrix;
};

// State graph with every branch annotated by its code matrix.
struct Trellis {
    ConvCode code;
    int h = 0;
    int symbol_count = 0;
    // branches[state][input]
    std::vector<std::vector<TrellisBranch>> branches;

    int state_count() const { return static_cast<int>(branches.size()); }
    int zero_symbol_matrix_mask() const { return static_cast<int>(branches[0][0].matrix.mask); }
};

Trellis build_trellis(const ConvCode& code, const PermutationMapping& mapping);

} // namespace hfsk
