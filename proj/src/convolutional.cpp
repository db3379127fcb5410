#include "hfsk/convolutional.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace hfsk {

ConvCode ConvCode::from_octal(const std::string& generators, int memory) {
    ConvCode code;
    code.memory = memory;
    code.generators.clear();
    std::stringstream ss(generators);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        unsigned g = 0;
        for (char c : tok) {
            if (c == ' ') continue;
            if (c < '0' || c > '7') throw std::invalid_argument("generators: expected octal digits, got '" + tok + "'");
            g = g * 8 + static_cast<unsigned>(c - '0');
        }
        code.generators.push_back(g);
    }
    code.n = static_cast<int>(code.generators.size());
    code.validate();
    return code;
}

void ConvCode::validate() const {
    if (n < 1 || static_cast<int>(generators.size()) != n)
        throw std::invalid_argument("ConvCode: need one generator per output bit");
    if (memory < 0 || memory > 20) throw std::invalid_argument("ConvCode: memory out of range");
    for (unsigned g : generators) {
        if (g == 0) throw std::invalid_argument("ConvCode: zero generator");
        if (std::bit_width(g) > memory + 1)
            throw std::invalid_argument("ConvCode: generator longer than memory+1 taps");
    }
}

int ConvCode::step(int& state, int input_bit) const {
    // Register word: bit memory = current input, bit memory-1..0 = past bits
    // (most recent highest). Generator MSB therefore taps the current input.
    const int reg = (input_bit << memory) | state;
    int out = 0;
    for (unsigned g : generators) {
        const int parity = std::popcount(static_cast<unsigned>(reg) & g) & 1;
        out = (out << 1) | parity;
    }
    state = memory == 0 ? 0 : (reg >> 1);
    return out;
}

std::vector<int> encode(const ConvCode& code, const std::vector<std::uint8_t>& bits, bool terminate) {
    code.validate();
    std::vector<int> out;
    out.reserve(bits.size() + (terminate ? static_cast<std::size_t>(code.memory) : 0));
    int state = 0;
    for (std::uint8_t b : bits) out.push_back(code.step(state, b & 1));
    if (terminate) {
        for (int i = 0; i < code.memory; ++i) out.push_back(code.step(state, 0));
    }
    return out;
}

Trellis build_trellis(const ConvCode& code, const PermutationMapping& mapping) {
    code.validate();
    if (code.n != mapping.bits_per_symbol())
        throw std::invalid_argument("build_trellis: code outputs " + std::to_string(code.n) +
                                    " bits per branch but mapping encodes " +
                                    std::to_string(mapping.bits_per_symbol()));
    Trellis t;
    t.code = code;
    t.h = mapping.h();
    t.symbol_count = mapping.symbol_count();
    t.branches.resize(static_cast<std::size_t>(code.state_count()));
    for (int s = 0; s < code.state_count(); ++s) {
        auto& row = t.branches[static_cast<std::size_t>(s)];
        row.resize(2);
        for (int input = 0; input < 2; ++input) {
            int state = s;
            const int symbol = code.step(state, input);
            row[static_cast<std::size_t>(input)] =
                TrellisBranch{state, symbol, map_symbol(mapping, symbol)};
        }
    }
    return t;
}

} // namespace hfsk
