#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hfsk {

// H x H binary code matrix, row j = frequency band, column k = time step.
// Cells are kept as a bitmask (bit index k*H + j, column-major) so Hamming
// distances reduce to popcount. H <= 5 keeps the mask within 32 bits; the
// experiments use H in {2,3,4}.
struct CodeMatrix {
    int h = 0;
    std::uint32_t mask = 0;

    bool cell(int row, int col) const { return (mask >> (col * h + row)) & 1u; }
};

// Ordered table of M permutations of {1..H}; entry k of a permutation is the
// band transmitted at time step k. Immutable after construction.
class PermutationMapping {
  public:
    // `table` uses 1-based band indices, as printed in mapping tables.
    PermutationMapping(int h, std::vector<std::vector<int>> table);

    int h() const { return h_; }
    int symbol_count() const { return static_cast<int>(table_.size()); }
    int bits_per_symbol() const { return bits_per_symbol_; }
    const std::vector<int>& permutation(int symbol) const;
    // "213"-style rendering of a symbol's permutation.
    std::string permutation_string(int symbol) const;

    // Built-in tables for H=2 (M=2) and H=3 (M=4).
    static PermutationMapping builtin(int h);
    // Deterministic greedy max-min-distance construction for any (h, m),
    // lexicographic tie-breaking; used for H=4 where no table is printed.
    static PermutationMapping greedy(int h, int symbols);
    // Load "SYMBOL_BITS PERM" lines, e.g. "01 213".
    static PermutationMapping load(std::istream& in);
    static PermutationMapping load_file(const std::string& path);

  private:
    int h_;
    int bits_per_symbol_;
    std::vector<std::vector<int>> table_;
};

CodeMatrix map_symbol(const PermutationMapping& mapping, int symbol);

int matrix_hamming_distance(const CodeMatrix& a, const CodeMatrix& b);

// Number of positions in which two symbols' permutation vectors differ.
int permutation_distance(const PermutationMapping& mapping, int a, int b);

// Concatenated column-major code matrices, one per symbol.
struct ExpandedCodeword {
    int h = 0;
    std::vector<std::uint8_t> bits;

    std::size_t branch_count() const { return h == 0 ? 0 : bits.size() / (static_cast<std::size_t>(h) * h); }
};

ExpandedCodeword expand_codeword(const PermutationMapping& mapping, const std::vector<int>& symbols);

// Expansion of a single matrix appended onto `out`.
void append_matrix_bits(const CodeMatrix& m, std::vector<std::uint8_t>& out);

} // namespace hfsk
