#include "hfsk/codebook.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hfsk {

namespace {

bool is_permutation_1based(const std::vector<int>& p, int h) {
    if (static_cast<int>(p.size()) != h) return false;
    std::vector<bool> seen(static_cast<std::size_t>(h), false);
    for (int v : p) {
        if (v < 1 || v > h || seen[static_cast<std::size_t>(v - 1)]) return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return true;
}

int position_distance(const std::vector<int>& a, const std::vector<int>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

} // namespace

PermutationMapping::PermutationMapping(int h, std::vector<std::vector<int>> table)
    : h_(h), table_(std::move(table)) {
    if (h < 1) throw std::invalid_argument("mapping: H must be positive");
    if (table_.empty()) throw std::invalid_argument("mapping: empty symbol table");
    const int m = static_cast<int>(table_.size());
    if ((m & (m - 1)) != 0) throw std::invalid_argument("mapping: symbol count must be a power of two");
    bits_per_symbol_ = std::countr_zero(static_cast<unsigned>(m));
    std::set<std::vector<int>> distinct;
    for (const auto& p : table_) {
        if (!is_permutation_1based(p, h))
            throw std::invalid_argument("mapping: entry is not a permutation of 1..H");
        if (!distinct.insert(p).second)
            throw std::invalid_argument("mapping: duplicate permutation" );
    }
}

const std::vector<int>& PermutationMapping::permutation(int symbol) const {
    if (symbol < 0 || symbol >= symbol_count())
        throw std::out_of_range("mapping: symbol out of range");
    return table_[static_cast<std::size_t>(symbol)];
}

std::string PermutationMapping::permutation_string(int symbol) const {
    std::string s;
    for (int v : permutation(symbol)) s += static_cast<char>('0' + v);
    return s;
}

PermutationMapping PermutationMapping::builtin(int h) {
    switch (h) {
        case 2:
            // Symbols 0,1 -> permutations 12, 21.
            return PermutationMapping(2, {{1, 2}, {2, 1}});
        case 3:
            // Symbols 00,01,10,11 -> 231, 213, 132, 123.
            return PermutationMapping(3, {{2, 3, 1}, {2, 1, 3}, {1, 3, 2}, {1, 2, 3}});
        case 4:
            return greedy(4, 4);
        default:
            throw std::invalid_argument("mapping: no builtin table for H=" + std::to_string(h));
    }
}

PermutationMapping PermutationMapping::greedy(int h, int symbols) {
    if (h < 1 || h > 8) throw std::invalid_argument("mapping: greedy construction supports H in 1..8");
    std::vector<int> base(static_cast<std::size_t>(h));
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    if (symbols > static_cast<int>(all.size()))
        throw std::invalid_argument("mapping: fewer than M permutations exist");

    // all is in lexicographic order; seed with the first entry, then keep
    // adding the candidate maximizing its minimum distance to the chosen
    // set, first-found (lexicographically smallest) on ties.
    std::vector<std::vector<int>> chosen{all.front()};
    std::vector<bool> used(all.size(), false);
    used[0] = true;
    while (static_cast<int>(chosen.size()) < symbols) {
        int best_idx = -1;
        int best_min = -1;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (used[i]) continue;
            int mind = std::numeric_limits<int>::max();
            for (const auto& c : chosen) mind = std::min(mind, position_distance(all[i], c));
            if (mind > best_min) {
                best_min = mind;
                best_idx = static_cast<int>(i);
            }
        }
        used[static_cast<std::size_t>(best_idx)] = true;
        chosen.push_back(all[static_cast<std::size_t>(best_idx)]);
    }
    return PermutationMapping(h, std::move(chosen));
}

PermutationMapping PermutationMapping::load(std::istream& in) {
    std::string line;
    int lineno = 0;
    int h = -1;
    std::vector<std::pair<int, std::vector<int>>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string bits, perm;
        if (!(ls >> bits)) continue; // blank
        if (!(ls >> perm))
            throw std::invalid_argument("mapping line " + std::to_string(lineno) + ": expected 'BITS PERM'");
        int symbol = 0;
        for (char c : bits) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("mapping line " + std::to_string(lineno) + ": bad symbol bits");
            symbol = symbol * 2 + (c - '0');
        }
        std::vector<int> p;
        for (char c : perm) {
            if (c < '1' || c > '9')
                throw std::invalid_argument("mapping line " + std::to_string(lineno) + ": bad permutation digit");
            p.push_back(c - '0');
        }
        if (h < 0) h = static_cast<int>(p.size());
        rows.emplace_back(symbol, std::move(p));
    }
    if (rows.empty()) throw std::invalid_argument("mapping: no entries");
    std::vector<std::vector<int>> table(rows.size());
    std::vector<bool> filled(rows.size(), false);
    for (auto& [symbol, p] : rows) {
        if (symbol < 0 || symbol >= static_cast<int>(rows.size()) || filled[static_cast<std::size_t>(symbol)])
            throw std::invalid_argument("mapping: symbols must cover 0..M-1 exactly once");
        table[static_cast<std::size_t>(symbol)] = std::move(p);
        filled[static_cast<std::size_t>(symbol)] = true;
    }
    return PermutationMapping(h, std::move(table));
}

PermutationMapping PermutationMapping::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("mapping: cannot open " + path);
    return load(in);
}

CodeMatrix map_symbol(const PermutationMapping& mapping, int symbol) {
    const auto& perm = mapping.permutation(symbol); // validates symbol
    CodeMatrix m;
    m.h = mapping.h();
    for (int col = 0; col < m.h; ++col) {
        const int row = perm[static_cast<std::size_t>(col)] - 1;
        m.mask |= 1u << (col * m.h + row);
    }
    return m;
}

int matrix_hamming_distance(const CodeMatrix& a, const CodeMatrix& b) {
    if (a.h != b.h) throw std::invalid_argument("matrix_hamming_distance: mismatched H");
    return std::popcount(a.mask ^ b.mask);
}

int permutation_distance(const PermutationMapping& mapping, int a, int b) {
    return position_distance(mapping.permutation(a), mapping.permutation(b));
}

void append_matrix_bits(const CodeMatrix& m, std::vector<std::uint8_t>& out) {
    for (int i = 0; i < m.h * m.h; ++i) out.push_back(static_cast<std::uint8_t>((m.mask >> i) & 1u));
}

ExpandedCodeword expand_codeword(const PermutationMapping& mapping, const std::vector<int>& symbols) {
    ExpandedCodeword ec;
    ec.h = mapping.h();
    ec.bits.reserve(symbols.size() * static_cast<std::size_t>(ec.h) * static_cast<std::size_t>(ec.h));
    for (int s : symbols) append_matrix_bits(map_symbol(mapping, s), ec.bits);
    return ec;
}

} // namespace hfsk
