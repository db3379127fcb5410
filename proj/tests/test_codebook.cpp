#include <doctest.h>

#include <sstream>

#include "hfsk/codebook.hpp"

using namespace hfsk;

namespace {

std::string render(const CodeMatrix& m) {
    std::string s;
    for (int row = 0; row < m.h; ++row) {
        for (int col = 0; col < m.h; ++col) s += m.cell(row, col) ? '1' : '0';
        if (row + 1 < m.h) s += '/';
    }
    return s;
}

} // namespace

TEST_CASE("symbol 01 maps onto permutation 213") {
    const auto mapping = PermutationMapping::builtin(3);
    CHECK(mapping.permutation_string(0b01) == "213");
    CHECK(render(map_symbol(mapping, 0b01)) == "010/100/001");
}

TEST_CASE("table anchors: H=2 symbol 0 and H=3 symbol 11 are identities") {
    const auto m2 = PermutationMapping::builtin(2);
    CHECK(m2.permutation_string(0) == "12");
    CHECK(render(map_symbol(m2, 0)) == "10/01");
    const auto m3 = PermutationMapping::builtin(3);
    CHECK(m3.permutation_string(0b11) == "123");
    CHECK(render(map_symbol(m3, 0b11)) == "100/010/001");
}

TEST_CASE("matrix hamming distances from the transfer-function walkthrough") {
    const auto m3 = PermutationMapping::builtin(3);
    const auto t231 = map_symbol(m3, 0b00);
    const auto t123 = map_symbol(m3, 0b11);
    const auto t132 = map_symbol(m3, 0b10);
    CHECK(matrix_hamming_distance(t231, t123) == 6);
    CHECK(matrix_hamming_distance(t231, t132) == 4);
    CHECK(matrix_hamming_distance(t123, t123) == 0);
}

TEST_CASE("distance equals twice the number of differing permutation positions") {
    for (int h : {2, 3, 4}) {
        const auto m = PermutationMapping::builtin(h);
        for (int a = 0; a < m.symbol_count(); ++a) {
            for (int b = 0; b < m.symbol_count(); ++b) {
                const int d = matrix_hamming_distance(map_symbol(m, a), map_symbol(m, b));
                CHECK(d == 2 * permutation_distance(m, a, b));
                if (a != b) CHECK(d >= 2);
            }
        }
    }
}

TEST_CASE("map_symbol is injective and validates its domain") {
    const auto m = PermutationMapping::builtin(3);
    for (int a = 0; a < m.symbol_count(); ++a)
        for (int b = a + 1; b < m.symbol_count(); ++b)
            CHECK(map_symbol(m, a).mask != map_symbol(m, b).mask);
    CHECK_THROWS_AS(map_symbol(m, 4), std::out_of_range);
    CHECK_THROWS_AS(map_symbol(m, -1), std::out_of_range);
}

TEST_CASE("expand_codeword weight and concatenation") {
    const auto m = PermutationMapping::builtin(3);
    const auto ec = expand_codeword(m, {0b11, 0b10, 0b11});
    CHECK(ec.bits.size() == 27);
    CHECK(ec.branch_count() == 3);
    int weight = 0;
    for (auto b : ec.bits) weight += b;
    CHECK(weight == 9);

    // Per-block column sums are all 1.
    for (std::size_t block = 0; block < 3; ++block)
        for (int col = 0; col < 3; ++col) {
            int sum = 0;
            for (int row = 0; row < 3; ++row) sum += ec.bits[block * 9 + col * 3 + row];
            CHECK(sum == 1);
        }

    CHECK(expand_codeword(m, {}).bits.empty());

    // Concatenation homomorphism.
    const std::vector<int> s1{0, 1}, s2{2, 3, 1};
    auto both = expand_codeword(m, {0, 1, 2, 3, 1});
    auto left = expand_codeword(m, s1);
    auto right = expand_codeword(m, s2);
    left.bits.insert(left.bits.end(), right.bits.begin(), right.bits.end());
    CHECK(left.bits == both.bits);
}

TEST_CASE("greedy H=4 table is a max-min-distance set") {
    const auto m = PermutationMapping::greedy(4, 4);
    CHECK(m.symbol_count() == 4);
    CHECK(m.permutation_string(0) == "1234");
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) CHECK(permutation_distance(m, a, b) == 4);
}

TEST_CASE("mapping file round trip and validation") {
    std::istringstream good("00 231\n01 213\n10 132\n11 123\n");
    const auto m = PermutationMapping::load(good);
    CHECK(m.h() == 3);
    CHECK(m.permutation_string(0) == "231");

    std::istringstream dup("0 12\n1 12\n");
    CHECK_THROWS(PermutationMapping::load(dup));
    std::istringstream not_perm("0 11\n1 21\n");
    CHECK_THROWS(PermutationMapping::load(not_perm));
    std::istringstream gapped("0 12\n10 21\n");
    CHECK_THROWS(PermutationMapping::load(gapped)); // symbols must cover 0..M-1
}

TEST_CASE("mapping invariants are enforced") {
    CHECK_THROWS(PermutationMapping(3, {{1, 2, 3}, {1, 2, 3}}));         // duplicate
    CHECK_THROWS(PermutationMapping(3, {{1, 2, 2}, {2, 1, 3}}));         // not a permutation
    CHECK_THROWS(PermutationMapping(3, {{1, 2, 3}, {2, 1, 3}, {3, 1, 2}})); // M not a power of two
}
