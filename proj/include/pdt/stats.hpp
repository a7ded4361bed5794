#pragma once

// Height statistics of the tries built over a key set, computed from the
// construction-time tries without encoding any labels.

#include <cstdint>
#include <span>
#include <string_view>

namespace pdt {

struct HeightStats {
    uint64_t keys = 0;
    // Compacted trie over the 0x00-terminated keys: leaf heights in edges.
    double trie_avg_leaf_height = 0;
    // Same, but a key that is a proper prefix of another stops at its branching
    // node instead of one terminator edge below it.
    double trie_avg_leaf_height_unterminated = 0;
    uint64_t trie_height = 0;
    // Path-decomposed trees: average depth over all nodes.
    double lex_avg_height = 0;
    uint64_t lex_height = 0;
    double centroid_avg_height = 0;
    uint64_t centroid_height = 0;
    // Binary trie of the 9-bit transform, and its left-biased decomposition.
    double hollow_avg_height = 0;
    uint64_t hollow_height = 0;
    double centroid_hollow_avg_height = 0;
    uint64_t centroid_hollow_height = 0;
};

// keys sorted, unique, free of 0x00. The hollow figures are skipped when
// with_hollow is false.
HeightStats height_stats(std::span<const std::string_view> keys, bool with_hollow = true);

} // namespace pdt
