#pragma once

// Node labels over the augmented alphabet: values 0..255 are bytes (0 is the
// terminator), 256..511 are specials, value 255 + k standing for k >= 1
// subtries hanging off the current path node.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdt/elias_fano.hpp"
#include "pdt/errors.hpp"

namespace pdt {

using Symbol = uint16_t;

inline constexpr Symbol terminator = 0;
inline constexpr uint32_t max_special_count = 256;

constexpr Symbol special(uint32_t k) { return Symbol(255 + k); }
constexpr bool is_special(Symbol s) { return s >= 256; }
constexpr uint32_t special_count(Symbol s) { return uint32_t(s) - 255; }

// ---------------------------------------------------------------------------
// vbyte: little-endian 7-bit groups, high bit set on every byte but the last.

inline void vbyte_encode(uint64_t v, std::vector<uint8_t>& out)
{
    while (v >= 128) {
        out.push_back(uint8_t(v | 128));
        v >>= 7;
    }
    out.push_back(uint8_t(v));
}

// Decodes one value from bytes[pos..end); advances pos. Throws FormatError on
// a truncated or overlong value.
inline uint64_t vbyte_decode(const uint8_t* bytes, uint64_t& pos, uint64_t end)
{
    uint64_t v = 0;
    for (unsigned shift = 0;; shift += 7) {
        if (pos >= end) throw FormatError("truncated vbyte value at byte " + std::to_string(pos));
        if (shift > 56) throw FormatError("vbyte value too long at byte " + std::to_string(pos));
        const uint8_t b = bytes[pos++];
        v |= uint64_t(b & 127) << shift;
        if (b < 128) return v;
    }
}

// ---------------------------------------------------------------------------
// Flat list of labels.

struct LabelSequence {
    std::vector<Symbol> symbols;
    std::vector<uint64_t> ends;  // label i is symbols[ends[i-1], ends[i])

    uint64_t size() const { return ends.size(); }
    uint64_t begin_of(uint64_t i) const { return i ? ends[i - 1] : 0; }
    std::span<const Symbol> label(uint64_t i) const
    {
        return {symbols.data() + begin_of(i), symbols.data() + ends[i]};
    }
    void push(Symbol s) { symbols.push_back(s); }
    // Appends specials totalling k, split into runs of at most 256.
    void push_hanging(uint64_t k)
    {
        for (; k > max_special_count; k -= max_special_count) symbols.push_back(special(max_special_count));
        if (k) symbols.push_back(special(uint32_t(k)));
    }
    void end_label() { ends.push_back(symbols.size()); }
};

// One trie node along a path: its label, the number of subtries hanging off
// it, and the branching symbol continuing the path (ignored for the last).
struct PathStep {
    std::vector<Symbol> label;
    uint64_t hanging = 0;
    Symbol branch = 0;
};

// alpha_1 S(k_1) c_1 alpha_2 ... alpha_m, omitting S(0).
std::vector<Symbol> encode_label(std::span<const PathStep> path);

// ---------------------------------------------------------------------------
// Static dictionary of variable-length words over the augmented alphabet.

struct CodeDictionary {
    std::vector<uint16_t> chars;
    std::vector<uint16_t> ends;  // word i is chars[ends[i-1], ends[i])

    uint64_t size() const { return ends.size(); }
    std::span<const uint16_t> word(uint64_t i) const
    {
        const uint64_t b = i ? ends[i - 1] : 0;
        return {chars.data() + b, chars.data() + ends[i]};
    }
};

inline constexpr uint32_t default_repair_pairs = 256;
// Largest total word length whose endpoints still fit 16-bit offsets.
inline constexpr uint32_t max_dictionary_chars = 65535;

struct RepairResult {
    CodeDictionary dict;
    std::vector<uint32_t> codes;  // parsed labels
    std::vector<uint64_t> ends;   // label i is codes[ends[i-1], ends[i])
    uint32_t rounds = 0;
};

// Approximate Re-Pair: each round counts adjacent code pairs inside labels,
// takes the k most frequent (ties to the lexicographically smaller expansion),
// admits those whose expansion fits in the dictionary and substitutes them
// greedily left to right. Stops when a round admits nothing. Final codes are
// ranked by frequency in the parse, ties by first appearance.
RepairResult repair_build(const LabelSequence& labels, uint32_t k = default_repair_pairs,
                          uint32_t max_chars = max_dictionary_chars);

// ---------------------------------------------------------------------------

class LabelStore;

// Sequential reader over one label.
class LabelCursor {
public:
    // Next symbol, or false at the end of the label.
    bool next(Symbol& s)
    {
        if (word_pos_ < word_end_) {
            s = word_chars_[word_pos_++];
            return true;
        }
        if (pos_ >= end_) return false;
        const uint64_t v = vbyte_decode(payload_, pos_, end_);
        if (!dict_chars_) {
            if (v >= 512) throw FormatError("label symbol " + std::to_string(v) + " out of range");
            s = Symbol(v);
            return true;
        }
        if (v >= dict_words_) throw FormatError("label code " + std::to_string(v) + " out of range");
        word_pos_ = v ? dict_ends_[v - 1] : 0;
        word_end_ = dict_ends_[v];
        word_chars_ = dict_chars_;
        ++words_fetched_;
        s = word_chars_[word_pos_++];
        return true;
    }

    uint64_t words_fetched() const { return words_fetched_; }

private:
    friend class LabelStore;
    const uint8_t* payload_ = nullptr;
    uint64_t pos_ = 0, end_ = 0;
    const uint16_t* dict_chars_ = nullptr;
    const uint16_t* dict_ends_ = nullptr;
    uint64_t dict_words_ = 0;
    const uint16_t* word_chars_ = nullptr;
    uint64_t word_pos_ = 0, word_end_ = 0;
    uint64_t words_fetched_ = 0;
};

class LabelStore {
public:
    LabelStore() = default;
    LabelStore(const LabelSequence& labels, bool compress, uint32_t repair_pairs = default_repair_pairs);

    uint64_t size() const { return endpoints_.size(); }
    bool compressed() const { return compressed_; }
    uint64_t payload_bytes() const { return payload_.size(); }
    uint64_t dictionary_words() const { return dict_ends_.size(); }
    uint64_t dictionary_chars() const { return dict_chars_.size(); }

    LabelCursor cursor(uint64_t i) const
    {
        if (i >= size()) throw std::out_of_range("label " + std::to_string(i) + " >= " + std::to_string(size()));
        LabelCursor c;
        c.payload_ = payload_.data();
        c.pos_ = i ? endpoints_.access_unchecked(i - 1) : 0;
        c.end_ = endpoints_.access_unchecked(i);
        if (compressed_) {
            c.dict_chars_ = dict_chars_.data();
            c.dict_ends_ = dict_ends_.data();
            c.dict_words_ = dict_ends_.size();
        }
        return c;
    }
    std::vector<Symbol> label(uint64_t i) const;

    uint64_t size_in_bits() const;

    void save(ContainerWriter& out, const std::string& prefix) const;
    static LabelStore load(const ContainerReader& in, const std::string& prefix);

private:
    bool compressed_ = false;
    MappedArray<uint8_t> payload_;
    EliasFano endpoints_;  // end offset of every label
    MappedArray<uint16_t> dict_chars_;
    MappedArray<uint16_t> dict_ends_;
};

} // namespace pdt
