#pragma once

// Newline-delimited key sets. Loading yields sorted, deduplicated keys viewed
// in place: an input that is already sorted and unique is mapped as is,
// smaller inputs are sorted in memory, and larger ones go through an external
// merge sort into a temporary file that is then mapped.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pdt {

struct CorpusOptions {
    uint64_t memory_budget = uint64_t(1) << 30;  // bytes of input sorted in RAM
    std::string temp_dir;                        // empty: next to the output / system temp
};

class Corpus {
public:
    Corpus() = default;

    static Corpus load(const std::string& path, const CorpusOptions& options = {});
    // Sorts and deduplicates an in-memory list (tests, generated data).
    static Corpus from_strings(std::vector<std::string> strings);

    uint64_t size() const { return keys_.size(); }
    const std::vector<std::string_view>& keys() const { return keys_; }
    std::string_view operator[](uint64_t i) const { return keys_[i]; }

    // Bytes of the sorted, deduplicated corpus as a file: keys plus newlines.
    uint64_t raw_bytes() const { return raw_bytes_; }
    uint64_t input_lines() const { return input_lines_; }
    bool was_sorted() const { return was_sorted_; }
    bool external_sort() const { return external_; }

private:
    std::shared_ptr<const void> keep_;
    std::vector<std::string_view> keys_;
    uint64_t raw_bytes_ = 0;
    uint64_t input_lines_ = 0;
    bool was_sorted_ = false;
    bool external_ = false;
};

// Writes sorted unique keys, one per line.
void write_corpus(const std::string& path, const std::vector<std::string_view>& keys);

// Reads query lines (stdin when path is "-"); rejects 0x00.
std::vector<std::string> read_lines(const std::string& path);

struct SyntheticParams {
    uint64_t i = 500, j = 500, t = 10, k = 100;
};

// The 100 suffix bytes: printable ASCII without 'b', 'c', 'd', then 0x80..0x88.
const std::string& synthetic_alphabet();

uint64_t synthetic_count(const SyntheticParams& p);

// Writes d^x c^y b^z sigma_1..sigma_k for x < i, y < j, z < t in that loop
// order, which is already sorted.
void gen_synthetic(const SyntheticParams& p, std::ostream& out);
std::vector<std::string> gen_synthetic(const SyntheticParams& p);

} // namespace pdt
