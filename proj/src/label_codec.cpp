#include "pdt/label_codec.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <numeric>
#include <string>

#include "pdt/container.hpp"

namespace pdt {

std::vector<Symbol> encode_label(std::span<const PathStep> path)
{
    LabelSequence seq;
    for (std::size_t i = 0; i < path.size(); ++i) {
        seq.symbols.insert(seq.symbols.end(), path[i].label.begin(), path[i].label.end());
        if (i + 1 == path.size()) break;
        seq.push_hanging(path[i].hanging);
        seq.push(path[i].branch);
    }
    return std::move(seq.symbols);
}

namespace {

uint64_t pair_key(uint32_t a, uint32_t b) { return uint64_t(a) << 32 | b; }

} // namespace

RepairResult repair_build(const LabelSequence& labels, uint32_t k, uint32_t max_chars)
{
    if (k == 0) throw std::invalid_argument("Re-Pair needs at least one pair per round");
    if (max_chars > max_dictionary_chars)
        throw std::invalid_argument("dictionary bound " + std::to_string(max_chars) + " exceeds " +
                                    std::to_string(max_dictionary_chars));

    // Working dictionary: initial words are the symbols that occur.
    std::vector<std::u16string> words;
    absl::flat_hash_map<std::u16string, uint32_t> word_ids;
    std::vector<uint32_t> symbol_word(512, UINT32_MAX);
    uint64_t dict_len = 0;
    for (Symbol s : labels.symbols) {
        if (s >= 512) throw std::invalid_argument("label symbol " + std::to_string(s) + " out of range");
        if (symbol_word[s] != UINT32_MAX) continue;
        symbol_word[s] = uint32_t(words.size());
        words.push_back(std::u16string(1, char16_t(s)));
        word_ids.emplace(words.back(), symbol_word[s]);
        ++dict_len;
    }
    if (dict_len > max_chars) throw BuildError("alphabet alone exceeds the dictionary bound");

    std::vector<uint32_t> seq(labels.symbols.size());
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = symbol_word[labels.symbols[i]];
    std::vector<uint64_t> ends = labels.ends;

    RepairResult result;
    absl::flat_hash_map<uint64_t, uint64_t> counts;
    absl::flat_hash_map<uint64_t, uint32_t> chosen;
    while (true) {
        counts.clear();
        uint64_t b = 0;
        for (uint64_t e : ends) {
            for (uint64_t i = b; i + 1 < e; ++i) ++counts[pair_key(seq[i], seq[i + 1])];
            b = e;
        }
        struct Candidate {
            uint64_t count;
            uint64_t pair;
        };
        std::vector<Candidate> cands;
        for (const auto& [p, c] : counts)
            if (c >= 2) cands.push_back({c, p});
        if (cands.empty()) break;

        auto expansion_less = [&](uint64_t p, uint64_t q) {
            const auto& a1 = words[p >> 32];
            const auto& b1 = words[uint32_t(p)];
            const auto& a2 = words[q >> 32];
            const auto& b2 = words[uint32_t(q)];
            std::u16string x = a1 + b1, y = a2 + b2;
            return x < y;
        };
        auto better = [&](const Candidate& x, const Candidate& y) {
            if (x.count != y.count) return x.count > y.count;
            return expansion_less(x.pair, y.pair);
        };
        const std::size_t take = std::min<std::size_t>(k, cands.size());
        std::partial_sort(cands.begin(), cands.begin() + take, cands.end(), better);

        chosen.clear();
        for (std::size_t i = 0; i < take; ++i) {
            const uint64_t p = cands[i].pair;
            std::u16string w = words[p >> 32] + words[uint32_t(p)];
            if (auto it = word_ids.find(w); it != word_ids.end()) {
                chosen.emplace(p, it->second);
                continue;
            }
            if (dict_len + w.size() > max_chars) continue;
            dict_len += w.size();
            const uint32_t id = uint32_t(words.size());
            word_ids.emplace(w, id);
            words.push_back(std::move(w));
            chosen.emplace(p, id);
        }
        if (chosen.empty()) break;
        ++result.rounds;

        // Greedy left-to-right substitution, compacting in place.
        uint64_t out = 0;
        b = 0;
        for (auto& e : ends) {
            uint64_t i = b;
            while (i < e) {
                if (i + 1 < e) {
                    if (auto it = chosen.find(pair_key(seq[i], seq[i + 1])); it != chosen.end()) {
                        seq[out++] = it->second;
                        i += 2;
                        continue;
                    }
                }
                seq[out++] = seq[i++];
            }
            b = e;
            e = out;
        }
        seq.resize(out);
    }

    // Rank used words by parse frequency, ties by first appearance.
    std::vector<uint64_t> freq(words.size(), 0), first(words.size(), UINT64_MAX);
    for (uint64_t i = 0; i < seq.size(); ++i) {
        ++freq[seq[i]];
        if (first[seq[i]] == UINT64_MAX) first[seq[i]] = i;
    }
    std::vector<uint32_t> order;
    for (uint32_t w = 0; w < words.size(); ++w)
        if (freq[w]) order.push_back(w);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (freq[a] != freq[b]) return freq[a] > freq[b];
        return first[a] < first[b];
    });
    std::vector<uint32_t> code_of(words.size(), UINT32_MAX);
    for (uint32_t c = 0; c < order.size(); ++c) {
        code_of[order[c]] = c;
        const auto& w = words[order[c]];
        result.dict.chars.insert(result.dict.chars.end(), w.begin(), w.end());
        result.dict.ends.push_back(uint16_t(result.dict.chars.size()));
    }
    for (auto& x : seq) x = code_of[x];
    result.codes = std::move(seq);
    result.ends = std::move(ends);
    return result;
}

LabelStore::LabelStore(const LabelSequence& labels, bool compress, uint32_t repair_pairs) : compressed_(compress)
{
    std::vector<uint8_t> payload;
    std::vector<uint64_t> endpoints;
    endpoints.reserve(labels.size());
    if (compress) {
        RepairResult r = repair_build(labels, repair_pairs);
        uint64_t b = 0;
        for (uint64_t e : r.ends) {
            for (uint64_t i = b; i < e; ++i) vbyte_encode(r.codes[i], payload);
            endpoints.push_back(payload.size());
            b = e;
        }
        dict_chars_ = MappedArray<uint16_t>(std::move(r.dict.chars));
        dict_ends_ = MappedArray<uint16_t>(std::move(r.dict.ends));
    } else {
        uint64_t b = 0;
        for (uint64_t e : labels.ends) {
            for (uint64_t i = b; i < e; ++i) vbyte_encode(labels.symbols[i], payload);
            endpoints.push_back(payload.size());
            b = e;
        }
    }
    endpoints_ = EliasFano(endpoints, payload.size() + 1);
    payload_ = MappedArray<uint8_t>(std::move(payload));
}

std::vector<Symbol> LabelStore::label(uint64_t i) const
{
    std::vector<Symbol> out;
    auto c = cursor(i);
    Symbol s;
    while (c.next(s)) out.push_back(s);
    return out;
}

uint64_t LabelStore::size_in_bits() const
{
    return 64 + 8 * payload_.size() + endpoints_.size_in_bits() + 16 * (dict_chars_.size() + dict_ends_.size());
}

void LabelStore::save(ContainerWriter& out, const std::string& prefix) const
{
    out.add(prefix + ".flags", std::vector<uint64_t>{compressed_ ? 1u : 0u});
    out.add(prefix + ".payload", payload_.span());
    endpoints_.save(out, prefix + ".ends");
    if (compressed_) {
        out.add(prefix + ".dict_chars", dict_chars_.span());
        out.add(prefix + ".dict_ends", dict_ends_.span());
    }
}

LabelStore LabelStore::load(const ContainerReader& in, const std::string& prefix)
{
    LabelStore ls;
    const uint64_t flags = in.scalars(prefix + ".flags", 1)[0];
    if (flags > 1) throw FormatError("section '" + prefix + ".flags' has unknown flags");
    ls.compressed_ = flags == 1;
    ls.payload_ = in.get<uint8_t>(prefix + ".payload");
    ls.endpoints_ = EliasFano::load(in, prefix + ".ends");
    if (ls.endpoints_.universe() != ls.payload_.size() + 1 ||
        (ls.endpoints_.size() > 0 && ls.endpoints_[ls.endpoints_.size() - 1] != ls.payload_.size()))
        throw FormatError("label endpoints under '" + prefix + "' do not match the payload");
    if (ls.compressed_) {
        ls.dict_chars_ = in.get<uint16_t>(prefix + ".dict_chars");
        ls.dict_ends_ = in.get<uint16_t>(prefix + ".dict_ends");
        uint64_t prev = 0;
        for (uint16_t e : ls.dict_ends_) {
            if (e <= prev || e > ls.dict_chars_.size())
                throw FormatError("dictionary word ends under '" + prefix + "' are not increasing within the buffer");
            prev = e;
        }
        for (uint16_t c : ls.dict_chars_)
            if (c >= 512) throw FormatError("dictionary under '" + prefix + "' holds an invalid symbol");
    }
    return ls;
}

} // namespace pdt
