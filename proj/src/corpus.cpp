#include "pdt/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <queue>

#include <unistd.h>

#include "pdt/errors.hpp"
#include "pdt/mapped_file.hpp"

namespace pdt {

namespace {

// Calls f(line, line_number) for every newline-terminated line; a final line
// without a newline counts too.
template <typename F>
void for_each_line(std::string_view text, F&& f)
{
    uint64_t line = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        f(text.substr(pos, end - pos), ++line);
        pos = end + 1;
    }
}

void check_line(std::string_view s, uint64_t line, const std::string& source)
{
    if (s.find('\0') != std::string_view::npos)
        throw InputError(source + ": line " + std::to_string(line) + " contains a 0x00 byte");
}

void sort_unique(std::vector<std::string_view>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::filesystem::path temp_dir(const CorpusOptions& o)
{
    return o.temp_dir.empty() ? std::filesystem::temp_directory_path() : std::filesystem::path(o.temp_dir);
}

std::filesystem::path temp_file(const std::filesystem::path& dir, const std::string& tag)
{
    static uint64_t counter = 0;
    return dir / ("pdt-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + tag);
}

// Removes a temporary file when the corpus that maps it goes away.
struct TempMapping {
    std::filesystem::path path;
    MappedFile file;
    explicit TempMapping(std::filesystem::path p) : path(std::move(p)), file(path.string()) {}
    ~TempMapping()
    {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

void write_lines(const std::filesystem::path& path, const std::vector<std::string_view>& keys)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    for (auto k : keys) {
        out.write(k.data(), std::streamsize(k.size()));
        out.put('\n');
    }
    if (!out) throw InputError("write to '" + path.string() + "' failed");
}

// Sorted runs of at most budget bytes each, merged into one sorted unique file.
std::filesystem::path merge_sort_to_file(std::string_view text, const CorpusOptions& o)
{
    const auto dir = temp_dir(o);
    std::vector<std::filesystem::path> runs;
    std::vector<std::string_view> chunk;
    uint64_t chunk_bytes = 0;
    auto flush = [&] {
        if (chunk.empty()) return;
        sort_unique(chunk);
        runs.push_back(temp_file(dir, "run" + std::to_string(runs.size())));
        write_lines(runs.back(), chunk);
        chunk.clear();
        chunk_bytes = 0;
    };
    for_each_line(text, [&](std::string_view s, uint64_t) {
        chunk.push_back(s);
        chunk_bytes += s.size() + 1 + sizeof(std::string_view);
        if (chunk_bytes >= o.memory_budget) flush();
    });
    flush();
    chunk.shrink_to_fit();

    struct Head {
        std::string line;
        std::size_t run;
    };
    auto greater = [](const Head& a, const Head& b) { return a.line > b.line || (a.line == b.line && a.run > b.run); };
    std::priority_queue<Head, std::vector<Head>, decltype(greater)> heap(greater);
    std::vector<std::ifstream> in;
    for (const auto& r : runs) in.emplace_back(r, std::ios::binary);
    for (std::size_t i = 0; i < in.size(); ++i) {
        std::string line;
        if (std::getline(in[i], line)) heap.push({std::move(line), i});
    }
    const auto merged = temp_file(dir, "sorted");
    std::ofstream out(merged, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + merged.string() + "'");
    std::string last;
    bool first = true;
    while (!heap.empty()) {
        Head h = heap.top();
        heap.pop();
        if (first || h.line != last) {
            out << h.line << '\n';
            last = h.line;
            first = false;
        }
        if (std::getline(in[h.run], h.line)) heap.push(std::move(h));
    }
    out.close();
    if (!out) throw InputError("write to '" + merged.string() + "' failed");
    in.clear();
    for (const auto& r : runs) std::filesystem::remove(r);
    return merged;
}

} // namespace

Corpus Corpus::load(const std::string& path, const CorpusOptions& options)
{
    auto file = std::make_shared<MappedFile>(path);
    const std::string_view text(reinterpret_cast<const char*>(file->data()), file->size());

    Corpus c;
    bool sorted = true;
    std::string_view prev;
    for_each_line(text, [&](std::string_view s, uint64_t line) {
        check_line(s, line, path);
        if (line > 1 && !(prev < s)) sorted = false;
        prev = s;
        c.input_lines_ = line;
    });
    c.was_sorted_ = sorted;

    std::string_view keys_text = text;
    if (sorted || text.size() <= options.memory_budget) {
        c.keep_ = file;
    } else {
        auto merged = std::make_shared<TempMapping>(merge_sort_to_file(text, options));
        keys_text = std::string_view(reinterpret_cast<const char*>(merged->file.data()), merged->file.size());
        c.keep_ = merged;
        c.external_ = true;
    }
    c.keys_.reserve(c.input_lines_);
    for_each_line(keys_text, [&](std::string_view s, uint64_t) { c.keys_.push_back(s); });
    if (!sorted && !c.external_) sort_unique(c.keys_);
    c.keys_.shrink_to_fit();
    for (auto k : c.keys_) c.raw_bytes_ += k.size() + 1;
    return c;
}

Corpus Corpus::from_strings(std::vector<std::string> strings)
{
    for (std::size_t i = 0; i < strings.size(); ++i) check_line(strings[i], i + 1, "input");
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
    auto owned = std::make_shared<const std::vector<std::string>>(std::move(strings));
    Corpus c;
    c.input_lines_ = owned->size();
    for (const auto& s : *owned) {
        c.keys_.emplace_back(s);
        c.raw_bytes_ += s.size() + 1;
    }
    c.keep_ = std::move(owned);
    return c;
}

void write_corpus(const std::string& path, const std::vector<std::string_view>& keys)
{
    write_lines(path, keys);
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    std::vector<std::string> lines;
    for_each_line(text, [&](std::string_view s, uint64_t line) {
        check_line(s, line, path == "-" ? "stdin" : path);
        lines.emplace_back(s);
    });
    return lines;
}

const std::string& synthetic_alphabet()
{
    static const std::string sigma = [] {
        std::string s;
        for (int c = 0x21; c <= 0x7e; ++c)
            if (c != 'b' && c != 'c' && c != 'd') s += char(c);
        for (int c = 0x80; c <= 0x88; ++c) s += char(c);
        return s;
    }();
    return sigma;
}

uint64_t synthetic_count(const SyntheticParams& p)
{
    if (p.i == 0 || p.j == 0 || p.t == 0 || p.k == 0) throw InputError("synthetic parameters must be positive");
    if (p.k > synthetic_alphabet().size())
        throw InputError("suffix length " + std::to_string(p.k) + " exceeds the " +
                         std::to_string(synthetic_alphabet().size()) + " available distinct bytes");
    uint64_t ij, n;
    if (__builtin_mul_overflow(p.i, p.j, &ij) || __builtin_mul_overflow(ij, p.t, &n))
        throw InputError("synthetic parameters overflow the string count");
    uint64_t len;
    if (__builtin_add_overflow(p.i, p.j, &len) || __builtin_add_overflow(len, p.t + p.k, &len))
        throw InputError("synthetic parameters overflow the string length");
    return n;
}

namespace {

template <typename Emit>
void for_each_synthetic(const SyntheticParams& p, Emit&& emit)
{
    synthetic_count(p);
    const std::string_view sigma(synthetic_alphabet().data(), p.k);
    std::string s;
    for (uint64_t x = 0; x < p.i; ++x)
        for (uint64_t y = 0; y < p.j; ++y)
            for (uint64_t z = 0; z < p.t; ++z) {
                s.assign(x, 'd');
                s.append(y, 'c');
                s.append(z, 'b');
                s.append(sigma);
                emit(s);
            }
}

} // namespace

void gen_synthetic(const SyntheticParams& p, std::ostream& out)
{
    for_each_synthetic(p, [&](const std::string& s) {
        out.write(s.data(), std::streamsize(s.size()));
        out.put('\n');
    });
}

std::vector<std::string> gen_synthetic(const SyntheticParams& p)
{
    std::vector<std::string> v;
    v.reserve(synthetic_count(p));
    for_each_synthetic(p, [&](const std::string& s) { v.push_back(s); });
    return v;
}

} // namespace pdt
