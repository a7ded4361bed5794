#include "pdt/container.hpp"

#include <algorithm>
#include <fstream>

#include "pdt/mapped_file.hpp"

namespace pdt {

namespace {

constexpr char magic[4] = {'P', 'D', 'T', '1'};
constexpr std::size_t header_size = 24;
constexpr std::size_t entry_size = section_name_size + 16;

uint64_t align8(uint64_t x) { return (x + 7) & ~uint64_t(7); }

template <typename T>
void put(std::vector<uint8_t>& out, std::size_t pos, T value)
{
    std::memcpy(out.data() + pos, &value, sizeof(T));
}

template <typename T>
T get_scalar(const uint8_t* p)
{
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
}

} // namespace

uint64_t fnv1a64(std::span<const uint8_t> bytes)
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void ContainerWriter::add_bytes(const std::string& name, std::vector<uint8_t> bytes)
{
    if (name.empty() || name.size() >= section_name_size)
        throw std::invalid_argument("section name '" + name + "' must have 1.." +
                                    std::to_string(section_name_size - 1) + " characters");
    for (const auto& s : sections_)
        if (s.name == name) throw std::invalid_argument("duplicate section '" + name + "'");
    sections_.push_back({name, std::move(bytes)});
}

std::vector<uint8_t> ContainerWriter::serialize() const
{
    uint64_t pos = align8(header_size + entry_size * sections_.size());
    std::vector<uint64_t> offsets;
    for (const auto& s : sections_) {
        offsets.push_back(pos);
        pos = align8(pos + s.bytes.size());
    }
    std::vector<uint8_t> out(pos, 0);
    std::memcpy(out.data(), magic, 4);
    put<uint32_t>(out, 4, container_version);
    put<uint32_t>(out, 8, static_cast<uint32_t>(kind_));
    put<uint32_t>(out, 12, uint32_t(sections_.size()));
    for (std::size_t i = 0; i < sections_.size(); ++i) {
        const std::size_t e = header_size + i * entry_size;
        std::memcpy(out.data() + e, sections_[i].name.data(), sections_[i].name.size());
        put<uint64_t>(out, e + section_name_size, offsets[i]);
        put<uint64_t>(out, e + section_name_size + 8, sections_[i].bytes.size());
        if (!sections_[i].bytes.empty())
            std::memcpy(out.data() + offsets[i], sections_[i].bytes.data(), sections_[i].bytes.size());
    }
    const uint64_t payload_begin = align8(header_size + entry_size * sections_.size());
    put<uint64_t>(out, 16, fnv1a64(std::span<const uint8_t>(out).subspan(payload_begin)));
    return out;
}

void ContainerWriter::write_file(const std::string& path) const
{
    const auto bytes = serialize();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + path + "'");
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw InputError("write to '" + path + "' failed");
}

ContainerReader ContainerReader::open(const std::string& path, bool verify_checksum)
{
    auto file = std::make_shared<const MappedFile>(path);
    const uint8_t* base = file->data();
    const std::size_t size = file->size();
    return ContainerReader(std::move(file), base, size, verify_checksum);
}

ContainerReader ContainerReader::from_bytes(std::vector<uint8_t> bytes, bool verify_checksum)
{
    // Keep the buffer 8-byte aligned so sections can be viewed in place.
    const std::size_t size = bytes.size();
    auto words = std::make_shared<std::vector<uint64_t>>((size + 7) / 8);
    if (size) std::memcpy(words->data(), bytes.data(), size);
    const auto* base = reinterpret_cast<const uint8_t*>(words->data());
    return ContainerReader(std::move(words), base, size, verify_checksum);
}

ContainerReader::ContainerReader(std::shared_ptr<const void> keep, const uint8_t* base, std::size_t size,
                                 bool verify_checksum)
    : keep_(std::move(keep)), base_(base), size_(size)
{
    if (size_ < header_size) throw FormatError("container truncated: " + std::to_string(size_) + " bytes");
    if (std::memcmp(base_, magic, 4) != 0) throw FormatError("bad magic, not a PDT1 container");
    version_ = get_scalar<uint32_t>(base_ + 4);
    if (version_ != container_version)
        throw FormatError("unsupported container version " + std::to_string(version_));
    kind_ = static_cast<StructureKind>(get_scalar<uint32_t>(base_ + 8));
    const uint32_t count = get_scalar<uint32_t>(base_ + 12);
    const uint64_t table_end = header_size + uint64_t(count) * entry_size;
    if (table_end > size_) throw FormatError("section table truncated");
    const uint64_t payload_begin = align8(table_end);

    uint64_t prev_end = payload_begin;
    for (uint32_t i = 0; i < count; ++i) {
        const uint8_t* e = base_ + header_size + std::size_t(i) * entry_size;
        const char* name = reinterpret_cast<const char*>(e);
        Entry entry{std::string(name, strnlen(name, section_name_size)), get_scalar<uint64_t>(e + section_name_size),
                    get_scalar<uint64_t>(e + section_name_size + 8)};
        if (entry.offset % 8 != 0)
            throw FormatError("section '" + entry.name + "' misaligned at offset " + std::to_string(entry.offset));
        if (entry.offset < prev_end)
            throw FormatError("section '" + entry.name + "' overlaps the previous section");
        if (entry.offset > size_ || entry.length > size_ - entry.offset)
            throw FormatError("section '" + entry.name + "' extends past end of file (offset " +
                              std::to_string(entry.offset) + ", length " + std::to_string(entry.length) +
                              ", file size " + std::to_string(size_) + ")");
        prev_end = entry.offset + entry.length;
        entries_.push_back(std::move(entry));
    }
    if (verify_checksum) {
        const uint64_t stored = get_scalar<uint64_t>(base_ + 16);
        const uint64_t actual =
            payload_begin <= size_ ? fnv1a64({base_ + payload_begin, size_ - payload_begin}) : 0;
        if (stored != actual) throw FormatError("checksum mismatch: container payload is corrupted");
    }
}

bool ContainerReader::has(const std::string& name) const
{
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == name; });
}

std::vector<std::string> ContainerReader::section_names() const
{
    std::vector<std::string> names;
    for (const auto& e : entries_) names.push_back(e.name);
    return names;
}

const ContainerReader::Entry& ContainerReader::find(const std::string& name) const
{
    for (const auto& e : entries_)
        if (e.name == name) return e;
    throw FormatError("missing section '" + name + "'");
}

std::vector<uint64_t> ContainerReader::scalars(const std::string& name, std::size_t expected) const
{
    auto arr = get<uint64_t>(name);
    if (arr.size() != expected)
        throw FormatError("section '" + name + "' holds " + std::to_string(arr.size()) + " scalars, expected " +
                          std::to_string(expected));
    return {arr.begin(), arr.end()};
}

} // namespace pdt
