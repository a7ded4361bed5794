#pragma once

// On-disk container shared by every serialized structure.
//
// Layout (all integers little-endian):
//
//   0   char[4]  magic "PDT1"
//   4   u32      format version (currently 1)
//   8   u32      structure kind (see StructureKind)
//   12  u32      section count
//   16  u64      FNV-1a 64 checksum of every byte from the first section to EOF
//   24  entry[section count], 48 bytes each:
//         char[32] name, NUL padded
//         u64      offset of the section from the start of the file
//         u64      section length in bytes
//   ... sections, each starting at an 8-byte aligned offset, zero padded.
//
// Sections appear in the order they were added and never overlap; the writer
// is deterministic, so serializing a loaded structure reproduces the file
// byte for byte.

#include <cstdint>
#include <cstring>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pdt/errors.hpp"
#include "pdt/mapped_array.hpp"

namespace pdt {

enum class StructureKind : uint32_t {
    string_dictionary = 1,
    hollow_mph = 2,
    flat_hollow = 3,
};

inline constexpr uint32_t container_version = 1;
inline constexpr std::size_t section_name_size = 32;

class ContainerWriter {
public:
    explicit ContainerWriter(StructureKind kind) : kind_(kind) {}

    template <typename T>
    void add(const std::string& name, std::span<const T> data)
    {
        std::vector<uint8_t> bytes(data.size_bytes());
        if (!bytes.empty()) std::memcpy(bytes.data(), data.data(), bytes.size());
        add_bytes(name, std::move(bytes));
    }

    template <typename T>
    void add(const std::string& name, const std::vector<T>& data)
    {
        add(name, std::span<const T>(data));
    }

    void add_bytes(const std::string& name, std::vector<uint8_t> bytes);

    std::vector<uint8_t> serialize() const;
    void write_file(const std::string& path) const;

private:
    struct Section {
        std::string name;
        std::vector<uint8_t> bytes;
    };
    StructureKind kind_;
    std::vector<Section> sections_;
};

class ContainerReader {
public:
    static ContainerReader open(const std::string& path, bool verify_checksum = true);
    static ContainerReader from_bytes(std::vector<uint8_t> bytes, bool verify_checksum = true);

    StructureKind kind() const { return kind_; }
    uint32_t version() const { return version_; }
    bool has(const std::string& name) const;
    std::vector<std::string> section_names() const;

    template <typename T>
    MappedArray<T> get(const std::string& name) const
    {
        const Entry& e = find(name);
        if (e.length % sizeof(T) != 0)
            throw FormatError("section '" + name + "' has length " + std::to_string(e.length) +
                              ", not a multiple of " + std::to_string(sizeof(T)));
        return MappedArray<T>(keep_, reinterpret_cast<const T*>(base_ + e.offset), e.length / sizeof(T));
    }

    // Fixed-length section of u64 scalars.
    std::vector<uint64_t> scalars(const std::string& name, std::size_t expected) const;

private:
    struct Entry {
        std::string name;
        uint64_t offset;
        uint64_t length;
    };
    ContainerReader(std::shared_ptr<const void> keep, const uint8_t* base, std::size_t size,
                    bool verify_checksum);
    const Entry& find(const std::string& name) const;

    std::shared_ptr<const void> keep_;
    const uint8_t* base_ = nullptr;
    std::size_t size_ = 0;
    StructureKind kind_{};
    uint32_t version_ = 0;
    std::vector<Entry> entries_;
};

uint64_t fnv1a64(std::span<const uint8_t> bytes);

} // namespace pdt
