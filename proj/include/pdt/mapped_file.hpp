#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace pdt {

// Read-only mapping of a whole file; unmapped on destruction.
class MappedFile {
public:
    explicit MappedFile(const std::string& path);
    MappedFile(const MappedFile&) = delete;
    MappedFile& operator=(const MappedFile&) = delete;
    ~MappedFile();

    const uint8_t* data() const { return data_; }
    std::size_t size() const { return size_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    int fd_ = -1;
    const uint8_t* data_ = nullptr;
    std::size_t size_ = 0;
};

} // namespace pdt
