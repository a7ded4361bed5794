#include "pdt/mapped_file.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include "pdt/errors.hpp"

namespace pdt {

MappedFile::MappedFile(const std::string& path) : path_(path)
{
    fd_ = ::open(path.c_str(), O_RDONLY);
    if (fd_ < 0) throw InputError("cannot open '" + path + "'");
    struct stat st{};
    if (::fstat(fd_, &st) != 0) {
        ::close(fd_);
        throw InputError("cannot stat '" + path + "'");
    }
    size_ = std::size_t(st.st_size);
    if (size_ > 0) {
        void* p = ::mmap(nullptr, size_, PROT_READ, MAP_SHARED, fd_, 0);
        if (p == MAP_FAILED) {
            ::close(fd_);
            throw InputError("cannot map '" + path + "'");
        }
        data_ = static_cast<const uint8_t*>(p);
    }
}

MappedFile::~MappedFile()
{
    if (data_) ::munmap(const_cast<uint8_t*>(data_), size_);
    if (fd_ >= 0) ::close(fd_);
}

} // namespace pdt
