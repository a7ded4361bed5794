#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

namespace pdt {

// Immutable array that either owns its storage or views a region of a
// memory-mapped container. Copies share the underlying storage.
template <typename T>
class MappedArray {
    static_assert(std::is_trivially_copyable_v<T>);

public:
    MappedArray() = default;

    explicit MappedArray(std::vector<T> values)
    {
        auto owned = std::make_shared<const std::vector<T>>(std::move(values));
        data_ = owned->data();
        size_ = owned->size();
        keep_ = std::move(owned);
    }

    MappedArray(std::shared_ptr<const void> keep, const T* data, std::size_t size)
        : keep_(std::move(keep)), data_(data), size_(size)
    {}

    const T* data() const { return data_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    const T* begin() const { return data_; }
    const T* end() const { return data_ + size_; }
    std::span<const T> span() const { return {data_, size_}; }
    std::size_t size_in_bytes() const { return size_ * sizeof(T); }

private:
    std::shared_ptr<const void> keep_;
    const T* data_ = nullptr;
    std::size_t size_ = 0;
};

} // namespace pdt
