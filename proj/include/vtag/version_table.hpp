#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vtag/content_store.hpp"

namespace vtag {

// Open-addressed hash table from version id to content reference.
// Version id 0 marks an empty slot and is never stored. Capacity is a power
// of two and the load factor is kept at or below 0.7 by doubling.
class VersionTable {
public:
    VersionTable() : slots_(kInitialCapacity) {}
    explicit VersionTable(std::size_t expected_versions);

    // Fibonacci multiplicative hash: multiply by 2654435769 mod 2^32 and keep
    // the top log2(capacity) bits. A table of capacity 1 has only slot 0.
    static std::size_t home_slot(std::uint32_t vid, std::size_t capacity);

    // Insert or overwrite. Throws if vid is 0.
    void put(std::uint32_t vid, ContentRef ref);

    // Returns nullptr when absent. Each slot inspection adds one to *probes.
    const ContentRef* get(std::uint32_t vid, std::uint64_t* probes = nullptr) const;

    std::uint32_t latest() const { return latest_; }
    std::size_t size() const { return count_; }
    std::size_t capacity() const { return slots_.size(); }
    double load_factor() const;

    // All stored pairs in ascending vid order.
    std::vector<std::pair<std::uint32_t, ContentRef>> entries() const;

private:
    struct Slot {
        std::uint32_t vid = 0;
        ContentRef ref;
    };

    static constexpr std::size_t kInitialCapacity = 8;

    void grow();
    void place(std::uint32_t vid, ContentRef ref);

    std::vector<Slot> slots_;
    std::size_t count_ = 0;
    std::uint32_t latest_ = 0;
};

}  // namespace vtag
