#include "vtag/version_table.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "vtag/errors.hpp"

namespace vtag {

namespace {

std::size_t capacity_for(std::size_t expected) {
    std::size_t cap = 8;
    while (expected * 10 > cap * 7) cap *= 2;
    return cap;
}

}  // namespace

VersionTable::VersionTable(std::size_t expected_versions)
    : slots_(capacity_for(expected_versions)) {}

std::size_t VersionTable::home_slot(std::uint32_t vid, std::size_t capacity) {
    if (capacity <= 1) return 0;
    assert(std::has_single_bit(capacity));
    unsigned bits = static_cast<unsigned>(std::countr_zero(capacity));
    std::uint32_t h = vid * 2654435769u;
    return h >> (32 - bits);
}

void VersionTable::put(std::uint32_t vid, ContentRef ref) {
    if (vid == 0) {
        throw ConfigError("version id 0 is reserved");
    }
    if ((count_ + 1) * 10 > capacity() * 7) {
        grow();
    }
    place(vid, ref);
    latest_ = std::max(latest_, vid);
}

void VersionTable::place(std::uint32_t vid, ContentRef ref) {
    std::size_t cap = capacity();
    std::size_t slot = home_slot(vid, cap);
    for (std::size_t i = 0; i < cap; ++i) {
        Slot& s = slots_[(slot + i) & (cap - 1)];
        if (s.vid == vid) {
            s.ref = ref;
            return;
        }
        if (s.vid == 0) {
            s.vid = vid;
            s.ref = ref;
            ++count_;
            return;
        }
    }
    throw std::logic_error("version table full despite load factor bound");
}

void VersionTable::grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.size() * 2, Slot{});
    count_ = 0;
    for (const Slot& s : old) {
        if (s.vid != 0) place(s.vid, s.ref);
    }
}

const ContentRef* VersionTable::get(std::uint32_t vid, std::uint64_t* probes) const {
    if (vid == 0) return nullptr;
    std::size_t cap = capacity();
    std::size_t slot = home_slot(vid, cap);
    for (std::size_t i = 0; i < cap; ++i) {
        const Slot& s = slots_[(slot + i) & (cap - 1)];
        if (probes) ++*probes;
        if (s.vid == vid) return &s.ref;
        if (s.vid == 0) return nullptr;
    }
    return nullptr;
}

double VersionTable::load_factor() const {
    return static_cast<double>(count_) / static_cast<double>(capacity());
}

std::vector<std::pair<std::uint32_t, ContentRef>> VersionTable::entries() const {
    std::vector<std::pair<std::uint32_t, ContentRef>> out;
    out.reserve(count_);
    for (const Slot& s : slots_) {
        if (s.vid != 0) out.emplace_back(s.vid, s.ref);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace vtag
