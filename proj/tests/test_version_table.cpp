#include <bit>
#include <random>
#include <unordered_map>

#include "doctest.h"
#include "vtag/errors.hpp"
#include "vtag/version_table.hpp"

using vtag::ContentRef;
using vtag::VersionTable;

namespace {

ContentRef ref(std::uint64_t offset, std::uint32_t length = 1) {
    return ContentRef{offset, length};
}

}  // namespace

TEST_CASE("home slot follows the multiplicative hash formula") {
    for (std::uint32_t vid : {1u, 2u, 7u, 100u, 4096u, 123456789u}) {
        std::uint64_t h = (static_cast<std::uint64_t>(vid) * 2654435769ULL) & 0xFFFFFFFFULL;
        CHECK(VersionTable::home_slot(vid, 256) == (h >> 24));
        CHECK(VersionTable::home_slot(vid, 2) == (h >> 31));
    }
}

TEST_CASE("a capacity-1 table maps every vid to slot 0") {
    for (std::uint32_t vid : {1u, 2u, 999u}) {
        CHECK(VersionTable::home_slot(vid, 1) == 0);
    }
}

TEST_CASE("lookups against an empty table are absent") {
    VersionTable table;
    CHECK(table.get(1) == nullptr);
    CHECK(table.get(0) == nullptr);
    CHECK(table.size() == 0);
    CHECK(table.latest() == 0);
}

TEST_CASE("put and get round-trip") {
    VersionTable table;
    table.put(3, ref(30));
    table.put(1, ref(10));
    table.put(2, ref(20));
    REQUIRE(table.get(2) != nullptr);
    CHECK(*table.get(2) == ref(20));
    CHECK(table.get(4) == nullptr);
    CHECK(table.size() == 3);
    CHECK(table.latest() == 3);
}

TEST_CASE("put is an upsert") {
    VersionTable table;
    table.put(5, ref(1));
    table.put(5, ref(2));
    CHECK(table.size() == 1);
    CHECK(*table.get(5) == ref(2));
    CHECK(table.latest() == 5);
}

TEST_CASE("vid 0 is reserved") {
    VersionTable table;
    CHECK_THROWS_AS(table.put(0, ref(1)), vtag::ConfigError);
}

TEST_CASE("capacity stays a power of two and load stays at or below 0.7") {
    VersionTable table;
    for (std::uint32_t vid = 1; vid <= 500; ++vid) {
        table.put(vid, ref(vid));
        CHECK(std::has_single_bit(table.capacity()));
        CHECK(table.load_factor() <= 0.7);
    }
    CHECK(table.size() == 500);
    for (std::uint32_t vid = 1; vid <= 500; ++vid) {
        REQUIRE(table.get(vid) != nullptr);
        CHECK(table.get(vid)->offset == vid);
    }
}

TEST_CASE("sizing by expected count avoids growth") {
    VersionTable table(100);
    std::size_t cap = table.capacity();
    CHECK(cap == 256);
    for (std::uint32_t vid = 1; vid <= 100; ++vid) table.put(vid, ref(vid));
    CHECK(table.capacity() == cap);
}

TEST_CASE("vids 1..100 at capacity 256 have mean probe length at most 2") {
    VersionTable table(100);
    REQUIRE(table.capacity() == 256);
    for (std::uint32_t vid = 1; vid <= 100; ++vid) table.put(vid, ref(vid));

    std::uint64_t probes = 0;
    for (std::uint32_t vid = 1; vid <= 100; ++vid) {
        REQUIRE(table.get(vid, &probes) != nullptr);
    }
    CHECK(static_cast<double>(probes) / 100.0 <= 2.0);
}

TEST_CASE("entries come back sorted by vid") {
    VersionTable table;
    table.put(9, ref(90));
    table.put(4, ref(40));
    table.put(7, ref(70));
    auto entries = table.entries();
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].first == 4);
    CHECK(entries[1].first == 7);
    CHECK(entries[2].first == 9);
    CHECK(entries[2].second == ref(90));
}

TEST_CASE("table behaves identically to a shadow map over random operations") {
    std::mt19937_64 rng(99);
    VersionTable table;
    std::unordered_map<std::uint32_t, ContentRef> shadow;
    std::uint32_t max_vid = 0;

    std::uint64_t probes = 0, lookups = 0;
    for (int op = 0; op < 10000; ++op) {
        std::uint32_t vid = 1 + static_cast<std::uint32_t>(rng() % 2048);
        if (rng() % 2 == 0) {
            ContentRef r = ref(rng() % 100000, 1 + static_cast<std::uint32_t>(rng() % 64));
            table.put(vid, r);
            shadow[vid] = r;
            max_vid = std::max(max_vid, vid);
        } else {
            const ContentRef* got = table.get(vid, &probes);
            ++lookups;
            auto it = shadow.find(vid);
            if (it == shadow.end()) {
                REQUIRE(got == nullptr);
            } else {
                REQUIRE(got != nullptr);
                REQUIRE(*got == it->second);
            }
        }
        REQUIRE(table.load_factor() <= 0.7);
    }
    CHECK(table.size() == shadow.size());
    CHECK(table.latest() == max_vid);
    CHECK(static_cast<double>(probes) / static_cast<double>(lookups) <= 2.0);
}
