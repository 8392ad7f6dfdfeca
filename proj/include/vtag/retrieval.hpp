#pragma once

#include <cstdint>
#include <string>

namespace vtag {

// One retrieval answer. m is the version actually returned: the queried vid
// when stored, otherwise the document's latest version n with exact=false.
struct RetrievalResult {
    std::uint32_t doc_id = 0;
    std::uint32_t m = 0;
    std::string content;
    bool exact = true;
};

// Logical operation counters, accumulated across calls when reused.
// total() is the comparable cost figure: tree traffic for VTAG, key
// comparisons plus replayed edit tokens for EBVR, key comparisons plus
// resolved segments for RBVR.
struct RetrievalStats {
    std::uint64_t node_visits = 0;
    std::uint64_t probes = 0;
    std::uint64_t descents = 0;
    std::uint64_t table_lookups = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t edit_ops = 0;
    std::uint64_t segments = 0;

    std::uint64_t total() const {
        return node_visits + probes + comparisons + edit_ops + segments;
    }
};

}  // namespace vtag
