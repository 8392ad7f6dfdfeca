#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vtag/corpus.hpp"
#include "vtag/diff.hpp"
#include "vtag/pattern.hpp"
#include "vtag/retrieval.hpp"

namespace vtag {

enum class Scheme { ebvr, rbvr };

const char* scheme_name(Scheme scheme);

/// One piece of a reference record: either a run copied from the previous
/// version or literal new tokens.
struct Segment {
    enum class Kind { copy, literal };
    Kind kind = Kind::copy;
    std::uint32_t source_version = 0;  // copy: always version_id - 1
    std::size_t start = 0;             // copy: offset into the source tokens
    std::size_t length = 0;            // copy: run length
    Tokens tokens;                     // literal

    bool operator==(const Segment&) const = default;
};

/// Recipe reassembling version version_id out of version (version_id - 1)
/// runs and literal tokens.
struct ReferenceRecord {
    std::uint32_t version_id = 0;
    std::vector<Segment> segments;
};

ReferenceRecord make_reference_record(std::uint32_t version_id, const Tokens& from,
                                      const Tokens& to);

/// Resolves a record against the previous version's tokens. Each segment
/// resolved adds one to *segments_resolved. Throws std::logic_error when a
/// copy segment is out of range or names the wrong source version.
Tokens apply_reference_record(const ReferenceRecord& record, const Tokens& previous,
                              std::uint64_t* segments_resolved = nullptr);

/// EBVR keeps version 1 plus edit scripts and replays them in order; RBVR
/// keeps version 1 plus reference records and resolves them back toward the
/// base. Both locate documents by a linear scan over a flat sorted key list
/// and share find_bv's fallback-to-latest contract.
class BaselineStore {
public:
    static BaselineStore build(const Corpus& corpus, Scheme scheme);

    Scheme scheme() const { return scheme_; }
    std::size_t doc_count() const { return docs_.size(); }

    RetrievalResult retrieve(const Pattern& query, std::uint32_t vid,
                             RetrievalStats* stats = nullptr) const;

    /// Independent reconstruction per requested vid.
    std::vector<RetrievalResult> retrieve_batch(const Pattern& query,
                                                const std::vector<std::uint32_t>& vids,
                                                RetrievalStats* stats = nullptr) const;

    const std::vector<std::pair<std::string, std::size_t>>& key_list() const {
        return keys_;
    }
    const std::vector<EditScript>& scripts(std::uint32_t doc_id) const;
    const std::vector<ReferenceRecord>& records(std::uint32_t doc_id) const;

private:
    struct DocState {
        DocumentMeta meta;
        std::string base_bytes;  // version 1 exactly as stored
        Tokens base_tokens;
        std::uint32_t n = 1;
        std::vector<EditScript> scripts;        // versions 2..n (EBVR)
        std::vector<ReferenceRecord> records;   // versions 2..n (RBVR)
    };

    std::size_t locate(const Pattern& query, RetrievalStats* stats) const;
    const DocState& doc_by_id(std::uint32_t doc_id) const;
    RetrievalResult reconstruct(const DocState& doc, std::uint32_t vid,
                                RetrievalStats* stats) const;

    Scheme scheme_ = Scheme::ebvr;
    std::vector<DocState> docs_;
    std::vector<std::pair<std::string, std::size_t>> keys_;  // sorted by key
};

inline BaselineStore build_ebvr(const Corpus& corpus) {
    return BaselineStore::build(corpus, Scheme::ebvr);
}

inline BaselineStore build_rbvr(const Corpus& corpus) {
    return BaselineStore::build(corpus, Scheme::rbvr);
}

}  // namespace vtag
