#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vtag/btree.hpp"
#include "vtag/content_store.hpp"
#include "vtag/corpus.hpp"
#include "vtag/pattern.hpp"
#include "vtag/retrieval.hpp"
#include "vtag/version_table.hpp"

namespace vtag {

struct VTagLeafEntry {
    DocumentMeta meta;
    VersionTable table;
};

// Context-pattern B+-tree whose leaf entries carry document metadata and a
// per-document version table. Version contents live in an append-only
// content store addressed by the table's references.
class VTagIndex {
public:
    static constexpr std::size_t kDefaultFanout = 32;

    explicit VTagIndex(std::size_t fanout = kDefaultFanout) : tree_(fanout) {}

    static VTagIndex build(const Corpus& corpus, std::size_t fanout = kDefaultFanout);

    void insert_document(const VersionedDocument& doc);

    // Tries the query patterns in order; within one pattern the entry whose
    // serialized key matches exactly wins, otherwise the smallest key with
    // the same context. Throws NotFoundError when no pattern matches.
    const VTagLeafEntry* find(const std::vector<Pattern>& queries,
                              SearchStats* stats = nullptr) const;

    RetrievalResult find_bv(const std::vector<Pattern>& queries, std::uint32_t vid,
                            RetrievalStats* stats = nullptr) const;

    // One tree descent, then one table lookup per requested vid.
    std::vector<RetrievalResult> find_bv_batch(const std::vector<Pattern>& queries,
                                               const std::vector<std::uint32_t>& vids,
                                               RetrievalStats* stats = nullptr) const;

    void set_synonyms(SynonymMap map) { synonyms_ = std::move(map); }
    const SynonymMap& synonyms() const { return synonyms_; }

    void store(const std::filesystem::path& dir) const;
    static VTagIndex load(const std::filesystem::path& dir);

    std::size_t size() const { return tree_.size(); }
    std::size_t height() const { return tree_.height(); }
    std::size_t fanout() const { return tree_.fanout(); }
    std::uint64_t fingerprint() const { return tree_.fingerprint(); }
    void validate() const { tree_.validate(); }

    template <typename Fn>
    void for_each_entry(Fn&& fn) const {
        tree_.for_each(fn);
    }

private:
    void insert_entry(const std::string& key, VTagLeafEntry entry);
    void merge_versions(VTagLeafEntry& entry, const VersionedDocument& doc);

    BPlusTree<VTagLeafEntry> tree_;
    ContentStore content_;
    SynonymMap synonyms_;
};

}  // namespace vtag
