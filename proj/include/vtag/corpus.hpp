#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vtag {

/// Bibliographic metadata of one document. `doc_id` is unique per corpus.
struct DocumentMeta {
    std::uint32_t doc_id = 0;
    std::string title;
    std::string author;
    int edition = 1;
    std::string publisher;
    int year = 0;

    bool operator==(const DocumentMeta&) const = default;
};

/// A document plus all of its version contents. Version ids are dense:
/// versions[k - 1] holds version k, for k = 1 .. latest().
struct VersionedDocument {
    DocumentMeta meta;
    std::vector<std::string> versions;

    std::uint32_t latest() const { return static_cast<std::uint32_t>(versions.size()); }
    const std::string& version(std::uint32_t k) const;

    bool operator==(const VersionedDocument&) const = default;
};

using Corpus = std::vector<VersionedDocument>;

/// Parameters of the synthetic corpus generator.
struct CorpusSpec {
    std::uint32_t num_docs = 20;
    std::uint32_t versions_per_doc = 20;
    std::uint32_t doc_size_bytes = 4096;
    double delta_ratio = 0.2;  // minimum token-level change between versions
    std::uint64_t seed = 42;
};

/// Generates a deterministic corpus: version 1 of each document is
/// pseudo-random text of roughly doc_size_bytes, and each later version
/// differs from its predecessor by at least delta_ratio of the previous
/// version's tokens (measured as token edit distance, insertions plus
/// deletions). Identical specs produce byte-identical corpora.
Corpus generate_corpus(const CorpusSpec& spec);

/// Writes `manifest.tsv` plus `docs/<doc_id>/v<k>.txt` under `dir`.
void store_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Reads a corpus directory written by store_corpus. Missing manifest,
/// malformed manifest lines and missing version files raise CorpusError
/// naming the offending document and version.
Corpus load_corpus(const std::filesystem::path& dir);

/// Checks corpus invariants (unique ids, non-empty titles, n >= 1).
void validate_corpus(const Corpus& corpus);

}  // namespace vtag
