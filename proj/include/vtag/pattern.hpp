#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vtag/corpus.hpp"
#include "vtag/text.hpp"

namespace vtag {

/// The <prefix> <context> <suffix> triple a title is indexed under.
/// `context` holds the significant (non-stop-word) title tokens in order;
/// `prefix` and `suffix` hold up to two surrounding stop words each.
struct Pattern {
    TokenStream prefix;
    TokenStream context;
    TokenStream suffix;

    bool operator==(const Pattern&) const = default;
};

/// Derives the pattern of a title: context = stop-word-free tokens, prefix =
/// up to 2 tokens immediately before the first context token, suffix = up to
/// 2 tokens immediately after the last one. A title made entirely of stop
/// words falls back to the full token stream as context. Throws ConfigError
/// when the title has no tokens at all.
Pattern build_pattern_from_title(std::string_view title);

Pattern build_pattern(const DocumentMeta& meta);

/// Canonical key: context tokens joined by spaces, '|', prefix tokens,
/// '|', suffix tokens. Plain byte-wise comparison of keys sorts patterns
/// context-first.
std::string serialize_pattern(const Pattern& p);

/// Context tokens joined by single spaces.
std::string context_string(const Pattern& p);

/// Static map from context string to replacement context strings. Keys are
/// canonicalized through the same tokenization as titles, so "Data Mining"
/// and "data mining" address the same entry.
class SynonymMap {
public:
    static SynonymMap load(const std::filesystem::path& file);
    void store(const std::filesystem::path& file) const;

    void add(std::string_view context, std::string_view synonym);
    const std::vector<std::string>* lookup(const std::string& canonical_context) const;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const;
    const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }

private:
    std::map<std::string, std::vector<std::string>> entries_;
};

/// Turns a query into the patterns to try, in order: the query's own pattern
/// first, then one pattern per synonym registered for its whole context.
std::vector<Pattern> query_to_pattern(std::string_view query_text,
                                      const SynonymMap* synonyms = nullptr);

struct ClassifiedDocument {
    std::uint32_t doc_id = 0;
    Pattern pattern;
    std::string key;  // serialize_pattern(pattern), possibly "|doc_id"-disambiguated
};

/// Pattern keys for every document, in corpus order. When two documents
/// produce the same key, the later one gets "|doc_id" appended so both stay
/// retrievable. The same rule is applied by the index on insert, so keys
/// here match keys there for any valid corpus.
std::vector<ClassifiedDocument> classify_corpus(const Corpus& corpus);

}  // namespace vtag
