#include "vtag/baselines.hpp"

#include <algorithm>
#include <optional>

#include "vtag/errors.hpp"
#include "vtag/text.hpp"

namespace vtag {

const char* scheme_name(Scheme scheme) {
    return scheme == Scheme::ebvr ? "ebvr" : "rbvr";
}

ReferenceRecord make_reference_record(std::uint32_t version_id, const Tokens& from,
                                      const Tokens& to) {
    ReferenceRecord record;
    record.version_id = version_id;

    std::size_t b_done = 0;
    for (const CommonRun& run : lcs_runs(from, to)) {
        if (run.b_pos > b_done) {
            Segment lit;
            lit.kind = Segment::Kind::literal;
            lit.tokens.assign(to.begin() + static_cast<std::ptrdiff_t>(b_done),
                              to.begin() + static_cast<std::ptrdiff_t>(run.b_pos));
            record.segments.push_back(std::move(lit));
        }
        Segment copy;
        copy.kind = Segment::Kind::copy;
        copy.source_version = version_id - 1;
        copy.start = run.a_pos;
        copy.length = run.len;
        record.segments.push_back(std::move(copy));
        b_done = run.b_pos + run.len;
    }
    if (b_done < to.size()) {
        Segment lit;
        lit.kind = Segment::Kind::literal;
        lit.tokens.assign(to.begin() + static_cast<std::ptrdiff_t>(b_done), to.end());
        record.segments.push_back(std::move(lit));
    }
    return record;
}

Tokens apply_reference_record(const ReferenceRecord& record, const Tokens& previous,
                              std::uint64_t* segments_resolved) {
    Tokens out;
    for (const Segment& seg : record.segments) {
        if (segments_resolved) ++*segments_resolved;
        if (seg.kind == Segment::Kind::literal) {
            out.insert(out.end(), seg.tokens.begin(), seg.tokens.end());
            continue;
        }
        if (seg.source_version + 1 != record.version_id) {
            throw std::logic_error("copy segment must reference the previous version");
        }
        if (seg.start > previous.size() || previous.size() - seg.start < seg.length) {
            throw std::logic_error("copy segment out of range");
        }
        out.insert(out.end(), previous.begin() + static_cast<std::ptrdiff_t>(seg.start),
                   previous.begin() + static_cast<std::ptrdiff_t>(seg.start + seg.length));
    }
    return out;
}

BaselineStore BaselineStore::build(const Corpus& corpus, Scheme scheme) {
    validate_corpus(corpus);
    BaselineStore store;
    store.scheme_ = scheme;
    store.docs_.reserve(corpus.size());

    for (const VersionedDocument& doc : corpus) {
        DocState state;
        state.meta = doc.meta;
        state.base_bytes = doc.versions.front();
        state.base_tokens = split_whitespace(state.base_bytes);
        state.n = doc.latest();

        Tokens prev = state.base_tokens;
        for (std::uint32_t k = 2; k <= state.n; ++k) {
            Tokens cur = split_whitespace(doc.version(k));
            if (scheme == Scheme::ebvr) {
                state.scripts.push_back(make_edit_script(k, prev, cur));
            } else {
                state.records.push_back(make_reference_record(k, prev, cur));
            }
            prev = std::move(cur);
        }
        store.docs_.push_back(std::move(state));
    }

    for (const ClassifiedDocument& cd : classify_corpus(corpus)) {
        std::size_t index = store.docs_.size();
        for (std::size_t i = 0; i < store.docs_.size(); ++i) {
            if (store.docs_[i].meta.doc_id == cd.doc_id) {
                index = i;
                break;
            }
        }
        store.keys_.emplace_back(cd.key, index);
    }
    std::sort(store.keys_.begin(), store.keys_.end());
    return store;
}

std::size_t BaselineStore::locate(const Pattern& query, RetrievalStats* stats) const {
    const std::string want = serialize_pattern(query);
    const std::string probe = context_string(query) + "|";

    std::size_t fallback = keys_.size();
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (stats) ++stats->comparisons;
        const std::string& key = keys_[i].first;
        if (key == want) return keys_[i].second;
        if (fallback == keys_.size() && key.compare(0, probe.size(), probe) == 0) {
            fallback = i;
        }
    }
    if (fallback < keys_.size()) return keys_[fallback].second;
    throw NotFoundError("no document matches context \"" + join_tokens(query.context) +
                        "\"");
}

const BaselineStore::DocState& BaselineStore::doc_by_id(std::uint32_t doc_id) const {
    for (const DocState& doc : docs_) {
        if (doc.meta.doc_id == doc_id) return doc;
    }
    throw NotFoundError("no document with id " + std::to_string(doc_id));
}

RetrievalResult BaselineStore::reconstruct(const DocState& doc, std::uint32_t vid,
                                           RetrievalStats* stats) const {
    std::uint32_t m = std::min(vid, doc.n);

    RetrievalResult result;
    result.doc_id = doc.meta.doc_id;
    result.m = m;
    result.exact = vid <= doc.n;
    if (m == 1) {
        result.content = doc.base_bytes;
        return result;
    }

    if (scheme_ == Scheme::ebvr) {
        Tokens tokens = doc.base_tokens;
        for (std::uint32_t k = 2; k <= m; ++k) {
            tokens = apply_edit_script(doc.scripts[k - 2], std::move(tokens),
                                       stats ? &stats->edit_ops : nullptr);
        }
        result.content = join_tokens(tokens);
        return result;
    }

    std::vector<std::optional<Tokens>> memo(m + 1);
    auto resolve = [&](auto&& self, std::uint32_t k) -> const Tokens& {
        std::optional<Tokens>& slot = memo[k];
        if (!slot) {
            if (k == 1) {
                slot = doc.base_tokens;
            } else {
                const Tokens& prev = self(self, k - 1);
                slot = apply_reference_record(doc.records[k - 2], prev,
                                              stats ? &stats->segments : nullptr);
            }
        }
        return *slot;
    };
    result.content = join_tokens(resolve(resolve, m));
    return result;
}

RetrievalResult BaselineStore::retrieve(const Pattern& query, std::uint32_t vid,
                                        RetrievalStats* stats) const {
    if (vid < 1) {
        throw ConfigError("vid must be >= 1");
    }
    return reconstruct(docs_[locate(query, stats)], vid, stats);
}

std::vector<RetrievalResult> BaselineStore::retrieve_batch(
    const Pattern& query, const std::vector<std::uint32_t>& vids,
    RetrievalStats* stats) const {
    for (std::uint32_t vid : vids) {
        if (vid < 1) throw ConfigError("vid must be >= 1");
    }
    const DocState& doc = docs_[locate(query, stats)];
    std::vector<RetrievalResult> results;
    results.reserve(vids.size());
    for (std::uint32_t vid : vids) {
        results.push_back(reconstruct(doc, vid, stats));
    }
    return results;
}

const std::vector<EditScript>& BaselineStore::scripts(std::uint32_t doc_id) const {
    return doc_by_id(doc_id).scripts;
}

const std::vector<ReferenceRecord>& BaselineStore::records(std::uint32_t doc_id) const {
    return doc_by_id(doc_id).records;
}

}  // namespace vtag
