#include "vtag/pattern.hpp"

#include <fstream>
#include <unordered_set>

#include "vtag/errors.hpp"

namespace vtag {

Pattern build_pattern_from_title(std::string_view title) {
    TokenStream raw = tokenize(title);
    if (raw.empty()) {
        throw ConfigError("cannot build a pattern from an empty title");
    }

    Pattern p;
    std::size_t first = raw.size(), last = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!is_stopword(raw[i])) {
            if (first == raw.size()) first = i;
            last = i;
            p.context.push_back(raw[i]);
        }
    }
    if (p.context.empty()) {
        // all-stop-word title: the full stream becomes the context
        p.context = raw;
        return p;
    }
    std::size_t pre_begin = first >= 2 ? first - 2 : 0;
    p.prefix.assign(raw.begin() + pre_begin, raw.begin() + first);
    std::size_t suf_end = std::min(raw.size(), last + 3);
    p.suffix.assign(raw.begin() + last + 1, raw.begin() + suf_end);
    return p;
}

Pattern build_pattern(const DocumentMeta& meta) {
    return build_pattern_from_title(meta.title);
}

std::string serialize_pattern(const Pattern& p) {
    std::string key = join_tokens(p.context);
    key.push_back('|');
    key += join_tokens(p.prefix);
    key.push_back('|');
    key += join_tokens(p.suffix);
    return key;
}

std::string context_string(const Pattern& p) {
    return join_tokens(p.context);
}

namespace {

std::string canonical_context(std::string_view text) {
    return context_string(build_pattern_from_title(text));
}

}  // namespace

SynonymMap SynonymMap::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw CorpusError("cannot open synonym file: " + file.string());
    }
    SynonymMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw CorpusError("synonym file " + file.string() + " line " +
                              std::to_string(lineno) +
                              ": expected <context>\\t<synonym>");
        }
        map.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return map;
}

void SynonymMap::store(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw CorpusError("cannot write synonym file: " + file.string());
    }
    for (const auto& [ctx, syns] : entries_) {
        for (const auto& s : syns) {
            out << ctx << '\t' << s << '\n';
        }
    }
}

void SynonymMap::add(std::string_view context, std::string_view synonym) {
    entries_[canonical_context(context)].emplace_back(synonym);
}

const std::vector<std::string>* SynonymMap::lookup(const std::string& canonical) const {
    auto it = entries_.find(canonical);
    return it == entries_.end() ? nullptr : &it->second;
}

std::size_t SynonymMap::size() const {
    std::size_t n = 0;
    for (const auto& [ctx, syns] : entries_) n += syns.size();
    return n;
}

std::vector<Pattern> query_to_pattern(std::string_view query_text,
                                      const SynonymMap* synonyms) {
    if (query_text.empty()) {
        throw ConfigError("empty query");
    }
    std::vector<Pattern> out;
    out.push_back(build_pattern_from_title(query_text));
    if (synonyms != nullptr) {
        if (const auto* syns = synonyms->lookup(context_string(out.front()))) {
            for (const auto& s : *syns) {
                out.push_back(build_pattern_from_title(s));
            }
        }
    }
    return out;
}

std::vector<ClassifiedDocument> classify_corpus(const Corpus& corpus) {
    std::vector<ClassifiedDocument> out;
    out.reserve(corpus.size());
    std::unordered_set<std::string> used;
    for (const auto& doc : corpus) {
        ClassifiedDocument cd;
        cd.doc_id = doc.meta.doc_id;
        cd.pattern = build_pattern(doc.meta);
        cd.key = serialize_pattern(cd.pattern);
        if (!used.insert(cd.key).second) {
            cd.key += '|' + std::to_string(cd.doc_id);
            used.insert(cd.key);
        }
        out.push_back(std::move(cd));
    }
    return out;
}

}  // namespace vtag
