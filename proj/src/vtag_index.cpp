#include "vtag/vtag_index.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vtag/errors.hpp"
#include "vtag/text.hpp"

namespace vtag {

namespace {

constexpr const char* kMetaName = "index.meta";
constexpr const char* kEntriesName = "entries.tsv";
constexpr const char* kSynonymsName = "synonyms.tsv";
constexpr const char* kFormatTag = "vtag-index 1";

bool same_book(const DocumentMeta& a, const DocumentMeta& b) {
    return a.title == b.title && a.author == b.author && a.edition == b.edition &&
           a.publisher == b.publisher && a.year == b.year;
}

template <typename T>
T parse_number(std::string_view field, const std::string& what) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw CorpusError("index file: malformed " + what + " '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string> split_on(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        std::size_t pos = line.find(sep, begin);
        fields.push_back(line.substr(begin, pos - begin));
        if (pos == std::string::npos) break;
        begin = pos + 1;
    }
    return fields;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorpusError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

VTagIndex VTagIndex::build(const Corpus& corpus, std::size_t fanout) {
    validate_corpus(corpus);
    VTagIndex index(fanout);
    for (const auto& doc : corpus) {
        index.insert_document(doc);
    }
    return index;
}

void VTagIndex::insert_document(const VersionedDocument& doc) {
    if (doc.versions.empty()) {
        throw CorpusError("document " + std::to_string(doc.meta.doc_id) +
                          ": must have at least one version");
    }
    std::string key = serialize_pattern(build_pattern(doc.meta));

    if (VTagLeafEntry* existing = tree_.find_mutable(key)) {
        if (same_book(existing->meta, doc.meta)) {
            merge_versions(*existing, doc);
            return;
        }
        key += "|" + std::to_string(doc.meta.doc_id);
    }

    VTagLeafEntry entry;
    entry.meta = doc.meta;
    entry.table = VersionTable(doc.versions.size());
    for (std::uint32_t k = 1; k <= doc.latest(); ++k) {
        entry.table.put(k, content_.append(doc.meta.doc_id, doc.version(k)));
    }
    if (!tree_.insert(key, std::move(entry))) {
        throw CorpusError("duplicate index key '" + key + "'");
    }
}

void VTagIndex::merge_versions(VTagLeafEntry& entry, const VersionedDocument& doc) {
    for (std::uint32_t k = 1; k <= doc.latest(); ++k) {
        const std::string& bytes = doc.version(k);
        if (const ContentRef* ref = entry.table.get(k)) {
            if (content_.read(entry.meta.doc_id, *ref) != bytes) {
                throw CorpusError("document " + std::to_string(doc.meta.doc_id) + " version " +
                                  std::to_string(k) + " conflicts with document " +
                                  std::to_string(entry.meta.doc_id));
            }
            continue;
        }
        entry.table.put(k, content_.append(entry.meta.doc_id, bytes));
    }
}

const VTagLeafEntry* VTagIndex::find(const std::vector<Pattern>& queries,
                                     SearchStats* stats) const {
    if (queries.empty()) {
        throw ConfigError("at least one query pattern is required");
    }
    std::string nearest;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const std::string probe = context_string(queries[qi]) + "|";
        const std::string want = serialize_pattern(queries[qi]);

        auto c = tree_.lower_bound(probe, stats);
        if (qi == 0 && !c.at_end()) nearest = c.key();

        const VTagLeafEntry* first = nullptr;
        while (!c.at_end() && c.key().compare(0, probe.size(), probe) == 0) {
            if (c.key() == want) return &c.value();
            if (!first) first = &c.value();
            tree_.advance(c, stats);
        }
        if (first) return first;
    }

    std::string message = "no document matches context \"" +
                          join_tokens(queries.front().context) + "\"";
    if (!nearest.empty()) {
        message += "; nearest key: \"" + nearest + "\"";
    } else if (tree_.size() == 0) {
        message += "; index is empty";
    }
    throw NotFoundError(message);
}

RetrievalResult VTagIndex::find_bv(const std::vector<Pattern>& queries, std::uint32_t vid,
                                   RetrievalStats* stats) const {
    if (vid < 1) {
        throw ConfigError("vid must be >= 1");
    }
    SearchStats search;
    const VTagLeafEntry* entry = find(queries, &search);
    if (stats) {
        stats->node_visits += search.node_visits;
        ++stats->descents;
    }

    std::uint64_t probes = 0;
    std::uint64_t lookups = 1;
    const ContentRef* ref = entry->table.get(vid, &probes);
    std::uint32_t m = vid;
    bool exact = true;
    if (!ref) {
        m = entry->table.latest();
        exact = false;
        ref = entry->table.get(m, &probes);
        ++lookups;
        if (!ref) {
            throw std::logic_error("leaf entry with empty version table");
        }
    }
    if (stats) {
        stats->probes += probes;
        stats->table_lookups += lookups;
    }

    RetrievalResult result;
    result.doc_id = entry->meta.doc_id;
    result.m = m;
    result.content = std::string(content_.read(entry->meta.doc_id, *ref));
    result.exact = exact;
    return result;
}

std::vector<RetrievalResult> VTagIndex::find_bv_batch(const std::vector<Pattern>& queries,
                                                      const std::vector<std::uint32_t>& vids,
                                                      RetrievalStats* stats) const {
    for (std::uint32_t vid : vids) {
        if (vid < 1) throw ConfigError("vid must be >= 1");
    }
    SearchStats search;
    const VTagLeafEntry* entry = find(queries, &search);
    if (stats) {
        stats->node_visits += search.node_visits;
        ++stats->descents;
    }

    std::vector<RetrievalResult> results;
    results.reserve(vids.size());
    for (std::uint32_t vid : vids) {
        std::uint64_t probes = 0;
        std::uint64_t lookups = 1;
        const ContentRef* ref = entry->table.get(vid, &probes);
        std::uint32_t m = vid;
        bool exact = true;
        if (!ref) {
            m = entry->table.latest();
            exact = false;
            ref = entry->table.get(m, &probes);
            ++lookups;
            if (!ref) {
                throw std::logic_error("leaf entry with empty version table");
            }
        }
        if (stats) {
            stats->probes += probes;
            stats->table_lookups += lookups;
        }
        RetrievalResult result;
        result.doc_id = entry->meta.doc_id;
        result.m = m;
        result.content = std::string(content_.read(entry->meta.doc_id, *ref));
        result.exact = exact;
        results.push_back(std::move(result));
    }
    return results;
}

void VTagIndex::store(const std::filesystem::path& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "content");

    {
        std::ofstream meta(dir / kMetaName, std::ios::binary);
        if (!meta) throw CorpusError("cannot write " + (dir / kMetaName).string());
        meta << kFormatTag << '\n' << "fanout " << tree_.fanout() << '\n';
    }

    std::ofstream entries(dir / kEntriesName, std::ios::binary);
    if (!entries) throw CorpusError("cannot write " + (dir / kEntriesName).string());
    tree_.for_each([&](const std::string& key, const VTagLeafEntry& entry) {
        entries << key << '\t' << entry.meta.doc_id << '\t' << entry.meta.title << '\t'
                << entry.meta.author << '\t' << entry.meta.edition << '\t'
                << entry.meta.publisher << '\t' << entry.meta.year << '\t';
        bool first = true;
        for (const auto& [vid, ref] : entry.table.entries()) {
            if (!first) entries << ',';
            first = false;
            entries << vid << ':' << ref.offset << ':' << ref.length;
        }
        entries << '\n';
    });

    for (const auto& [doc_id, blob] : content_.blobs()) {
        fs::path path = dir / "content" / (std::to_string(doc_id) + ".dat");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw CorpusError("cannot write " + path.string());
        out << blob;
    }

    if (!synonyms_.empty()) {
        synonyms_.store(dir / kSynonymsName);
    }
}

VTagIndex VTagIndex::load(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;

    std::string meta = read_file(dir / kMetaName);
    std::istringstream meta_in(meta);
    std::string tag_line, fanout_line;
    std::getline(meta_in, tag_line);
    std::getline(meta_in, fanout_line);
    if (tag_line != kFormatTag) {
        throw CorpusError("unrecognized index format in " + (dir / kMetaName).string());
    }
    if (fanout_line.rfind("fanout ", 0) != 0) {
        throw CorpusError("index.meta: missing fanout line");
    }
    std::size_t fanout = parse_number<std::size_t>(
        std::string_view(fanout_line).substr(7), "fanout");

    VTagIndex index(fanout);

    std::ifstream entries(dir / kEntriesName, std::ios::binary);
    if (!entries) throw CorpusError("cannot read " + (dir / kEntriesName).string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(entries, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 8) {
            throw CorpusError("entries.tsv line " + std::to_string(lineno) +
                              ": expected 8 tab-separated fields, got " +
                              std::to_string(fields.size()));
        }
        VTagLeafEntry entry;
        entry.meta.doc_id = parse_number<std::uint32_t>(fields[1], "doc_id");
        entry.meta.title = fields[2];
        entry.meta.author = fields[3];
        entry.meta.edition = parse_number<int>(fields[4], "edition");
        entry.meta.publisher = fields[5];
        entry.meta.year = parse_number<int>(fields[6], "year");

        std::vector<std::string> refs = split_on(fields[7], ',');
        entry.table = VersionTable(refs.size());
        for (const std::string& r : refs) {
            std::vector<std::string> parts = split_on(r, ':');
            if (parts.size() != 3) {
                throw CorpusError("entries.tsv line " + std::to_string(lineno) +
                                  ": malformed version reference '" + r + "'");
            }
            ContentRef ref;
            ref.offset = parse_number<std::uint64_t>(parts[1], "content offset");
            ref.length = parse_number<std::uint32_t>(parts[2], "content length");
            entry.table.put(parse_number<std::uint32_t>(parts[0], "vid"), ref);
        }
        if (entry.table.size() == 0) {
            throw CorpusError("entries.tsv line " + std::to_string(lineno) +
                              ": entry has no versions");
        }
        index.insert_entry(fields[0], std::move(entry));
    }

    for (const auto& dirent : fs::directory_iterator(dir / "content")) {
        fs::path path = dirent.path();
        if (path.extension() != ".dat") continue;
        std::uint32_t doc_id =
            parse_number<std::uint32_t>(path.stem().string(), "content file name");
        index.content_.adopt_blob(doc_id, read_file(path));
    }

    if (fs::exists(dir / kSynonymsName)) {
        index.synonyms_ = SynonymMap::load(dir / kSynonymsName);
    }
    return index;
}

void VTagIndex::insert_entry(const std::string& key, VTagLeafEntry entry) {
    if (!tree_.insert(key, std::move(entry))) {
        throw CorpusError("duplicate key '" + key + "' in index file");
    }
}

}  // namespace vtag
