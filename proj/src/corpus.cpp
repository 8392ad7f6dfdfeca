#include "vtag/corpus.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "vtag/diff.hpp"
#include "vtag/errors.hpp"
#include "vtag/pattern.hpp"
#include "vtag/text.hpp"

namespace vtag {

const std::string& VersionedDocument::version(std::uint32_t k) const {
    if (k < 1 || k > versions.size()) {
        throw ConfigError("version id " + std::to_string(k) + " out of range for document " +
                          std::to_string(meta.doc_id));
    }
    return versions[k - 1];
}

namespace {

// ---------------------------------------------------------------- word pools

constexpr const char* kAdjectives[] = {
    "ancient",  "applied",    "brief",   "classical", "complete", "concise",
    "critical", "digital",    "distant", "elementary","essential","experimental",
    "final",    "formal",     "general", "golden",    "great",    "hidden",
    "infinite", "introductory","lost",   "modern",    "numerical","practical",
    "quantum",  "quiet",      "rapid",   "selected",  "silent",   "statistical",
    "symbolic", "theoretical","timeless","universal", "visual",   "vital",
};

constexpr const char* kNouns[] = {
    "algebra",    "algorithms", "analysis",   "archive",    "astronomy", "atlas",
    "biology",    "botany",     "calculus",   "cartography","chemistry", "chronicle",
    "cipher",     "circuits",   "compilers",  "computation","cosmology", "databases",
    "dialects",   "dynamics",   "economics",  "encyclopedia","engineering","evolution",
    "fields",     "galaxies",   "gardens",    "genetics",   "geometry",  "glaciers",
    "grammar",    "handbook",   "harmonics",  "history",    "indexing",  "journeys",
    "kernels",    "kinematics", "lexicon",    "libraries",  "logic",     "machines",
    "manuscripts","mathematics","mechanics",  "memoirs",    "methods",   "microscopy",
    "minerals",   "mining",     "navigation", "networks",   "notation",  "oceans",
    "optics",     "orbits",     "particles",  "philosophy", "physics",   "poetry",
    "primer",     "principles", "probability","proofs",     "reactors",  "retrieval",
    "rhetoric",   "rivers",     "semantics",  "signals",    "sketches",  "societies",
    "statistics", "structures", "surveys",    "syntax",     "systems",   "taxonomy",
    "theorems",   "thermodynamics","time",    "topology",   "treatise",  "volcanoes",
};

constexpr const char* kConnectors[] = {"of", "and", "in", "for", "on"};

constexpr const char* kFillerWords[] = {
    "across", "against", "alongside", "among",   "appears", "arise",   "became",
    "begins", "beneath", "beside",    "beyond",  "builds",  "carries", "changes",
    "closer", "derives", "describes", "despite", "draws",   "during",  "emerges",
    "extends","follows", "formed",    "grows",   "holds",   "inside",  "leads",
    "moves",  "nearly",  "occurs",    "often",   "outside", "provides","rarely",
    "remains","requires","results",   "returns", "reveals", "seldom",  "shows",
    "spans",  "stands",  "suggests",  "toward",  "turns",   "within",  "without",
    "yields",
};

constexpr const char* kFirstNames[] = {
    "Ada",    "Alan",   "Barbara", "Claude", "Donald", "Edith", "Edsger",
    "Emmy",   "Grace",  "Hedy",    "John",   "Julia",  "Karen", "Kurt",
    "Leslie", "Margaret","Niklaus","Rosalind","Sofia", "Tim",
};

constexpr const char* kLastNames[] = {
    "Allen",     "Backus",  "Church",   "Curie",   "Dijkstra", "Floyd",
    "Franklin",  "Hamilton","Hopper",   "Kernighan","Knuth",   "Lamport",
    "Liskov",    "Lovelace","McCarthy", "Meitner", "Noether",  "Perlis",
    "Ritchie",   "Shannon", "Turing",   "Wilkes",  "Wirth",    "Wing",
};

constexpr const char* kPublishers[] = {
    "Aldline Press",    "Borealis Books",   "Calder House",  "Dunmore Academic",
    "Eastgate Press",   "Fenwick and Sons", "Graywall Press", "Harbor University Press",
};

template <typename T, std::size_t N>
constexpr std::size_t pool_size(const T (&)[N]) {
    return N;
}

// ------------------------------------------------------------- seeded drawing

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
    // modulo draw: tiny bias, stable across standard library implementations
    return static_cast<std::size_t>(rng() % n);
}

template <typename Pool>
const char* pick(std::mt19937_64& rng, const Pool& pool) {
    return pool[bounded(rng, pool_size(pool))];
}

std::string body_word(std::mt19937_64& rng) {
    constexpr std::size_t na = pool_size(kAdjectives);
    constexpr std::size_t nn = pool_size(kNouns);
    constexpr std::size_t nf = pool_size(kFillerWords);
    std::size_t i = bounded(rng, na + nn + nf);
    if (i < na) return kAdjectives[i];
    if (i < na + nn) return kNouns[i - na];
    return kFillerWords[i - na - nn];
}

std::string capitalize(std::string word) {
    if (!word.empty()) {
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    }
    return word;
}

std::string make_title(std::mt19937_64& rng) {
    const char* articles[] = {"", "A", "The"};
    std::vector<std::string> words;
    std::string art = articles[bounded(rng, 3)];
    if (!art.empty()) words.push_back(art);
    switch (bounded(rng, 6)) {
        case 0:
            words.push_back(capitalize(pick(rng, kAdjectives)));
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
        case 1:
            words.push_back(capitalize(pick(rng, kNouns)));
            words.push_back("of");
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
        case 2:
            words.push_back(capitalize(pick(rng, kAdjectives)));
            words.push_back(capitalize(pick(rng, kNouns)));
            words.push_back(pick(rng, kConnectors));
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
        case 3:
            words.push_back(capitalize(pick(rng, kNouns)));
            words.push_back("in");
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
        case 4:
            words.push_back(capitalize(pick(rng, kNouns)));
            words.push_back("for");
            words.push_back(capitalize(pick(rng, kAdjectives)));
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
        default:
            words.push_back(capitalize(pick(rng, kAdjectives)));
            words.push_back(capitalize(pick(rng, kAdjectives)));
            words.push_back(capitalize(pick(rng, kNouns)));
            break;
    }
    return join_tokens(words);
}

DocumentMeta make_meta(std::mt19937_64& rng, std::uint32_t doc_id,
                       std::unordered_set<std::string>& used_keys) {
    DocumentMeta meta;
    meta.doc_id = doc_id;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::string title = make_title(rng);
        std::string key = serialize_pattern(build_pattern_from_title(title));
        if (used_keys.insert(key).second) {
            meta.title = std::move(title);
            break;
        }
    }
    if (meta.title.empty()) {
        // pools exhausted for this seed; the doc id makes the key unique
        std::string title = make_title(rng) + " Volume " + std::to_string(doc_id);
        used_keys.insert(serialize_pattern(build_pattern_from_title(title)));
        meta.title = std::move(title);
    }
    meta.author = std::string(pick(rng, kFirstNames)) + " " + pick(rng, kLastNames);
    meta.edition = 1 + static_cast<int>(bounded(rng, 4));
    meta.publisher = pick(rng, kPublishers);
    meta.year = 1950 + static_cast<int>(bounded(rng, 74));
    return meta;
}

Tokens make_body(std::mt19937_64& rng, std::size_t target_bytes) {
    Tokens tokens;
    std::size_t joined = 0;
    while (joined < target_bytes) {
        std::string w = body_word(rng);
        joined += w.size() + (tokens.empty() ? 0 : 1);
        tokens.push_back(std::move(w));
    }
    return tokens;
}

// Applies one random edit run; returns its token edit weight (a replacement
// of L tokens weighs 2L, an insertion or deletion of L tokens weighs L).
std::size_t apply_mutation(std::mt19937_64& rng, Tokens& cur) {
    constexpr std::size_t kMinTokens = 8;
    std::size_t kind = bounded(rng, 10);  // 0-5 replace, 6-7 insert, 8-9 delete
    std::size_t len = 1 + bounded(rng, 8);

    if (cur.empty() || kind >= 6) {
        if (kind >= 8 && cur.size() > kMinTokens + len) {
            std::size_t pos = bounded(rng, cur.size() - len);
            cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(pos),
                      cur.begin() + static_cast<std::ptrdiff_t>(pos + len));
            return len;
        }
        std::size_t pos = bounded(rng, cur.size() + 1);
        Tokens fresh;
        fresh.reserve(len);
        for (std::size_t i = 0; i < len; ++i) fresh.push_back(body_word(rng));
        cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(pos), fresh.begin(), fresh.end());
        return len;
    }

    std::size_t pos = bounded(rng, cur.size());
    std::size_t run = std::min(len, cur.size() - pos);
    for (std::size_t i = 0; i < run; ++i) cur[pos + i] = body_word(rng);
    return 2 * run;
}

Tokens mutate_version(std::mt19937_64& rng, const Tokens& prev, double delta_ratio) {
    const std::size_t target = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(delta_ratio * static_cast<double>(prev.size()))));

    Tokens cur = prev;
    std::size_t measured = 0;
    for (int round = 0; round < 64; ++round) {
        std::size_t goal = round == 0 ? target + target / 3
                                      : (target - measured) + (target - measured) / 2 + 4;
        std::size_t weight = 0;
        while (weight < goal) weight += apply_mutation(rng, cur);
        measured = token_edit_distance(prev, cur);
        if (measured >= target) return cur;
    }
    // scattered edits keep re-matching; rewrite the document wholesale
    for (int attempt = 0; attempt < 64; ++attempt) {
        Tokens fresh = make_body(rng, join_tokens(prev).size());
        if (token_edit_distance(prev, fresh) >= target) return fresh;
    }
    throw std::logic_error("corpus generator could not reach the requested delta ratio");
}

// ----------------------------------------------------------------- file layout

constexpr const char* kManifestName = "manifest.tsv";

bool field_clean(const std::string& s) {
    return s.find_first_of("\t\n\r") == std::string::npos;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& field, const std::string& what) {
    T value{};
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw CorpusError("manifest.tsv: malformed " + what + " '" + field + "'");
    }
    return value;
}

std::string version_file(std::uint32_t k) {
    return "v" + std::to_string(k) + ".txt";
}

}  // namespace

Corpus generate_corpus(const CorpusSpec& spec) {
    if (spec.num_docs < 1) throw ConfigError("num_docs must be >= 1");
    if (spec.versions_per_doc < 1) throw ConfigError("versions_per_doc must be >= 1");
    if (spec.doc_size_bytes < 1) throw ConfigError("doc_size_bytes must be >= 1");
    if (!(spec.delta_ratio > 0.0) || spec.delta_ratio > 1.0) {
        throw ConfigError("delta_ratio must be in (0, 1]");
    }

    Corpus corpus;
    corpus.reserve(spec.num_docs);
    std::unordered_set<std::string> used_keys;
    for (std::uint32_t i = 0; i < spec.num_docs; ++i) {
        std::mt19937_64 rng(splitmix64(spec.seed + 0x9E3779B97F4A7C15ULL * (i + 1)));
        VersionedDocument doc;
        doc.meta = make_meta(rng, i + 1, used_keys);

        Tokens tokens = make_body(rng, spec.doc_size_bytes);
        doc.versions.push_back(join_tokens(tokens));
        for (std::uint32_t k = 2; k <= spec.versions_per_doc; ++k) {
            tokens = mutate_version(rng, tokens, spec.delta_ratio);
            doc.versions.push_back(join_tokens(tokens));
        }
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

void validate_corpus(const Corpus& corpus) {
    std::unordered_set<std::uint32_t> ids;
    for (const auto& doc : corpus) {
        const std::string id = std::to_string(doc.meta.doc_id);
        if (!ids.insert(doc.meta.doc_id).second) {
            throw CorpusError("duplicate doc_id " + id);
        }
        if (trimmed(doc.meta.title).empty()) {
            throw CorpusError("document " + id + ": empty title");
        }
        if (doc.versions.empty()) {
            throw CorpusError("document " + id + ": must have at least one version");
        }
        for (const auto* field : {&doc.meta.title, &doc.meta.author, &doc.meta.publisher}) {
            if (!field_clean(*field)) {
                throw CorpusError("document " + id + ": metadata contains tab or newline");
            }
        }
    }
}

void store_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    validate_corpus(corpus);
    namespace fs = std::filesystem;
    fs::create_directories(dir / "docs");

    std::ofstream manifest(dir / kManifestName, std::ios::binary);
    if (!manifest) {
        throw CorpusError("cannot write " + (dir / kManifestName).string());
    }
    for (const auto& doc : corpus) {
        manifest << doc.meta.doc_id << '\t' << doc.latest() << '\t' << doc.meta.title << '\t'
                 << doc.meta.author << '\t' << doc.meta.edition << '\t' << doc.meta.publisher
                 << '\t' << doc.meta.year << '\n';

        fs::path doc_dir = dir / "docs" / std::to_string(doc.meta.doc_id);
        fs::create_directories(doc_dir);
        for (std::uint32_t k = 1; k <= doc.latest(); ++k) {
            std::ofstream out(doc_dir / version_file(k), std::ios::binary);
            if (!out) {
                throw CorpusError("cannot write version file for document " +
                                  std::to_string(doc.meta.doc_id));
            }
            out << doc.version(k);
        }
    }
}

Corpus load_corpus(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::path manifest_path = dir / kManifestName;
    if (!fs::exists(manifest_path)) {
        throw CorpusError("manifest.tsv missing in " + dir.string());
    }
    std::ifstream manifest(manifest_path, std::ios::binary);
    if (!manifest) {
        throw CorpusError("cannot read " + manifest_path.string());
    }

    Corpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(manifest, line)) {
        ++lineno;
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t begin = 0;
        while (true) {
            std::size_t tab = line.find('\t', begin);
            fields.push_back(line.substr(begin, tab - begin));
            if (tab == std::string::npos) break;
            begin = tab + 1;
        }
        if (fields.size() != 7) {
            throw CorpusError("manifest.tsv line " + std::to_string(lineno) +
                              ": expected 7 tab-separated fields, got " +
                              std::to_string(fields.size()));
        }

        VersionedDocument doc;
        doc.meta.doc_id = parse_number<std::uint32_t>(fields[0], "doc_id");
        std::uint32_t n = parse_number<std::uint32_t>(fields[1], "version count");
        doc.meta.title = fields[2];
        doc.meta.author = fields[3];
        doc.meta.edition = parse_number<int>(fields[4], "edition");
        doc.meta.publisher = fields[5];
        doc.meta.year = parse_number<int>(fields[6], "year");
        if (n < 1) {
            throw CorpusError("document " + fields[0] + ": version count must be >= 1");
        }

        fs::path doc_dir = dir / "docs" / fields[0];
        for (std::uint32_t k = 1; k <= n; ++k) {
            fs::path vpath = doc_dir / version_file(k);
            std::ifstream in(vpath, std::ios::binary);
            if (!in) {
                throw CorpusError("document " + fields[0] + " version " + std::to_string(k) +
                                  ": missing file " + vpath.string());
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            doc.versions.push_back(std::move(buf).str());
        }
        corpus.push_back(std::move(doc));
    }
    validate_corpus(corpus);
    return corpus;
}

}  // namespace vtag
