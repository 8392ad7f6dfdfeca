#include "vtag/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <utility>

#include "vtag/baselines.hpp"
#include "vtag/errors.hpp"
#include "vtag/pattern.hpp"
#include "vtag/vtag_index.hpp"

namespace vtag {

const char* const kCsvHeader = "method,experiment,x,trial,elapsed_us,ops";

const char* method_name(Method method) {
    switch (method) {
        case Method::vtag: return "vtag";
        case Method::ebvr: return "ebvr";
        case Method::rbvr: return "rbvr";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "vtag") return Method::vtag;
    if (name == "ebvr") return Method::ebvr;
    if (name == "rbvr") return Method::rbvr;
    throw ConfigError("unknown method '" + std::string(name) +
                      "' (expected vtag, ebvr or rbvr)");
}

std::vector<Method> parse_methods(std::string_view csv) {
    std::vector<Method> methods;
    std::size_t begin = 0;
    while (begin <= csv.size()) {
        std::size_t comma = csv.find(',', begin);
        std::string_view part = csv.substr(
            begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin);
        if (!part.empty()) {
            Method m = parse_method(part);
            if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
                methods.push_back(m);
            }
        }
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    if (methods.empty()) {
        throw ConfigError("at least one method is required");
    }
    return methods;
}

const char* experiment_name(Experiment experiment) {
    switch (experiment) {
        case Experiment::object_retrieval: return "object_retrieval";
        case Experiment::single_version_growth: return "single_version_growth";
        case Experiment::single_version_random: return "single_version_random";
        case Experiment::multi_version: return "multi_version";
    }
    return "?";
}

Experiment parse_experiment(std::string_view name) {
    if (name == "object_retrieval") return Experiment::object_retrieval;
    if (name == "single_version_growth") return Experiment::single_version_growth;
    if (name == "single_version_random") return Experiment::single_version_random;
    if (name == "multi_version") return Experiment::multi_version;
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t microseconds_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start)
        .count();
}

// One built retrieval engine, whichever flavor the method calls for.
struct Engine {
    Method method;
    std::optional<VTagIndex> index;
    std::optional<BaselineStore> store;

    static Engine make(Method method, const Corpus& corpus, std::size_t fanout) {
        Engine e;
        e.method = method;
        if (method == Method::vtag) {
            e.index = VTagIndex::build(corpus, fanout);
        } else {
            e.store = BaselineStore::build(
                corpus, method == Method::ebvr ? Scheme::ebvr : Scheme::rbvr);
        }
        return e;
    }

    RetrievalResult query(const Pattern& q, std::uint32_t vid, RetrievalStats* stats) const {
        if (index) return index->find_bv({q}, vid, stats);
        return store->retrieve(q, vid, stats);
    }

    std::vector<RetrievalResult> batch(const Pattern& q,
                                       const std::vector<std::uint32_t>& vids,
                                       RetrievalStats* stats) const {
        if (index) return index->find_bv_batch({q}, vids, stats);
        return store->retrieve_batch(q, vids, stats);
    }
};

void check_result(const Corpus& corpus, const RetrievalResult& result,
                  std::uint32_t queried_vid) {
    const VersionedDocument* doc = nullptr;
    for (const auto& d : corpus) {
        if (d.meta.doc_id == result.doc_id) {
            doc = &d;
            break;
        }
    }
    if (!doc) {
        throw std::logic_error("benchmark result names unknown document " +
                               std::to_string(result.doc_id));
    }
    std::uint32_t expect_m = std::min(queried_vid, doc->latest());
    bool expect_exact = queried_vid <= doc->latest();
    if (result.m != expect_m || result.exact != expect_exact ||
        result.content != doc->version(expect_m)) {
        throw std::logic_error("benchmark retrieval mismatch for document " +
                               std::to_string(result.doc_id) + " vid " +
                               std::to_string(queried_vid));
    }
}

void fold_query(BenchRecord& rec, const RetrievalStats& stats, std::int64_t elapsed_us) {
    std::uint64_t total = stats.total();
    rec.elapsed_us += elapsed_us;
    rec.ops += total;
    ++rec.queries;
    rec.ops_max = std::max(rec.ops_max, total);
    rec.node_visits += stats.node_visits;
    rec.node_visits_max = std::max(rec.node_visits_max, stats.node_visits);
    rec.probes += stats.probes;
    rec.comparisons += stats.comparisons;
    rec.edit_ops += stats.edit_ops;
    rec.segments += stats.segments;
    rec.descents += stats.descents;
    rec.table_lookups += stats.table_lookups;
}

std::vector<Pattern> title_queries(const Corpus& corpus) {
    std::vector<Pattern> queries;
    queries.reserve(corpus.size());
    for (const auto& doc : corpus) {
        queries.push_back(build_pattern_from_title(doc.meta.title));
    }
    return queries;
}

// Full pass over (query, vid) pairs as one record; validation sits outside
// the timed sections.
BenchRecord run_pass(const Engine& engine, const Corpus& corpus,
                     const std::vector<std::pair<Pattern, std::uint32_t>>& workload,
                     BenchRecord proto) {
    for (const auto& [query, vid] : workload) {
        RetrievalStats stats;
        auto start = Clock::now();
        RetrievalResult result = engine.query(query, vid, &stats);
        std::int64_t us = microseconds_since(start);
        check_result(corpus, result, vid);
        fold_query(proto, stats, us);
    }
    return proto;
}

void run_sweep(const BenchConfig& cfg, const Corpus& corpus, std::uint64_t x,
               std::uint32_t query_vid, std::vector<BenchRecord>& records) {
    std::vector<std::pair<Pattern, std::uint32_t>> workload;
    for (Pattern& q : title_queries(corpus)) {
        workload.emplace_back(std::move(q), query_vid);
    }
    for (Method method : cfg.methods) {
        Engine engine = Engine::make(method, corpus, cfg.fanout);
        for (std::uint32_t trial = 0; trial <= cfg.trials; ++trial) {
            BenchRecord proto;
            proto.method = method;
            proto.experiment = cfg.experiment;
            proto.x = x;
            proto.trial = trial;
            BenchRecord rec = run_pass(engine, corpus, workload, proto);
            if (trial > 0) records.push_back(rec);  // trial 0 is the warm-up
        }
    }
}

std::vector<BenchRecord> run_object_retrieval(const BenchConfig& cfg) {
    if (cfg.collection_sizes.empty()) {
        throw ConfigError("object_retrieval needs at least one collection size");
    }
    std::vector<BenchRecord> records;
    for (std::uint32_t size : cfg.collection_sizes) {
        CorpusSpec spec = cfg.corpus_spec;
        spec.num_docs = size;
        Corpus corpus = generate_corpus(spec);
        run_sweep(cfg, corpus, size, 1, records);
    }
    return records;
}

std::vector<BenchRecord> run_single_version_growth(const BenchConfig& cfg) {
    if (cfg.version_counts.empty()) {
        throw ConfigError("single_version_growth needs at least one version count");
    }
    std::vector<BenchRecord> records;
    for (std::uint32_t count : cfg.version_counts) {
        CorpusSpec spec = cfg.corpus_spec;
        spec.versions_per_doc = count;
        Corpus corpus = generate_corpus(spec);
        run_sweep(cfg, corpus, count, count, records);
    }
    return records;
}

std::vector<BenchRecord> run_single_version_random(const BenchConfig& cfg) {
    Corpus corpus = generate_corpus(cfg.corpus_spec);

    std::mt19937_64 rng(cfg.workload_seed);
    std::set<std::pair<std::size_t, std::uint32_t>> seen;
    std::vector<std::pair<Pattern, std::uint32_t>> workload;
    while (workload.size() < cfg.random_queries) {
        std::size_t doc = static_cast<std::size_t>(rng() % corpus.size());
        std::uint32_t vid = 1 + static_cast<std::uint32_t>(rng() % corpus[doc].latest());
        if (!seen.insert({doc, vid}).second) continue;
        workload.emplace_back(build_pattern_from_title(corpus[doc].meta.title), vid);
    }

    std::vector<BenchRecord> records;
    for (Method method : cfg.methods) {
        Engine engine = Engine::make(method, corpus, cfg.fanout);
        for (std::uint32_t trial = 0; trial <= cfg.trials; ++trial) {
            for (std::size_t qi = 0; qi < workload.size(); ++qi) {
                RetrievalStats stats;
                auto start = Clock::now();
                RetrievalResult result =
                    engine.query(workload[qi].first, workload[qi].second, &stats);
                std::int64_t us = microseconds_since(start);
                check_result(corpus, result, workload[qi].second);
                if (trial == 0) continue;
                BenchRecord rec;
                rec.method = method;
                rec.experiment = cfg.experiment;
                rec.x = qi + 1;
                rec.trial = trial;
                fold_query(rec, stats, us);
                records.push_back(rec);
            }
        }
    }
    return records;
}

std::vector<BenchRecord> run_multi_version(const BenchConfig& cfg) {
    Corpus corpus = generate_corpus(cfg.corpus_spec);
    if (cfg.batch_docs > corpus.size()) {
        throw ConfigError("batch_docs exceeds the corpus size");
    }

    std::mt19937_64 rng(cfg.workload_seed);
    std::vector<std::size_t> sample;
    {
        std::set<std::size_t> seen;
        while (sample.size() < cfg.batch_docs) {
            std::size_t doc = static_cast<std::size_t>(rng() % corpus.size());
            if (seen.insert(doc).second) sample.push_back(doc);
        }
    }

    std::vector<std::pair<Pattern, std::vector<std::uint32_t>>> batches;
    for (std::size_t doc : sample) {
        std::uint32_t n = corpus[doc].latest();
        if (cfg.batch_size > n) {
            throw ConfigError("batch_size exceeds the document version count");
        }
        std::set<std::uint32_t> vids;
        while (vids.size() < cfg.batch_size) {
            vids.insert(1 + static_cast<std::uint32_t>(rng() % n));
        }
        batches.emplace_back(build_pattern_from_title(corpus[doc].meta.title),
                             std::vector<std::uint32_t>(vids.begin(), vids.end()));
    }

    std::vector<BenchRecord> records;
    for (Method method : cfg.methods) {
        Engine engine = Engine::make(method, corpus, cfg.fanout);
        for (std::uint32_t trial = 0; trial <= cfg.trials; ++trial) {
            for (std::size_t bi = 0; bi < batches.size(); ++bi) {
                const auto& [query, vids] = batches[bi];
                RetrievalStats stats;
                auto start = Clock::now();
                std::vector<RetrievalResult> results = engine.batch(query, vids, &stats);
                std::int64_t us = microseconds_since(start);
                if (results.size() != vids.size()) {
                    throw std::logic_error("batch returned the wrong result count");
                }
                for (std::size_t i = 0; i < results.size(); ++i) {
                    check_result(corpus, results[i], vids[i]);
                }
                if (trial == 0) continue;
                BenchRecord rec;
                rec.method = method;
                rec.experiment = cfg.experiment;
                rec.x = bi + 1;
                rec.trial = trial;
                fold_query(rec, stats, us);
                rec.queries = vids.size();
                records.push_back(rec);
            }
        }
    }
    return records;
}

}  // namespace

std::vector<BenchRecord> run_experiment(const BenchConfig& cfg) {
    if (cfg.methods.empty()) {
        throw ConfigError("at least one method is required");
    }
    if (cfg.trials < 3) {
        throw ConfigError("trials must be at least 3");
    }
    switch (cfg.experiment) {
        case Experiment::object_retrieval: return run_object_retrieval(cfg);
        case Experiment::single_version_growth: return run_single_version_growth(cfg);
        case Experiment::single_version_random: return run_single_version_random(cfg);
        case Experiment::multi_version: return run_multi_version(cfg);
    }
    throw ConfigError("unknown experiment");
}

void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& out) {
    bool need_header = true;
    std::error_code ec;
    if (std::filesystem::exists(out, ec) && std::filesystem::file_size(out, ec) > 0) {
        need_header = false;
    }

    std::ofstream file(out, std::ios::binary | std::ios::app);
    if (!file) {
        throw ConfigError("cannot open " + out.string() + " for writing");
    }
    if (need_header) {
        file << kCsvHeader << '\n';
    }
    for (const BenchRecord& rec : records) {
        file << method_name(rec.method) << ',' << experiment_name(rec.experiment) << ','
             << rec.x << ',' << rec.trial << ',' << rec.elapsed_us << ',' << rec.ops
             << '\n';
    }
}

}  // namespace vtag
