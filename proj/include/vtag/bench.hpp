#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vtag/corpus.hpp"

namespace vtag {

enum class Method { vtag, ebvr, rbvr };

const char* method_name(Method method);
Method parse_method(std::string_view name);
std::vector<Method> parse_methods(std::string_view csv);

enum class Experiment {
    object_retrieval,      // collection size sweep, every document at vid=1
    single_version_growth, // version count sweep, querying the latest version
    single_version_random, // fixed corpus, random (doc, vid) single queries
    multi_version,         // fixed corpus, batches of 8 versions per document
};

const char* experiment_name(Experiment experiment);
Experiment parse_experiment(std::string_view name);

struct BenchConfig {
    CorpusSpec corpus_spec;  // the fixed corpus of the random/multi experiments
    std::vector<Method> methods = {Method::vtag, Method::ebvr, Method::rbvr};
    Experiment experiment = Experiment::object_retrieval;
    std::vector<std::uint32_t> collection_sizes = {25, 50, 100, 200};
    std::vector<std::uint32_t> version_counts = {10, 20, 40, 80};
    std::uint32_t random_queries = 10;
    std::uint32_t batch_docs = 5;
    std::uint32_t batch_size = 8;
    std::uint32_t trials = 3;
    std::uint64_t workload_seed = 7;
    std::size_t fanout = 32;
};

// One measured unit: a whole query pass (object_retrieval, growth), a single
// query (random) or one batch (multi_version). Only the first six fields go
// to CSV; the rest are counter breakdowns for assertions and summaries.
struct BenchRecord {
    Method method = Method::vtag;
    Experiment experiment = Experiment::object_retrieval;
    std::uint64_t x = 0;
    std::uint32_t trial = 0;
    std::int64_t elapsed_us = 0;
    std::uint64_t ops = 0;

    std::uint64_t queries = 0;
    std::uint64_t ops_max = 0;  // largest single-query total within the unit
    std::uint64_t node_visits = 0;
    std::uint64_t node_visits_max = 0;
    std::uint64_t probes = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t edit_ops = 0;
    std::uint64_t segments = 0;
    std::uint64_t descents = 0;
    std::uint64_t table_lookups = 0;
};

// Runs cfg.experiment over cfg.methods with one unrecorded warm-up pass per
// measured point. Every retrieval is byte-compared against the generating
// corpus before its record is kept.
std::vector<BenchRecord> run_experiment(const BenchConfig& cfg);

extern const char* const kCsvHeader;

// Appends records to `out`, writing the header first when the file is new
// or empty. Lines are LF-terminated.
void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& out);

}  // namespace vtag
