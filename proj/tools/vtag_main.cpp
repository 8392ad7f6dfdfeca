#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vtag/baselines.hpp"
#include "vtag/bench.hpp"
#include "vtag/corpus.hpp"
#include "vtag/errors.hpp"
#include "vtag/pattern.hpp"
#include "vtag/vtag_index.hpp"

namespace {

struct CliConfig {
    bool verbose = false;

    // gen-corpus
    vtag::CorpusSpec corpus_spec;
    std::string out_dir;

    // ingest
    std::string corpus_dir;
    std::string index_dir;
    std::size_t fanout = vtag::VTagIndex::kDefaultFanout;
    std::string synonyms_file;

    // query
    std::string query_text;
    std::uint32_t vid = 1;
    bool meta_only = false;

    // bench
    std::string experiment;
    std::string methods = "vtag,ebvr,rbvr";
    std::uint32_t trials = 3;
    std::uint64_t workload_seed = 7;
    std::string csv_out;
};

int run_gen_corpus(const CliConfig& cfg) {
    vtag::Corpus corpus = vtag::generate_corpus(cfg.corpus_spec);
    vtag::store_corpus(corpus, cfg.out_dir);
    std::cerr << "wrote " << corpus.size() << " documents x "
              << cfg.corpus_spec.versions_per_doc << " versions to " << cfg.out_dir
              << "\n";
    return 0;
}

int run_ingest(const CliConfig& cfg) {
    vtag::Corpus corpus = vtag::load_corpus(cfg.corpus_dir);
    if (cfg.verbose) {
        std::cerr << "loaded " << corpus.size() << " documents from " << cfg.corpus_dir
                  << "\n";
    }
    vtag::VTagIndex index = vtag::VTagIndex::build(corpus, cfg.fanout);
    if (!cfg.synonyms_file.empty()) {
        index.set_synonyms(vtag::SynonymMap::load(cfg.synonyms_file));
    }
    index.store(cfg.index_dir);
    std::cerr << "indexed " << corpus.size() << " documents into " << index.size()
              << " keys (fanout " << index.fanout() << ", height " << index.height()
              << ") at " << cfg.index_dir << "\n";
    return 0;
}

int run_query(const CliConfig& cfg) {
    vtag::VTagIndex index = vtag::VTagIndex::load(cfg.index_dir);
    if (cfg.verbose) {
        std::cerr << "loaded index with " << index.size() << " keys from " << cfg.index_dir
                  << "\n";
    }
    std::vector<vtag::Pattern> patterns =
        vtag::query_to_pattern(cfg.query_text, &index.synonyms());
    vtag::RetrievalStats stats;
    vtag::RetrievalResult result = index.find_bv(patterns, cfg.vid, &stats);
    if (cfg.verbose) {
        std::cerr << "node visits " << stats.node_visits << ", probes " << stats.probes
                  << "\n";
    }

    std::cout << "doc_id: " << result.doc_id << "\n"
              << "m: " << result.m << "\n"
              << "exact: " << (result.exact ? "true" : "false") << "\n";
    if (!cfg.meta_only) {
        std::cout << "\n" << result.content << "\n";
    }
    return 0;
}

int run_bench(const CliConfig& cfg) {
    vtag::BenchConfig bench;
    bench.corpus_spec = cfg.corpus_spec;
    bench.methods = vtag::parse_methods(cfg.methods);
    bench.experiment = vtag::parse_experiment(cfg.experiment);
    bench.trials = cfg.trials;
    bench.workload_seed = cfg.workload_seed;
    bench.fanout = cfg.fanout;

    std::vector<vtag::BenchRecord> records = vtag::run_experiment(bench);
    vtag::write_csv(records, cfg.csv_out);
    std::cerr << "appended " << records.size() << " records to " << cfg.csv_out << "\n";

    // median elapsed per (method, x); ops is deterministic within a point
    std::map<std::pair<std::string, std::uint64_t>, std::vector<std::int64_t>> elapsed;
    std::map<std::pair<std::string, std::uint64_t>, std::uint64_t> ops;
    for (const auto& rec : records) {
        std::pair<std::string, std::uint64_t> point{vtag::method_name(rec.method), rec.x};
        elapsed[point].push_back(rec.elapsed_us);
        ops[point] = rec.ops;
    }
    std::cout << "method\tx\tmedian_us\tops\n";
    for (auto& [point, times] : elapsed) {
        std::sort(times.begin(), times.end());
        std::cout << point.first << '\t' << point.second << '\t'
                  << times[times.size() / 2] << '\t' << ops[point] << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{"multi-version document retrieval: VTAG index and baselines"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", cfg.verbose, "extra diagnostics on stderr");

    CLI::App* gen = app.add_subcommand("gen-corpus", "generate a synthetic corpus");
    gen->add_option("--docs", cfg.corpus_spec.num_docs, "number of documents")
        ->capture_default_str();
    gen->add_option("--versions", cfg.corpus_spec.versions_per_doc, "versions per document")
        ->capture_default_str();
    gen->add_option("--size", cfg.corpus_spec.doc_size_bytes, "document size in bytes")
        ->capture_default_str();
    gen->add_option("--delta", cfg.corpus_spec.delta_ratio,
                    "minimum per-version change ratio")
        ->capture_default_str();
    gen->add_option("--seed", cfg.corpus_spec.seed, "generator seed")->capture_default_str();
    gen->add_option("--out", cfg.out_dir, "corpus directory to write")->required();

    CLI::App* ingest = app.add_subcommand("ingest", "build an index from a corpus");
    ingest->add_option("--corpus", cfg.corpus_dir, "corpus directory")->required();
    ingest->add_option("--index", cfg.index_dir, "index directory to write")->required();
    ingest->add_option("--fanout", cfg.fanout, "B+-tree fanout")->capture_default_str();
    ingest->add_option("--synonyms", cfg.synonyms_file, "synonym TSV file");

    CLI::App* query = app.add_subcommand("query", "retrieve one document version");
    query->add_option("--index", cfg.index_dir, "index directory")->required();
    query->add_option("--q", cfg.query_text, "query text")->required();
    query->add_option("--vid", cfg.vid, "version id")->required();
    query->add_flag("--meta-only", cfg.meta_only, "suppress content output");

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark experiment");
    bench->add_option("--experiment", cfg.experiment,
                      "object_retrieval | single_version_growth | "
                      "single_version_random | multi_version")
        ->required();
    bench->add_option("--methods", cfg.methods, "comma list of vtag,ebvr,rbvr")
        ->capture_default_str();
    bench->add_option("--docs", cfg.corpus_spec.num_docs, "fixed-corpus document count")
        ->capture_default_str();
    bench->add_option("--versions", cfg.corpus_spec.versions_per_doc,
                      "fixed-corpus versions per document")
        ->capture_default_str();
    bench->add_option("--size", cfg.corpus_spec.doc_size_bytes, "document size in bytes")
        ->capture_default_str();
    bench->add_option("--delta", cfg.corpus_spec.delta_ratio, "per-version change ratio")
        ->capture_default_str();
    bench->add_option("--trials", cfg.trials, "trials per point (>= 3)")
        ->capture_default_str();
    bench->add_option("--seed", cfg.workload_seed, "workload seed")->capture_default_str();
    bench->add_option("--out", cfg.csv_out, "CSV file to append to")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_gen_corpus(cfg);
        if (ingest->parsed()) return run_ingest(cfg);
        if (query->parsed()) return run_query(cfg);
        if (bench->parsed()) return run_bench(cfg);
    } catch (const vtag::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vtag::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
