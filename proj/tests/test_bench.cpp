#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "vtag/bench.hpp"
#include "vtag/errors.hpp"

using vtag::BenchConfig;
using vtag::BenchRecord;
using vtag::Experiment;
using vtag::Method;

namespace {

BenchConfig small_config(Experiment experiment) {
    BenchConfig cfg;
    cfg.experiment = experiment;
    cfg.corpus_spec.num_docs = 5;
    cfg.corpus_spec.versions_per_doc = 3;
    cfg.corpus_spec.doc_size_bytes = 200;
    cfg.corpus_spec.seed = 13;
    cfg.collection_sizes = {4, 8};
    cfg.version_counts = {2, 4};
    cfg.random_queries = 6;
    cfg.batch_docs = 2;
    cfg.batch_size = 3;
    cfg.trials = 3;
    return cfg;
}

std::vector<std::uint64_t> ops_column(const std::vector<BenchRecord>& records) {
    std::vector<std::uint64_t> ops;
    for (const auto& r : records) ops.push_back(r.ops);
    return ops;
}

}  // namespace

TEST_CASE("method and experiment names parse both ways") {
    CHECK(vtag::parse_method("vtag") == Method::vtag);
    CHECK(vtag::parse_method("ebvr") == Method::ebvr);
    CHECK(vtag::parse_method("rbvr") == Method::rbvr);
    CHECK(std::string(vtag::method_name(Method::rbvr)) == "rbvr");
    CHECK_THROWS_AS(vtag::parse_method("btree"), vtag::ConfigError);

    for (Experiment e : {Experiment::object_retrieval, Experiment::single_version_growth,
                         Experiment::single_version_random, Experiment::multi_version}) {
        CHECK(vtag::parse_experiment(vtag::experiment_name(e)) == e);
    }
    CHECK_THROWS_AS(vtag::parse_experiment("warmup"), vtag::ConfigError);
}

TEST_CASE("method list parsing dedupes and rejects empty input") {
    auto all = vtag::parse_methods("vtag,ebvr,rbvr");
    CHECK(all == std::vector<Method>{Method::vtag, Method::ebvr, Method::rbvr});

    auto deduped = vtag::parse_methods("ebvr,ebvr,vtag");
    CHECK(deduped == std::vector<Method>{Method::ebvr, Method::vtag});

    CHECK(vtag::parse_methods("vtag,,rbvr").size() == 2);
    CHECK_THROWS_AS(vtag::parse_methods(""), vtag::ConfigError);
    CHECK_THROWS_AS(vtag::parse_methods("vtag,quux"), vtag::ConfigError);
}

TEST_CASE("run_experiment rejects bad configurations") {
    BenchConfig cfg = small_config(Experiment::object_retrieval);
    cfg.trials = 2;
    CHECK_THROWS_AS(vtag::run_experiment(cfg), vtag::ConfigError);

    cfg = small_config(Experiment::object_retrieval);
    cfg.methods.clear();
    CHECK_THROWS_AS(vtag::run_experiment(cfg), vtag::ConfigError);

    cfg = small_config(Experiment::multi_version);
    cfg.batch_size = 99;  // documents only have 3 versions
    CHECK_THROWS_AS(vtag::run_experiment(cfg), vtag::ConfigError);

    cfg = small_config(Experiment::multi_version);
    cfg.batch_docs = 99;
    CHECK_THROWS_AS(vtag::run_experiment(cfg), vtag::ConfigError);

    cfg = small_config(Experiment::object_retrieval);
    cfg.collection_sizes.clear();
    CHECK_THROWS_AS(vtag::run_experiment(cfg), vtag::ConfigError);
}

TEST_CASE("object retrieval sweep shape and costs") {
    BenchConfig cfg = small_config(Experiment::object_retrieval);
    auto records = vtag::run_experiment(cfg);

    // 2 sizes x 3 methods x 3 recorded trials; the warm-up never appears.
    REQUIRE(records.size() == 2 * 3 * 3);
    std::map<std::pair<Method, std::uint64_t>, std::vector<BenchRecord>> grouped;
    for (const auto& r : records) {
        CHECK(r.experiment == Experiment::object_retrieval);
        CHECK((r.x == 4 || r.x == 8));
        CHECK(r.trial >= 1);
        CHECK(r.trial <= 3);
        CHECK(r.queries == r.x);  // one query per document in the collection
        CHECK(r.elapsed_us >= 0);
        grouped[{r.method, r.x}].push_back(r);
    }

    for (const auto& [key, group] : grouped) {
        REQUIRE(group.size() == 3);
        // The workload is fixed, so logical costs repeat across trials.
        CHECK(group[0].ops == group[1].ops);
        CHECK(group[1].ops == group[2].ops);

        const BenchRecord& r = group.front();
        std::uint64_t n = r.x;
        if (key.first == Method::vtag) {
            CHECK(r.ops == r.node_visits + r.probes);
            CHECK(r.descents == n);
        } else {
            // vid=1 queries never replay changes: cost is the scan alone,
            // and querying each title once costs 1 + 2 + ... + n.
            CHECK(r.edit_ops == 0);
            CHECK(r.segments == 0);
            CHECK(r.ops == r.comparisons);
            CHECK(r.ops == n * (n + 1) / 2);
        }
    }
}

TEST_CASE("version growth sweep raises replay costs with the version count") {
    BenchConfig cfg = small_config(Experiment::single_version_growth);
    cfg.corpus_spec.num_docs = 3;
    auto records = vtag::run_experiment(cfg);
    REQUIRE(records.size() == 2 * 3 * 3);

    std::map<std::pair<Method, std::uint64_t>, BenchRecord> first_trial;
    for (const auto& r : records) {
        CHECK((r.x == 2 || r.x == 4));
        if (r.trial == 1) first_trial[{r.method, r.x}] = r;
    }
    CHECK(first_trial[{Method::ebvr, 2}].edit_ops > 0);
    CHECK(first_trial[{Method::ebvr, 4}].edit_ops >
          first_trial[{Method::ebvr, 2}].edit_ops);
    CHECK(first_trial[{Method::rbvr, 4}].segments >
          first_trial[{Method::rbvr, 2}].segments);
    CHECK(first_trial[{Method::vtag, 4}].edit_ops == 0);
}

TEST_CASE("random single queries record one line per query") {
    BenchConfig cfg = small_config(Experiment::single_version_random);
    auto records = vtag::run_experiment(cfg);
    REQUIRE(records.size() == 3 * 3 * cfg.random_queries);

    std::map<Method, std::set<std::uint64_t>> xs;
    for (const auto& r : records) {
        CHECK(r.queries == 1);
        xs[r.method].insert(r.x);
    }
    for (const auto& [method, seen] : xs) {
        CHECK(seen.size() == cfg.random_queries);
        CHECK(*seen.begin() == 1);
        CHECK(*seen.rbegin() == cfg.random_queries);
    }
}

TEST_CASE("multi version batches share one descent per batch") {
    BenchConfig cfg = small_config(Experiment::multi_version);
    cfg.corpus_spec.versions_per_doc = 6;
    cfg.batch_size = 4;
    auto records = vtag::run_experiment(cfg);
    REQUIRE(records.size() == 3 * 3 * cfg.batch_docs);

    for (const auto& r : records) {
        CHECK(r.queries == cfg.batch_size);
        if (r.method == Method::vtag) {
            CHECK(r.descents == 1);
            CHECK(r.table_lookups == cfg.batch_size);
            CHECK(r.node_visits == r.node_visits_max);
            CHECK(r.ops == r.node_visits + r.probes);
        } else {
            CHECK(r.descents == 0);
        }
    }
}

TEST_CASE("identical configurations produce identical logical costs") {
    for (Experiment e : {Experiment::object_retrieval, Experiment::multi_version}) {
        BenchConfig cfg = small_config(e);
        auto first = vtag::run_experiment(cfg);
        auto second = vtag::run_experiment(cfg);
        CHECK(ops_column(first) == ops_column(second));
    }
}

TEST_CASE("csv output writes one header and appends cleanly") {
    testutil::TempDir tmp;
    auto path = tmp.path() / "out.csv";

    BenchRecord rec;
    rec.method = Method::vtag;
    rec.experiment = Experiment::object_retrieval;
    rec.x = 25;
    rec.trial = 1;
    rec.elapsed_us = 120;
    rec.ops = 77;

    vtag::write_csv({rec}, path);
    CHECK(testutil::read_file(path) ==
          "method,experiment,x,trial,elapsed_us,ops\n"
          "vtag,object_retrieval,25,1,120,77\n");

    rec.method = Method::ebvr;
    rec.trial = 2;
    vtag::write_csv({rec}, path);
    std::string content = testutil::read_file(path);
    CHECK(content ==
          "method,experiment,x,trial,elapsed_us,ops\n"
          "vtag,object_retrieval,25,1,120,77\n"
          "ebvr,object_retrieval,25,2,120,77\n");
    CHECK(content.find('\r') == std::string::npos);

    // An empty existing file still gets the header.
    auto empty_path = tmp.path() / "empty.csv";
    testutil::write_file(empty_path, "");
    vtag::write_csv({rec}, empty_path);
    CHECK(testutil::read_file(empty_path).rfind(vtag::kCsvHeader, 0) == 0);
}
