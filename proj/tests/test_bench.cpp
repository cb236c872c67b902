#include <doctest.h>

#include "cooc/bench.hpp"
#include "support/fixtures.hpp"

using namespace cooc;

namespace {

SyntheticParams small_dense()
{
    SyntheticParams p;
    p.n_transactions = 4000;
    p.n_items = 60;
    p.avg_trans_len = 12;
    p.n_patterns = 4;
    p.avg_pattern_len = 10;
    p.correlation = 0.95;
    p.seed = 21;
    return p;
}

}  // namespace

TEST_CASE("preprocessing report on the example database")
{
    auto db = cooc::testing::example_db();
    const auto report = run_preprocessing_bench(db, {kAllEngines.begin(), kAllEngines.end()});
    CHECK(report.transactions == 5);
    CHECK(report.items == 7);
    CHECK(report.pitree_nodes == 11);
    CHECK(report.tidset_total_tids == 19);
    CHECK(report.density == doctest::Approx(5.0 / 7.0));
    CHECK(report.average_length == doctest::Approx(19.0 / 5.0));
    CHECK_THROWS_AS(run_preprocessing_bench(db, {}), std::invalid_argument);

    // Only the indexes the chosen engines need are built.
    const auto naive_only = run_preprocessing_bench(db, {EngineKind::nt});
    CHECK(naive_only.pitree_nodes == 0);
    CHECK(naive_only.tidset_total_tids == 0);
}

TEST_CASE("bench config validation")
{
    BenchConfig config;
    config.source = small_dense();
    CHECK_NOTHROW(config.validate());
    auto bad = config;
    bad.engines.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.query_lengths = {0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.k = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("query bench rows and agreement")
{
    BenchConfig config;
    config.source = small_dense();
    config.engines = {EngineKind::nti, EngineKind::pt};
    config.query_lengths = {3};
    config.queries_per_length = 10;
    config.k = 5;
    const auto report = run_query_bench(config);
    REQUIRE(report.rows.size() == 20);
    for (std::size_t i = 0; i < report.rows.size(); i += 2) {
        CHECK(report.rows[i].engine == "nti");
        CHECK(report.rows[i + 1].engine == "pt");
        CHECK(report.rows[i].query_tokens == report.rows[i + 1].query_tokens);
        CHECK(report.rows[i].result == report.rows[i + 1].result);
        CHECK(report.rows[i].query_tokens.size() == 3);
        CHECK(report.rows[i].k == 5);
    }
    REQUIRE(report.aggregates.size() == 2);
    CHECK(report.aggregates[0].queries == 10);
    CHECK(report.aggregates[0].mean_ns > 0);
}

TEST_CASE("query bench is deterministic apart from timings")
{
    BenchConfig config;
    config.source = small_dense();
    config.query_lengths = {2, 4};
    config.queries_per_length = 8;
    auto strip = [](std::vector<BenchRow> rows) {
        for (auto& r : rows) {
            r.elapsed_ns = 0;
        }
        return rows;
    };
    const auto first = strip(run_query_bench(config).rows);
    const auto second = strip(run_query_bench(config).rows);
    CHECK(first.size() == 2 * 8 * kAllEngines.size());
    CHECK(first == second);
    config.seed = 2;
    CHECK(strip(run_query_bench(config).rows) != first);
}

TEST_CASE("query bench reads databases from disk")
{
    auto db = cooc::testing::example_db();
    const auto path = std::filesystem::temp_directory_path() / "cooc_test_bench_example.txt";
    save_fimi(db, path);
    BenchConfig config;
    config.source = path;
    config.query_lengths = {1, 2};
    config.queries_per_length = 5;
    config.k = 2;
    const auto report = run_query_bench(config);
    CHECK(report.rows.size() == 2 * 5 * kAllEngines.size());
    std::filesystem::remove(path);

    config.query_lengths = {8};
    config.source = path;
    save_fimi(db, path);
    CHECK_THROWS_WITH(run_query_bench(config), "workload infeasible");
    std::filesystem::remove(path);
}

TEST_CASE("tree work stays below projected transactions on dense data")
{
    BenchConfig config;
    config.source = small_dense();
    config.engines = {EngineKind::nti, EngineKind::pt};
    config.query_lengths = {3};
    config.queries_per_length = 30;
    const auto report = run_query_bench(config);
    REQUIRE(report.aggregates.size() == 2);
    CHECK(report.aggregates[1].engine == "pt");
    CHECK(report.aggregates[1].mean_visited <= report.aggregates[0].mean_visited);
}

TEST_CASE("scalability sweep")
{
    ScaleConfig config;
    config.queries = 10;
    config.warmup = 1;
    auto base = small_dense();
    base.n_transactions = 1000;

    CHECK(run_scalability_sweep(base, {}, config).empty());

    const auto rows = run_scalability_sweep(base, {1, 2}, config);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].multiplier == 1.0);
    CHECK(rows[0].ratio == 1.0);
    CHECK(rows[1].ratio == 1.0);
    CHECK(rows[0].transactions == 1000);
    CHECK(rows[2].transactions == 2000);
    CHECK(rows[2].ratio > 0.0);

    CHECK_THROWS_AS(run_scalability_sweep(base, {0.5}, config), std::invalid_argument);
}
