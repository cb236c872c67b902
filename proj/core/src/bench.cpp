#include "cooc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace cooc {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_since(Clock::time_point start)
{
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

bool needs(const std::vector<EngineKind>& engines, EngineKind a, EngineKind b)
{
    return std::find(engines.begin(), engines.end(), a) != engines.end() ||
           std::find(engines.begin(), engines.end(), b) != engines.end();
}

std::string describe(const TopKResult& result, const ItemDictionary& dict)
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        out << (i ? " " : "") << dict.token(result.entries[i].item) << ':' << result.entries[i].count;
    }
    out << ']';
    return out.str();
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

struct Measured {
    std::vector<QueryOutcome> outcomes;
    std::vector<std::uint64_t> elapsed;
};

Measured measure(const QueryEngines& engines, EngineKind kind, const std::vector<Query>& queries,
                 std::size_t warmup)
{
    for (std::size_t i = 0; i < std::min(warmup, queries.size()); ++i) {
        (void)engines.run(kind, queries[i]);
    }
    Measured m;
    m.outcomes.reserve(queries.size());
    m.elapsed.reserve(queries.size());
    for (const auto& q : queries) {
        const auto start = Clock::now();
        auto outcome = engines.run(kind, q);
        m.elapsed.push_back(elapsed_since(start));
        m.outcomes.push_back(std::move(outcome));
    }
    return m;
}

std::vector<Query> canonical_workload(const QueryEngines& engines, const QueryWorkload& workload, std::size_t k)
{
    std::vector<Query> queries;
    queries.reserve(workload.queries.size());
    for (const auto& tokens : workload.queries) {
        // Workload tokens come from the database itself, so they always resolve.
        queries.push_back(*canonicalize_query(tokens, engines.db(), engines.order(), k));
    }
    return queries;
}

}  // namespace

PreprocessingReport run_preprocessing_bench(const TransactionDatabase& db, const std::vector<EngineKind>& engines)
{
    if (engines.empty()) {
        throw std::invalid_argument("at least one engine is required");
    }
    PreprocessingReport report;
    report.transactions = db.size();
    report.items = db.item_count();
    report.average_length = db.average_length();
    report.density = db.density();
    if (needs(engines, EngineKind::nti, EngineKind::nti_ta)) {
        const auto start = Clock::now();
        const auto idx = build_tidsets(db);
        report.tidset_build_ns = elapsed_since(start);
        report.tidset_total_tids = idx.total_tids();
    }
    if (needs(engines, EngineKind::pt, EngineKind::pt_ta)) {
        const auto start = Clock::now();
        const auto tree = build_pitree(db, build_rank_order(db));
        report.pitree_build_ns = elapsed_since(start);
        report.pitree_nodes = tree.node_count();
    }
    return report;
}

void BenchConfig::validate() const
{
    if (engines.empty()) {
        throw std::invalid_argument("at least one engine is required");
    }
    if (query_lengths.empty()) {
        throw std::invalid_argument("at least one query length is required");
    }
    for (std::size_t length : query_lengths) {
        if (length < 1) {
            throw std::invalid_argument("query lengths must be at least 1");
        }
    }
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
}

std::uint64_t workload_seed(std::uint64_t seed, std::size_t length)
{
    // splitmix64 finalizer over the pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(length) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TransactionDatabase load_source(const BenchConfig& config)
{
    if (const auto* path = std::get_if<std::filesystem::path>(&config.source)) {
        return load_fimi(*path);
    }
    return generate_synthetic(std::get<SyntheticParams>(config.source));
}

QueryBenchReport run_query_bench(const BenchConfig& config)
{
    config.validate();
    const auto db = load_source(config);
    const QueryEngines engines(db);
    return run_query_bench(engines, config);
}

QueryBenchReport run_query_bench(const QueryEngines& engines, const BenchConfig& config)
{
    config.validate();
    const auto& dict = engines.db().dictionary();
    QueryBenchReport report;
    for (std::size_t length : config.query_lengths) {
        const auto workload =
            generate_queries(engines.db(), length, config.queries_per_length, workload_seed(config.seed, length));
        const auto queries = canonical_workload(engines, workload, config.k);

        std::vector<Measured> per_engine;
        per_engine.reserve(config.engines.size());
        for (EngineKind kind : config.engines) {
            per_engine.push_back(measure(engines, kind, queries, config.warmup));
        }

        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            const auto& reference = per_engine.front().outcomes[qi].result;
            for (std::size_t e = 0; e < config.engines.size(); ++e) {
                const auto& outcome = per_engine[e].outcomes[qi];
                if (outcome.result.entries != reference.entries) {
                    std::ostringstream msg;
                    msg << "engine mismatch:";
                    if (const auto* params = std::get_if<SyntheticParams>(&config.source)) {
                        msg << " db_seed=" << params->seed;
                    }
                    msg << " seed=" << config.seed << " length=" << length << " k=" << config.k
                        << " query=" << workload.queries[qi].front();
                    for (std::size_t t = 1; t < workload.queries[qi].size(); ++t) {
                        msg << ',' << workload.queries[qi][t];
                    }
                    msg << ' ' << engine_name(config.engines.front()) << '=' << describe(reference, dict) << ' '
                        << engine_name(config.engines[e]) << '=' << describe(outcome.result, dict);
                    throw EngineMismatch(msg.str());
                }
                report.rows.push_back(BenchRow{std::string(engine_name(config.engines[e])), workload.queries[qi],
                                               config.k, per_engine[e].elapsed[qi],
                                               to_report_entries(outcome.result, dict), outcome.stats.visited});
            }
        }

        for (std::size_t e = 0; e < config.engines.size(); ++e) {
            const auto& m = per_engine[e];
            std::vector<double> times(m.elapsed.begin(), m.elapsed.end());
            EngineAggregate agg;
            agg.engine = engine_name(config.engines[e]);
            agg.length = length;
            agg.queries = queries.size();
            if (!times.empty()) {
                agg.mean_ns = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
                double visited = 0.0;
                for (const auto& o : m.outcomes) {
                    visited += static_cast<double>(o.stats.visited);
                }
                agg.mean_visited = visited / static_cast<double>(times.size());
            }
            agg.median_ns = median(std::move(times));
            report.aggregates.push_back(std::move(agg));
        }
    }
    return report;
}

std::vector<ScaleRow> run_scalability_sweep(const SyntheticParams& base, const std::vector<double>& multipliers,
                                            const ScaleConfig& config)
{
    std::vector<ScaleRow> rows;
    if (multipliers.empty()) {
        return rows;
    }
    if (config.engines.empty()) {
        throw std::invalid_argument("at least one engine is required");
    }
    for (double mult : multipliers) {
        if (!(mult >= 1.0)) {
            throw std::invalid_argument("scale multipliers must be at least 1");
        }
    }

    auto mean_times = [&](const SyntheticParams& params) {
        const auto db = generate_synthetic(params);
        const QueryEngines engines(db);
        const auto workload = generate_queries(db, config.length, config.queries, workload_seed(config.seed, config.length));
        const auto queries = canonical_workload(engines, workload, config.k);
        std::vector<double> means;
        for (EngineKind kind : config.engines) {
            const auto m = measure(engines, kind, queries, config.warmup);
            const double total = std::accumulate(m.elapsed.begin(), m.elapsed.end(), 0.0);
            means.push_back(queries.empty() ? 0.0 : total / static_cast<double>(queries.size()));
        }
        return std::make_pair(db.size(), means);
    };

    const auto [base_n, base_means] = mean_times(base);
    for (double mult : multipliers) {
        std::size_t n = base_n;
        std::vector<double> means = base_means;
        if (mult != 1.0) {
            SyntheticParams scaled = base;
            scaled.n_transactions =
                static_cast<std::size_t>(std::llround(static_cast<double>(base.n_transactions) * mult));
            std::tie(n, means) = mean_times(scaled);
        }
        for (std::size_t e = 0; e < config.engines.size(); ++e) {
            ScaleRow row;
            row.multiplier = mult;
            row.transactions = n;
            row.engine = engine_name(config.engines[e]);
            row.mean_ns = means[e];
            row.ratio = base_means[e] > 0.0 ? means[e] / base_means[e] : 1.0;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace cooc
