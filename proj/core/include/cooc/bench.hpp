#pragma once

// Benchmark protocol: index preprocessing cost, per-engine query latency over
// generated workloads, and scalability sweeps over growing synthetic
// databases. Every query run doubles as a cross-engine agreement check.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cooc/dataset_io.hpp"
#include "cooc/engine.hpp"

namespace cooc {

struct PreprocessingReport {
    std::size_t transactions = 0;
    std::size_t items = 0;
    double average_length = 0.0;
    double density = 0.0;
    std::uint64_t tidset_build_ns = 0;
    std::uint64_t pitree_build_ns = 0;
    std::size_t tidset_total_tids = 0;
    std::size_t pitree_nodes = 0;
};

/// Builds the indexes the listed engines need and times each build.
/// Throws std::invalid_argument on an empty engine list.
PreprocessingReport run_preprocessing_bench(const TransactionDatabase& db, const std::vector<EngineKind>& engines);

struct BenchConfig {
    std::variant<std::filesystem::path, SyntheticParams> source;
    std::vector<EngineKind> engines{kAllEngines.begin(), kAllEngines.end()};
    std::vector<std::size_t> query_lengths{3, 4, 5, 6, 7};
    std::size_t queries_per_length = 100;
    std::size_t k = 10;
    std::uint64_t seed = 1;
    /// Unmeasured queries run before timing each (engine, length) group.
    std::size_t warmup = 3;

    void validate() const;
};

struct EngineAggregate {
    std::string engine;
    std::size_t length = 0;
    std::size_t queries = 0;
    double mean_ns = 0.0;
    double median_ns = 0.0;
    double mean_visited = 0.0;
};

struct QueryBenchReport {
    std::vector<BenchRow> rows;
    std::vector<EngineAggregate> aggregates;
};

/// Raised when two engines disagree; the message is a reproducer.
class EngineMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query workload seed for one query length, derived from the run seed.
std::uint64_t workload_seed(std::uint64_t seed, std::size_t length);

/// Loads or generates the configured database.
TransactionDatabase load_source(const BenchConfig& config);

QueryBenchReport run_query_bench(const BenchConfig& config);
QueryBenchReport run_query_bench(const QueryEngines& engines, const BenchConfig& config);

struct ScaleRow {
    double multiplier = 1.0;
    std::size_t transactions = 0;
    std::string engine;
    double mean_ns = 0.0;
    double ratio = 1.0;  // mean_ns / mean_ns at multiplier 1
};

struct ScaleConfig {
    std::vector<EngineKind> engines{EngineKind::nti, EngineKind::pt};
    std::size_t length = 5;
    std::size_t k = 10;
    std::size_t queries = 100;
    std::uint64_t seed = 1;
    std::size_t warmup = 3;
};

/// Regenerates `base` with n_transactions scaled by each multiplier (same
/// generator seed) and reports mean query time relative to the unscaled
/// database.
std::vector<ScaleRow> run_scalability_sweep(const SyntheticParams& base, const std::vector<double>& multipliers,
                                            const ScaleConfig& config = {});

}  // namespace cooc
