#pragma once

// Transaction files, synthetic databases, query workloads and report files.
//
// Transaction file: one transaction per line, tokens separated by any
// whitespace on read; written with single spaces and LF endings.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cooc/model.hpp"

namespace cooc {

TransactionDatabase read_fimi(std::istream& in);
/// Throws std::runtime_error when the file cannot be opened.
TransactionDatabase load_fimi(const std::filesystem::path& path);

void write_fimi(const TransactionDatabase& db, std::ostream& out);
void save_fimi(const TransactionDatabase& db, const std::filesystem::path& path);

struct SyntheticParams {
    std::size_t n_transactions = 10000;
    std::size_t n_items = 1000;
    double avg_trans_len = 10.0;
    std::size_t n_patterns = 100;
    double avg_pattern_len = 4.0;
    /// Probability that a pattern item survives into a transaction.
    double correlation = 0.5;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on violated constraints.
    void validate() const;
    /// Parses "trans=N,items=M,avg-len=L,patterns=P,pattern-len=Q,corr=C,seed=S";
    /// keys may be omitted to keep the defaults.
    static SyntheticParams parse(std::string_view text);
};

/// Quest-style generator: transactions are unions of noisy copies of seed
/// patterns, topped up with popularity-weighted random items. Item tokens are
/// the decimal ids 0..n_items-1. Deterministic for a fixed seed.
TransactionDatabase generate_synthetic(const SyntheticParams& params);

struct QueryWorkload {
    std::vector<std::vector<std::string>> queries;
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

/// Each query is `length` distinct items drawn from one randomly chosen
/// transaction. Throws std::invalid_argument("workload infeasible") when no
/// transaction is long enough.
QueryWorkload generate_queries(const TransactionDatabase& db, std::size_t length, std::size_t count,
                               std::uint64_t seed);

struct ReportEntry {
    std::string item;
    Count count = 0;
    friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct BenchRow {
    std::string engine;
    std::vector<std::string> query_tokens;
    std::size_t k = 0;
    std::uint64_t elapsed_ns = 0;
    std::vector<ReportEntry> result;
    Count visited = 0;
    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

enum class ReportFormat { jsonl, tsv };

ReportFormat parse_report_format(std::string_view name);

void write_report(const std::vector<BenchRow>& rows, std::ostream& out, ReportFormat format);
void emit_report(const std::vector<BenchRow>& rows, const std::filesystem::path& path, ReportFormat format);

std::vector<BenchRow> read_report(std::istream& in, ReportFormat format);
std::vector<BenchRow> load_report(const std::filesystem::path& path, ReportFormat format);

/// Result entries with item ids replaced by their tokens.
std::vector<ReportEntry> to_report_entries(const TopKResult& result, const ItemDictionary& dictionary);

}  // namespace cooc
