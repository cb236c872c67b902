// cooc: generate transaction databases, answer top-k co-occurrence queries,
// and run the benchmark and verification protocols.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cooc/bench.hpp"
#include "cooc/dataset_io.hpp"
#include "cooc/engine.hpp"
#include "cooc/oracle.hpp"

namespace {

using namespace cooc;

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        if (!part.empty()) {
            out.push_back(part);
        }
    }
    return out;
}

// "3..7" or "3,5,7"
std::vector<std::size_t> parse_lengths(const std::string& text)
{
    std::vector<std::size_t> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const auto lo = std::stoul(text.substr(0, dots));
        const auto hi = std::stoul(text.substr(dots + 2));
        if (lo > hi) {
            throw std::invalid_argument("empty length range " + text);
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    }
    for (const auto& part : split_list(text)) {
        out.push_back(std::stoul(part));
    }
    return out;
}

std::vector<EngineKind> parse_engines(const std::string& text)
{
    std::vector<EngineKind> out;
    for (const auto& name : split_list(text)) {
        if (name == "all") {
            out.insert(out.end(), kAllEngines.begin(), kAllEngines.end());
            continue;
        }
        auto kind = parse_engine(name);
        if (!kind) {
            throw std::invalid_argument("unknown engine " + name);
        }
        out.push_back(*kind);
    }
    return out;
}

void print_row_stdout(const BenchRow& row, ReportFormat format)
{
    std::ostringstream buffer;
    write_report({row}, buffer, format);
    std::cout << buffer.str();
}

int cmd_gen(const SyntheticParams& params, const std::string& output)
{
    const auto db = generate_synthetic(params);
    save_fimi(db, output);
    std::cerr << "wrote " << db.size() << " transactions over " << db.item_count() << " items to " << output << '\n';
    return 0;
}

int cmd_stats(const std::string& path)
{
    const auto db = load_fimi(path);
    const QueryEngines engines(db);
    const auto tree = engines.tree().stats();
    std::cout << "transactions\t" << db.size() << '\n'
              << "items\t" << db.item_count() << '\n'
              << "avg_length\t" << std::fixed << std::setprecision(3) << db.average_length() << '\n'
              << "density\t" << db.density() << '\n'
              << "pitree_nodes\t" << tree.nodes << '\n'
              << "pitree_leaves\t" << tree.leaves << '\n'
              << "pitree_root_children\t" << tree.root_children << '\n'
              << "tidset_total_tids\t" << engines.tidsets().total_tids() << '\n';
    std::cout << "pitree_depth_histogram\t";
    for (std::size_t d = 1; d < tree.depth_histogram.size(); ++d) {
        std::cout << (d > 1 ? "," : "") << tree.depth_histogram[d];
    }
    std::cout << '\n';
    return 0;
}

int cmd_query(const std::string& path, const std::string& engine, const std::string& itemset, std::size_t k,
              const std::string& format)
{
    const auto db = load_fimi(path);
    const auto tokens = split_list(itemset);
    const auto report_format = parse_report_format(format);
    const QueryEngines engines(db);
    BenchRow row;
    row.engine = engine;
    row.query_tokens = tokens;
    row.k = k;
    const auto start = std::chrono::steady_clock::now();
    if (engine == "oracle") {
        if (auto q = canonicalize_query(tokens, db, engines.order(), k)) {
            row.result = to_report_entries(oracle_topk(db, *q, engines.order()), db.dictionary());
        }
        row.visited = db.size();
    } else {
        auto kind = parse_engine(engine);
        if (!kind) {
            throw std::invalid_argument("unknown engine " + engine);
        }
        const auto outcome = engines.run(*kind, tokens, k);
        row.result = to_report_entries(outcome.result, db.dictionary());
        row.visited = outcome.stats.visited;
    }
    row.elapsed_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    print_row_stdout(row, report_format);
    return 0;
}

int cmd_bench(BenchConfig config, const std::string& output, const std::string& format)
{
    const auto report_format = parse_report_format(format);
    config.validate();
    const auto db = load_source(config);
    const auto pre = run_preprocessing_bench(db, config.engines);
    std::cerr << "transactions=" << pre.transactions << " items=" << pre.items << " density=" << pre.density
              << " tidset_build_ms=" << static_cast<double>(pre.tidset_build_ns) / 1e6
              << " pitree_build_ms=" << static_cast<double>(pre.pitree_build_ns) / 1e6
              << " tidset_tids=" << pre.tidset_total_tids << " pitree_nodes=" << pre.pitree_nodes << '\n';
    const QueryEngines engines(db);
    const auto report = run_query_bench(engines, config);
    emit_report(report.rows, output, report_format);
    std::cerr << "engine\tlength\tqueries\tmean_us\tmedian_us\tmean_visited\n";
    for (const auto& a : report.aggregates) {
        std::cerr << a.engine << '\t' << a.length << '\t' << a.queries << '\t' << a.mean_ns / 1e3 << '\t'
                  << a.median_ns / 1e3 << '\t' << a.mean_visited << '\n';
    }
    return 0;
}

int cmd_scale(const SyntheticParams& base, const std::vector<double>& multipliers, const ScaleConfig& config,
              const std::string& output)
{
    const auto rows = run_scalability_sweep(base, multipliers, config);
    std::ofstream out(output, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + output);
    }
    out << "multiplier\ttransactions\tengine\tmean_ns\tratio\n";
    for (const auto& r : rows) {
        out << r.multiplier << '\t' << r.transactions << '\t' << r.engine << '\t' << std::fixed
            << std::setprecision(1) << r.mean_ns << '\t' << std::setprecision(4) << r.ratio << '\n';
        out.unsetf(std::ios::floatfield);
        std::cerr << "x" << r.multiplier << ' ' << r.engine << " ratio=" << r.ratio << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& path, std::size_t count, const std::vector<std::size_t>& lengths, std::size_t k,
               std::uint64_t seed)
{
    const auto db = load_fimi(path);
    const QueryEngines engines(db);
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    for (std::size_t length : lengths) {
        QueryWorkload workload;
        try {
            workload = generate_queries(db, length, count, workload_seed(seed, length));
        } catch (const std::invalid_argument& e) {
            std::cerr << "length " << length << ": skipped (" << e.what() << ")\n";
            continue;
        }
        for (const auto& tokens : workload.queries) {
            const auto q = canonicalize_query(tokens, db, engines.order(), k);
            const auto expected = oracle_topk(db, *q, engines.order());
            for (EngineKind kind : kAllEngines) {
                ++checked;
                if (engines.run(kind, *q).result != expected) {
                    ++mismatches;
                    std::cerr << "MISMATCH engine=" << engine_name(kind) << " k=" << k << " query=";
                    for (std::size_t i = 0; i < tokens.size(); ++i) {
                        std::cerr << (i ? "," : "") << tokens[i];
                    }
                    std::cerr << '\n';
                }
            }
        }
    }
    std::cout << "checked " << checked << " engine answers, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Top-k co-occurrence item queries over transaction databases"};
    app.require_subcommand(1);

    SyntheticParams gen_params;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic transaction database");
    gen->add_option("--trans", gen_params.n_transactions, "Number of transactions")->required();
    gen->add_option("--items", gen_params.n_items, "Number of distinct items")->required();
    gen->add_option("--avg-len", gen_params.avg_trans_len, "Mean transaction length")->required();
    gen->add_option("--patterns", gen_params.n_patterns, "Number of seed patterns")->required();
    gen->add_option("--pattern-len", gen_params.avg_pattern_len, "Mean pattern length")->required();
    gen->add_option("--corr", gen_params.correlation, "Pattern item survival probability")->required();
    gen->add_option("--seed", gen_params.seed, "Random seed")->required();
    gen->add_option("-o,--output", gen_out, "Output file")->required();

    std::string stats_db;
    auto* stats = app.add_subcommand("stats", "Summarize a transaction database");
    stats->add_option("--db", stats_db, "Transaction file")->required()->check(CLI::ExistingFile);

    std::string query_db;
    std::string query_engine = "pt";
    std::string query_items;
    std::size_t query_k = 10;
    std::string query_format = "json";
    auto* query = app.add_subcommand("query", "Answer one top-k co-occurrence query");
    query->add_option("--db", query_db, "Transaction file")->required()->check(CLI::ExistingFile);
    query->add_option("--engine", query_engine, "nt|nt-ta|nti|nti-ta|pt|pt-ta|oracle");
    query->add_option("--itemset", query_items, "Comma-separated query items")->required();
    query->add_option("-k", query_k, "Number of items wanted");
    query->add_option("--format", query_format, "json|tsv");

    BenchConfig bench_config;
    std::string bench_db;
    std::string bench_synthetic;
    std::string bench_engines = "all";
    std::string bench_lengths = "3..7";
    std::string bench_out;
    std::string bench_format = "jsonl";
    auto* bench = app.add_subcommand("bench", "Time every engine over generated query workloads");
    auto* bench_db_opt = bench->add_option("--db", bench_db, "Transaction file")->check(CLI::ExistingFile);
    auto* bench_syn_opt = bench->add_option("--synthetic", bench_synthetic, "Synthetic parameters key=value,...");
    bench_db_opt->excludes(bench_syn_opt);
    bench->add_option("--engines", bench_engines, "Comma-separated engines or 'all'");
    bench->add_option("--lengths", bench_lengths, "Query lengths, e.g. 3..7");
    bench->add_option("--queries", bench_config.queries_per_length, "Queries per length");
    bench->add_option("-k", bench_config.k, "Number of items wanted");
    bench->add_option("--seed", bench_config.seed, "Random seed")->required();
    bench->add_option("--warmup", bench_config.warmup, "Unmeasured queries per engine and length");
    bench->add_option("-o,--output", bench_out, "Report file")->required();
    bench->add_option("--format", bench_format, "jsonl|tsv");

    std::string scale_base;
    std::string scale_mult = "1,2,3,4,5";
    std::string scale_engines = "nti,pt";
    std::string scale_out;
    ScaleConfig scale_config;
    auto* scale = app.add_subcommand("scale", "Scalability sweep over growing synthetic databases");
    scale->add_option("--base", scale_base, "Synthetic parameters key=value,...")->required();
    scale->add_option("--mult", scale_mult, "Comma-separated transaction multipliers");
    scale->add_option("--engines", scale_engines, "Comma-separated engines");
    scale->add_option("--length", scale_config.length, "Query length");
    scale->add_option("-k", scale_config.k, "Number of items wanted");
    scale->add_option("--queries", scale_config.queries, "Queries per database");
    scale->add_option("--seed", scale_config.seed, "Random seed")->required();
    scale->add_option("-o,--output", scale_out, "Report file (tsv)")->required();

    std::string verify_db;
    std::size_t verify_queries = 100;
    std::string verify_lengths = "1..7";
    std::size_t verify_k = 10;
    std::uint64_t verify_seed = 0;
    auto* verify = app.add_subcommand("verify", "Cross-check every engine against the brute-force oracle");
    verify->add_option("--db", verify_db, "Transaction file")->required()->check(CLI::ExistingFile);
    verify->add_option("--queries", verify_queries, "Queries per length");
    verify->add_option("--lengths", verify_lengths, "Query lengths, e.g. 1..7");
    verify->add_option("-k", verify_k, "Number of items wanted");
    verify->add_option("--seed", verify_seed, "Random seed")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            return cmd_gen(gen_params, gen_out);
        }
        if (*stats) {
            return cmd_stats(stats_db);
        }
        if (*query) {
            return cmd_query(query_db, query_engine, query_items, query_k, query_format);
        }
        if (*bench) {
            if (bench_db.empty() == bench_synthetic.empty()) {
                throw std::invalid_argument("bench needs exactly one of --db or --synthetic");
            }
            if (!bench_db.empty()) {
                bench_config.source = std::filesystem::path(bench_db);
            } else {
                auto params = SyntheticParams::parse(bench_synthetic);
                bench_config.source = params;
            }
            bench_config.engines = parse_engines(bench_engines);
            bench_config.query_lengths = parse_lengths(bench_lengths);
            return cmd_bench(bench_config, bench_out, bench_format);
        }
        if (*scale) {
            std::vector<double> multipliers;
            for (const auto& m : split_list(scale_mult)) {
                multipliers.push_back(std::stod(m));
            }
            scale_config.engines = parse_engines(scale_engines);
            return cmd_scale(SyntheticParams::parse(scale_base), multipliers, scale_config, scale_out);
        }
        if (*verify) {
            return cmd_verify(verify_db, verify_queries, parse_lengths(verify_lengths), verify_k, verify_seed);
        }
    } catch (const EngineMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
