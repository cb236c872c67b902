#include "cooc/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cooc {

TransactionDatabase read_fimi(std::istream& in)
{
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(line);
        std::vector<std::string> row;
        for (std::string token; tokens >> token;) {
            row.push_back(std::move(token));
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    return TransactionDatabase::from_rows(rows);
}

TransactionDatabase load_fimi(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open transaction file " + path.string());
    }
    return read_fimi(in);
}

void write_fimi(const TransactionDatabase& db, std::ostream& out)
{
    const auto& dict = db.dictionary();
    for (std::size_t index = 0; index < db.size(); ++index) {
        bool first = true;
        for (ItemId item : db.transaction(index)) {
            if (!first) {
                out << ' ';
            }
            out << dict.token(item);
            first = false;
        }
        out << '\n';
    }
}

void save_fimi(const TransactionDatabase& db, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write transaction file " + path.string());
    }
    write_fimi(db, out);
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

void SyntheticParams::validate() const
{
    if (n_transactions < 1 || n_items < 1 || n_patterns < 1) {
        throw std::invalid_argument("synthetic counts must be at least 1");
    }
    if (!(avg_trans_len >= 1.0) || !(avg_pattern_len >= 1.0)) {
        throw std::invalid_argument("average lengths must be at least 1");
    }
    if (avg_pattern_len > avg_trans_len) {
        throw std::invalid_argument("average pattern length exceeds average transaction length");
    }
    if (!(correlation >= 0.0 && correlation <= 1.0)) {
        throw std::invalid_argument("correlation must lie in [0, 1]");
    }
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view key)
{
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("bad value for " + std::string(key) + ": " + std::string(text));
    }
    return value;
}

}  // namespace

SyntheticParams SyntheticParams::parse(std::string_view text)
{
    SyntheticParams p;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto field = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (field.empty()) {
            continue;
        }
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected key=value, got " + std::string(field));
        }
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        if (key == "trans") {
            p.n_transactions = parse_number<std::size_t>(value, key);
        } else if (key == "items") {
            p.n_items = parse_number<std::size_t>(value, key);
        } else if (key == "avg-len") {
            p.avg_trans_len = parse_number<double>(value, key);
        } else if (key == "patterns") {
            p.n_patterns = parse_number<std::size_t>(value, key);
        } else if (key == "pattern-len") {
            p.avg_pattern_len = parse_number<double>(value, key);
        } else if (key == "corr") {
            p.correlation = parse_number<double>(value, key);
        } else if (key == "seed") {
            p.seed = parse_number<std::uint64_t>(value, key);
        } else {
            throw std::invalid_argument("unknown synthetic parameter " + std::string(key));
        }
    }
    p.validate();
    return p;
}

TransactionDatabase generate_synthetic(const SyntheticParams& params)
{
    params.validate();
    std::mt19937_64 rng(params.seed);
    const std::size_t m = params.n_items;

    std::vector<double> popularity(m);
    for (std::size_t i = 0; i < m; ++i) {
        popularity[i] = std::exp(-5.0 * static_cast<double>(i) / static_cast<double>(m));
    }
    std::discrete_distribution<std::size_t> pick_item(popularity.begin(), popularity.end());

    std::vector<char> present(m, 0);
    std::vector<ItemId> row;
    // Fills `row` with `size` distinct popularity-weighted items beyond what
    // it already holds; falls back to the first unused ids if sampling stalls.
    auto top_up = [&](std::size_t size) {
        std::size_t attempts = 0;
        while (row.size() < size && attempts < 20 * size + 64) {
            ++attempts;
            const auto item = static_cast<ItemId>(pick_item(rng));
            if (!present[item]) {
                present[item] = 1;
                row.push_back(item);
            }
        }
        for (ItemId item = 0; row.size() < size && item < m; ++item) {
            if (!present[item]) {
                present[item] = 1;
                row.push_back(item);
            }
        }
    };
    auto reset_row = [&] {
        for (ItemId item : row) {
            present[item] = 0;
        }
        row.clear();
    };

    std::poisson_distribution<std::size_t> pattern_size(params.avg_pattern_len);
    std::vector<std::vector<ItemId>> patterns(params.n_patterns);
    for (auto& pattern : patterns) {
        const std::size_t size = std::clamp<std::size_t>(pattern_size(rng), 1, m);
        top_up(size);
        pattern = row;
        reset_row();
    }
    std::exponential_distribution<double> pattern_weight(1.0);
    std::vector<double> weights(params.n_patterns);
    for (auto& w : weights) {
        w = pattern_weight(rng);
    }
    std::discrete_distribution<std::size_t> pick_pattern(weights.begin(), weights.end());

    std::poisson_distribution<std::size_t> trans_size(params.avg_trans_len);
    std::bernoulli_distribution keep(params.correlation);
    std::bernoulli_distribution overflow(0.5);

    std::vector<std::vector<ItemId>> rows;
    rows.reserve(params.n_transactions);
    std::vector<ItemId> kept;
    for (std::size_t t = 0; t < params.n_transactions; ++t) {
        const std::size_t target = std::clamp<std::size_t>(trans_size(rng), 1, m);
        bool stopped = false;
        for (std::size_t draws = 0; row.size() < target && draws < 4 * target + 8; ++draws) {
            kept.clear();
            for (ItemId item : patterns[pick_pattern(rng)]) {
                if (keep(rng) && !present[item]) {
                    kept.push_back(item);
                }
            }
            if (kept.empty()) {
                continue;
            }
            // A pattern that does not fit goes in whole half of the time and
            // otherwise ends the transaction short.
            const bool fits = row.size() + kept.size() <= target;
            if (!fits && !row.empty() && !overflow(rng)) {
                stopped = true;
                break;
            }
            for (ItemId item : kept) {
                present[item] = 1;
                row.push_back(item);
            }
            if (!fits) {
                stopped = true;
                break;
            }
        }
        if (!stopped) {
            top_up(target);
        }
        rows.push_back(row);
        reset_row();
    }

    ItemDictionary dictionary;
    for (std::size_t i = 0; i < m; ++i) {
        dictionary.intern(std::to_string(i));
    }
    return TransactionDatabase::from_encoded(std::move(dictionary), rows);
}

QueryWorkload generate_queries(const TransactionDatabase& db, std::size_t length, std::size_t count,
                               std::uint64_t seed)
{
    if (length < 1) {
        throw std::invalid_argument("query length must be at least 1");
    }
    if (db.empty()) {
        throw std::invalid_argument("cannot draw queries from an empty database");
    }
    // Uniform over long-enough transactions, the same distribution as
    // redrawing until a long-enough one comes up.
    std::vector<std::size_t> eligible;
    for (std::size_t index = 0; index < db.size(); ++index) {
        if (db.transaction(index).size() >= length) {
            eligible.push_back(index);
        }
    }
    if (eligible.empty()) {
        throw std::invalid_argument("workload infeasible");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    QueryWorkload workload{{}, length, seed};
    workload.queries.reserve(count);
    std::vector<ItemId> items;
    for (std::size_t n = 0; n < count; ++n) {
        auto t = db.transaction(eligible[pick(rng)]);
        items.assign(t.begin(), t.end());
        for (std::size_t i = 0; i < length; ++i) {
            std::uniform_int_distribution<std::size_t> swap_with(i, items.size() - 1);
            std::swap(items[i], items[swap_with(rng)]);
        }
        std::vector<std::string> query;
        query.reserve(length);
        for (std::size_t i = 0; i < length; ++i) {
            query.push_back(db.dictionary().token(items[i]));
        }
        workload.queries.push_back(std::move(query));
    }
    return workload;
}

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "jsonl" || name == "json" || name == "json-lines") {
        return ReportFormat::jsonl;
    }
    if (name == "tsv") {
        return ReportFormat::tsv;
    }
    throw std::invalid_argument("unknown report format " + std::string(name));
}

namespace {

constexpr std::string_view kTsvHeader = "engine\tquery_tokens\tk\telapsed_ns\tresult\tvisited";

std::string join(const std::vector<std::string>& parts, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    if (text.empty()) {
        return parts;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

}  // namespace

void write_report(const std::vector<BenchRow>& rows, std::ostream& out, ReportFormat format)
{
    if (format == ReportFormat::tsv) {
        out << kTsvHeader << '\n';
        for (const auto& row : rows) {
            std::vector<std::string> pairs;
            pairs.reserve(row.result.size());
            for (const auto& e : row.result) {
                pairs.push_back(e.item + ":" + std::to_string(e.count));
            }
            out << row.engine << '\t' << join(row.query_tokens, ',') << '\t' << row.k << '\t' << row.elapsed_ns
                << '\t' << join(pairs, ',') << '\t' << row.visited << '\n';
        }
        return;
    }
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["engine"] = row.engine;
        j["query_tokens"] = row.query_tokens;
        j["k"] = row.k;
        j["elapsed_ns"] = row.elapsed_ns;
        auto result = nlohmann::ordered_json::array();
        for (const auto& e : row.result) {
            result.push_back({{"item", e.item}, {"count", e.count}});
        }
        j["result"] = std::move(result);
        j["visited"] = row.visited;
        out << j.dump() << '\n';
    }
}

void emit_report(const std::vector<BenchRow>& rows, const std::filesystem::path& path, ReportFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write report " + path.string());
    }
    write_report(rows, out, format);
    if (!out) {
        throw std::runtime_error("failed writing report " + path.string());
    }
}

std::vector<BenchRow> read_report(std::istream& in, ReportFormat format)
{
    std::vector<BenchRow> rows;
    std::string line;
    if (format == ReportFormat::tsv) {
        if (!std::getline(in, line) || line != kTsvHeader) {
            throw std::runtime_error("missing tsv report header");
        }
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto cols = split(line, '\t');
            if (cols.size() != 6) {
                throw std::runtime_error("malformed tsv report row: " + line);
            }
            BenchRow row;
            row.engine = cols[0];
            row.query_tokens = split(cols[1], ',');
            row.k = parse_number<std::size_t>(cols[2], "k");
            row.elapsed_ns = parse_number<std::uint64_t>(cols[3], "elapsed_ns");
            for (const auto& pair : split(cols[4], ',')) {
                const auto colon = pair.rfind(':');
                if (colon == std::string::npos) {
                    throw std::runtime_error("malformed result entry: " + pair);
                }
                row.result.push_back(
                    {pair.substr(0, colon), parse_number<Count>(std::string_view(pair).substr(colon + 1), "count")});
            }
            row.visited = parse_number<Count>(cols[5], "visited");
            rows.push_back(std::move(row));
        }
        return rows;
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto j = nlohmann::json::parse(line);
        BenchRow row;
        row.engine = j.at("engine").get<std::string>();
        row.query_tokens = j.at("query_tokens").get<std::vector<std::string>>();
        row.k = j.at("k").get<std::size_t>();
        row.elapsed_ns = j.at("elapsed_ns").get<std::uint64_t>();
        for (const auto& e : j.at("result")) {
            row.result.push_back({e.at("item").get<std::string>(), e.at("count").get<Count>()});
        }
        row.visited = j.at("visited").get<Count>();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BenchRow> load_report(const std::filesystem::path& path, ReportFormat format)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open report " + path.string());
    }
    return read_report(in, format);
}

std::vector<ReportEntry> to_report_entries(const TopKResult& result, const ItemDictionary& dictionary)
{
    std::vector<ReportEntry> out;
    out.reserve(result.entries.size());
    for (const auto& e : result.entries) {
        out.push_back({dictionary.token(e.item), e.count});
    }
    return out;
}

}  // namespace cooc
