#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cooc/model.hpp"

namespace cooc::testing {

// The five-transaction example database used throughout the tests.
inline TransactionDatabase example_db()
{
    return TransactionDatabase::from_rows({
        {"b", "f", "g"},
        {"a", "b", "c", "f"},
        {"a", "c", "d", "f"},
        {"b", "c", "e"},
        {"a", "c", "d", "e", "f"},
    });
}

inline ItemId id(const TransactionDatabase& db, const std::string& token)
{
    return *db.dictionary().find(token);
}

inline Query query(const TransactionDatabase& db, const RankOrder& order, std::vector<std::string> tokens,
                   std::size_t k)
{
    return *canonicalize_query(tokens, db, order, k);
}

/// (token, count) pairs of a result, for readable assertions.
inline std::vector<std::pair<std::string, Count>> named(const TransactionDatabase& db, const TopKResult& r)
{
    std::vector<std::pair<std::string, Count>> out;
    for (const auto& e : r.entries) {
        out.emplace_back(db.dictionary().token(e.item), e.count);
    }
    return out;
}

inline std::vector<std::pair<std::string, Count>> named(const TransactionDatabase& db, const CoCountTable& t)
{
    std::vector<std::pair<std::string, Count>> out;
    for (const auto& [item, count] : t) {
        out.emplace_back(db.dictionary().token(item), count);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Support of an itemset by direct std::includes containment over every
/// transaction. Independent of both the engines and the bitset oracle.
inline Count count_containing(const TransactionDatabase& db, std::vector<ItemId> items)
{
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    Count n = 0;
    for (std::size_t i = 0; i < db.size(); ++i) {
        auto t = db.transaction(i);
        if (std::includes(t.begin(), t.end(), items.begin(), items.end())) {
            ++n;
        }
    }
    return n;
}

/// Random database with `n` transactions over `m` items. `density` is the
/// per-item inclusion probability; a skew makes low ids more frequent, and a
/// handful of template rows are reused to create shared prefixes and ties.
inline TransactionDatabase random_db(std::mt19937_64& rng, std::size_t n, std::size_t m, double density)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<std::string>> templates;
    for (int t = 0; t < 4; ++t) {
        std::vector<std::string> row;
        for (std::size_t i = 0; i < m; ++i) {
            if (unit(rng) < 0.5) {
                row.push_back("i" + std::to_string(i));
            }
        }
        templates.push_back(row);
    }
    std::vector<std::vector<std::string>> rows;
    while (rows.size() < n) {
        std::vector<std::string> row;
        if (unit(rng) < 0.3 && !templates.empty()) {
            row = templates[static_cast<std::size_t>(unit(rng) * templates.size()) % templates.size()];
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double skew = 1.5 - static_cast<double>(i) / static_cast<double>(m);
            if (unit(rng) < density * skew) {
                row.push_back("i" + std::to_string(i));
            }
        }
        if (row.empty()) {
            row.push_back("i" + std::to_string(static_cast<std::size_t>(unit(rng) * m) % m));
        }
        rows.push_back(std::move(row));
    }
    return TransactionDatabase::from_rows(rows);
}

/// A random canonical query of up to `length` items. With probability
/// `from_row` the items are drawn from one transaction, so the query has at
/// least one containing transaction.
inline Query random_query(std::mt19937_64& rng, const TransactionDatabase& db, const RankOrder& order,
                          std::size_t length, std::size_t k, double from_row = 0.8)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ItemId> pool;
    if (unit(rng) < from_row && !db.empty()) {
        auto t = db.transaction(static_cast<std::size_t>(unit(rng) * db.size()) % db.size());
        pool.assign(t.begin(), t.end());
    } else {
        for (ItemId i = 0; i < db.item_count(); ++i) {
            pool.push_back(i);
        }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::max<std::size_t>(1, std::min(length, pool.size())));
    std::sort(pool.begin(), pool.end(), [&](ItemId a, ItemId b) { return order.ahead(a, b); });
    return Query(pool, k, order);
}

}  // namespace cooc::testing
