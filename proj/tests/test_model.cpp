#include <doctest.h>

#include <map>
#include <random>

#include "cooc/model.hpp"
#include "support/fixtures.hpp"

using namespace cooc;
using cooc::testing::id;
using cooc::testing::named;
using cooc::testing::example_db;

using Named = std::vector<std::pair<std::string, Count>>;

TEST_CASE("dictionary assigns dense ids by first appearance")
{
    auto db = example_db();
    const auto& tokens = db.dictionary().tokens();
    CHECK(tokens == std::vector<std::string>{"b", "f", "g", "a", "c", "d", "e"});
    for (ItemId i = 0; i < tokens.size(); ++i) {
        CHECK(db.dictionary().find(tokens[i]) == i);
    }
    CHECK_FALSE(db.dictionary().find("z").has_value());
}

TEST_CASE("supports match a recount")
{
    auto db = example_db();
    CHECK(db.size() == 5);
    CHECK(db.item_count() == 7);
    for (ItemId i = 0; i < db.item_count(); ++i) {
        CHECK(db.support(i) == cooc::testing::count_containing(db, {i}));
    }
    CHECK(db.support(id(db, "c")) == 4);
    CHECK(db.transaction(1).size() == 4);
    CHECK(std::is_sorted(db.transaction(4).begin(), db.transaction(4).end()));
}

TEST_CASE("rank order")
{
    SUBCASE("example database gives c f a b d e g")
    {
        auto db = example_db();
        auto order = build_rank_order(db);
        std::vector<std::string> got;
        for (ItemId item : order.order()) {
            got.push_back(db.dictionary().token(item));
        }
        CHECK(got == std::vector<std::string>{"c", "f", "a", "b", "d", "e", "g"});
    }
    SUBCASE("single transaction")
    {
        auto db = TransactionDatabase::from_rows({{"x"}});
        auto order = build_rank_order(db);
        REQUIRE(order.size() == 1);
        CHECK(db.dictionary().token(order.at(0)) == "x");
    }
    SUBCASE("equal supports fall back to token order")
    {
        auto db = TransactionDatabase::from_rows({{"b"}, {"a"}});
        auto order = build_rank_order(db);
        CHECK(db.support(id(db, "a")) == db.support(id(db, "b")));
        CHECK(db.dictionary().token(order.at(0)) == "a");
        CHECK(db.dictionary().token(order.at(1)) == "b");
    }
    SUBCASE("empty database")
    {
        CHECK(build_rank_order(TransactionDatabase{}).size() == 0);
    }
}

TEST_CASE("rank order is a support-monotone permutation on random databases")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto db = cooc::testing::random_db(rng, 1 + trial * 3, 2 + trial % 20, 0.3);
        auto order = build_rank_order(db);
        REQUIRE(order.size() == db.item_count());
        std::vector<char> hit(db.item_count(), 0);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const ItemId item = order.at(pos);
            CHECK(order.rank(item) == pos);
            CHECK_FALSE(hit[item]);
            hit[item] = 1;
            if (pos > 0) {
                const ItemId prev = order.at(pos - 1);
                CHECK(db.support(prev) >= db.support(item));
                if (db.support(prev) == db.support(item)) {
                    CHECK(db.dictionary().token(prev) < db.dictionary().token(item));
                }
            }
        }
    }
}

TEST_CASE("canonicalize_query")
{
    auto db = example_db();
    auto order = build_rank_order(db);
    using V = std::vector<std::string>;

    SUBCASE("sorts by rank")
    {
        auto q = canonicalize_query(V{"a", "c"}, db, order, 2);
        REQUIRE(q);
        CHECK(q->items() == std::vector<ItemId>{id(db, "c"), id(db, "a")});
        CHECK(q->k() == 2);
    }
    SUBCASE("deduplicates")
    {
        auto q = canonicalize_query(V{"c", "c"}, db, order, 1);
        REQUIRE(q);
        CHECK(q->items() == std::vector<ItemId>{id(db, "c")});
    }
    SUBCASE("unknown token yields the empty-result sentinel")
    {
        CHECK_FALSE(canonicalize_query(V{"z"}, db, order, 1).has_value());
        CHECK_FALSE(canonicalize_query(V{"a", "z"}, db, order, 1).has_value());
    }
    SUBCASE("errors")
    {
        CHECK_THROWS_WITH(canonicalize_query(V{}, db, order, 1), "query must be non-empty");
        CHECK_THROWS_AS(canonicalize_query(V{"a"}, db, order, 0), std::invalid_argument);
    }
    SUBCASE("query constructor rejects unsorted items")
    {
        CHECK_THROWS_AS(Query({id(db, "a"), id(db, "c")}, 1, order), std::invalid_argument);
        CHECK_THROWS_AS(Query({id(db, "c"), id(db, "c")}, 1, order), std::invalid_argument);
    }
}

TEST_CASE("finalize_topk keeps ties at the boundary")
{
    auto db = example_db();
    auto order = build_rank_order(db);
    const CoCountTable counts{{id(db, "f"), 3}, {id(db, "d"), 2}, {id(db, "b"), 1}, {id(db, "e"), 1}};

    CHECK(named(db, finalize_topk(counts, 2, order)) == Named{{"f", 3}, {"d", 2}});
    CHECK(named(db, finalize_topk(counts, 3, order)) == Named{{"f", 3}, {"d", 2}, {"b", 1}, {"e", 1}});
    CHECK(named(db, finalize_topk(counts, 10, order)).size() == 4);
    CHECK(finalize_topk(CoCountTable{}, 3, order).entries.empty());
    CHECK(finalize_topk(counts, 2, order).exact_counts);
}

TEST_CASE("finalize_topk properties on random tables")
{
    std::mt19937_64 rng(11);
    auto db = cooc::testing::random_db(rng, 40, 25, 0.3);
    auto order = build_rank_order(db);
    std::uniform_int_distribution<int> count(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        CoCountTable table;
        std::vector<Count> dense(db.item_count(), 0);
        for (ItemId i = 0; i < db.item_count(); ++i) {
            const int c = count(rng);
            if (c > 0) {
                table[i] = static_cast<Count>(c);
                dense[i] = static_cast<Count>(c);
            }
        }
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 12);
        const auto result = finalize_topk(table, k, order);
        CHECK(result == finalize_topk(std::span<const Count>(dense), k, order));
        CHECK(result.entries.size() >= std::min(k, table.size()));

        std::map<ItemId, Count> included;
        for (const auto& e : result.entries) {
            included[e.item] = e.count;
        }
        Count smallest_in = result.entries.empty() ? 0 : result.entries.back().count;
        for (const auto& [item, c] : table) {
            if (!included.count(item)) {
                CHECK(c < smallest_in);
            }
        }
        // Idempotent on its own output.
        CoCountTable restricted(included.begin(), included.end());
        CHECK(finalize_topk(restricted, k, order) == result);
    }
}
