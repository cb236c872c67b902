#include <doctest.h>

#include <random>

#include "cooc/oracle.hpp"
#include "support/fixtures.hpp"

using namespace cooc;
using cooc::testing::id;
using cooc::testing::named;
using cooc::testing::query;
using cooc::testing::example_db;

using Named = std::vector<std::pair<std::string, Count>>;

TEST_CASE("oracle co-occurrence tables on the example database")
{
    auto db = example_db();
    auto order = build_rank_order(db);

    CHECK(named(db, oracle_co_counts(db, query(db, order, {"a", "c"}, 2))) ==
          Named{{"b", 1}, {"d", 2}, {"e", 1}, {"f", 3}});
    CHECK(named(db, oracle_co_counts(db, query(db, order, {"c"}, 2))) ==
          Named{{"a", 3}, {"b", 2}, {"d", 2}, {"e", 2}, {"f", 3}});
    // {a,c,d,e,f} is T5 itself; no other transaction contains it.
    CHECK(oracle_co_counts(db, query(db, order, {"a", "c", "d", "e", "f"}, 1)).empty());
    // {a,c,d,f} is T3; only T5 is a strict superset and adds e.
    CHECK(named(db, oracle_co_counts(db, query(db, order, {"a", "c", "d", "f"}, 1))) == Named{{"e", 1}});
}

TEST_CASE("oracle top-k")
{
    auto db = example_db();
    auto order = build_rank_order(db);
    CHECK(named(db, oracle_topk(db, query(db, order, {"a", "c"}, 2), order)) == Named{{"f", 3}, {"d", 2}});
    CHECK(named(db, oracle_topk(db, query(db, order, {"c"}, 1), order)) == Named{{"f", 3}, {"a", 3}});
    CHECK(oracle_topk(db, query(db, order, {"a", "g"}, 3), order).entries.empty());
}

TEST_CASE("oracle agrees with direct containment counting")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto db = cooc::testing::random_db(rng, 1 + trial, 2 + trial % 70, 0.25);
        auto order = build_rank_order(db);
        auto q = cooc::testing::random_query(rng, db, order, 1 + trial % 4, 3);
        const auto table = oracle_co_counts(db, q);
        for (ItemId i = 0; i < db.item_count(); ++i) {
            if (std::find(q.items().begin(), q.items().end(), i) != q.items().end()) {
                CHECK(table.count(i) == 0);
                continue;
            }
            auto items = q.items();
            items.push_back(i);
            const Count expected = cooc::testing::count_containing(db, items);
            auto it = table.find(i);
            CHECK((it == table.end() ? 0 : it->second) == expected);
        }
    }
}
