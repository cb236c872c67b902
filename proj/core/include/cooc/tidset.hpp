#pragma once

// Inverted-list engines. A TidSetIndex maps every item to the ascending TIDs
// of the transactions containing it; a query's projected database is the
// intersection of its items' lists.

#include <span>
#include <vector>

#include "cooc/model.hpp"
#include "cooc/outcome.hpp"
#include "cooc/threshold.hpp"

namespace cooc {

class TidSetIndex {
public:
    TidSetIndex() = default;
    explicit TidSetIndex(std::vector<std::vector<Tid>> lists) : lists_(std::move(lists)) {}

    [[nodiscard]] std::span<const Tid> list(ItemId item) const { return lists_.at(item); }
    [[nodiscard]] std::size_t item_count() const noexcept { return lists_.size(); }
    /// Sum of all list lengths (equals the sum of item supports).
    [[nodiscard]] std::size_t total_tids() const noexcept;

private:
    std::vector<std::vector<Tid>> lists_;
};

/// Single pass over the database.
TidSetIndex build_tidsets(const TransactionDatabase& db);

/// Linear merge of two strictly ascending sequences.
std::vector<Tid> intersect(std::span<const Tid> x, std::span<const Tid> y);

/// TIDs of the transactions containing every query item, ascending. Lists
/// are folded shortest first.
std::vector<Tid> project(const TransactionDatabase& db, const Query& q, const TidSetIndex& idx);

QueryOutcome nti_query(const TransactionDatabase& db, const TidSetIndex& idx, const Query& q,
                       const RankOrder& order);

QueryOutcome nti_ta_query(const TransactionDatabase& db, const TidSetIndex& idx, const Query& q,
                          const RankOrder& order, const TaOptions& options = {});

}  // namespace cooc
