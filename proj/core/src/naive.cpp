#include "cooc/naive.hpp"

#include <algorithm>

namespace cooc {
namespace {

class QueryMask {
public:
    QueryMask(const Query& q, std::size_t item_count) : in_query_(item_count, 0), items_(q.items())
    {
        for (ItemId item : items_) {
            in_query_[item] = 1;
        }
    }

    [[nodiscard]] bool contains(ItemId item) const { return in_query_[item] != 0; }

    [[nodiscard]] bool contained_in(std::span<const ItemId> transaction) const
    {
        if (transaction.size() < items_.size()) {
            return false;
        }
        return std::all_of(items_.begin(), items_.end(), [&](ItemId item) {
            return std::binary_search(transaction.begin(), transaction.end(), item);
        });
    }

private:
    std::vector<char> in_query_;
    const std::vector<ItemId>& items_;
};

// Visits transactions either in database order or along a TID list.
template <typename Fn>
bool for_each_transaction(const TransactionDatabase& db, std::optional<std::span<const Tid>> subset,
                          std::size_t start, Fn&& fn)
{
    const std::size_t n = subset ? subset->size() : db.size();
    for (std::size_t pos = start; pos < n; ++pos) {
        auto transaction = subset ? db.by_tid((*subset)[pos]) : db.transaction(pos);
        if (!fn(pos, transaction)) {
            return false;
        }
    }
    return true;
}

}  // namespace

namespace detail {

QueryOutcome scan_count(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                        std::optional<std::span<const Tid>> subset)
{
    const QueryMask mask(q, db.item_count());
    std::vector<Count> co(db.item_count(), 0);
    QueryOutcome out;
    for_each_transaction(db, subset, 0, [&](std::size_t, std::span<const ItemId> t) {
        ++out.stats.visited;
        if (!subset && !mask.contained_in(t)) {
            return true;
        }
        for (ItemId item : t) {
            if (!mask.contains(item)) {
                ++co[item];
            }
        }
        return true;
    });
    out.result = finalize_topk(std::span<const Count>(co), q.k(), order);
    return out;
}

QueryOutcome scan_count_ta(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                           std::optional<std::span<const Tid>> subset, const TaOptions& options)
{
    const QueryMask mask(q, db.item_count());
    const std::size_t total = subset ? subset->size() : db.size();
    TaState state(db.item_count(), q.k(), total);
    QueryOutcome out;
    out.stats.segments_total = total;

    // Unvisited transactions; decremented once per transaction.
    Count unvisited = total;
    std::size_t stop = total;
    for_each_transaction(db, subset, 0, [&](std::size_t pos, std::span<const ItemId> t) {
        ++out.stats.visited;
        if (subset || mask.contained_in(t)) {
            for (ItemId item : t) {
                if (!mask.contains(item)) {
                    state.add(item, 1);
                }
            }
        }
        --unvisited;
        const bool separated = state.separated(unvisited);
        if (options.observer) {
            options.observer(TaCheckpoint{state, unvisited, separated});
        }
        if (separated) {
            stop = pos + 1;
            return false;
        }
        return true;
    });
    out.stats.segments_scanned = out.stats.visited;

    if (stop == total) {
        out.result = finalize_topk(state.counts(), q.k(), order);
        return out;
    }

    out.stats.early_exit = true;
    out.stats.frozen = state.topk_members();
    CoCountTable exact;
    for (ItemId item : out.stats.frozen) {
        exact[item] = state.count(item);
    }
    if (!options.finalize) {
        out.result = finalize_topk(exact, exact.size(), order);
        out.result.exact_counts = false;
        return out;
    }
    std::vector<char> frozen(db.item_count(), 0);
    for (ItemId item : out.stats.frozen) {
        frozen[item] = 1;
    }
    for_each_transaction(db, subset, stop, [&](std::size_t, std::span<const ItemId> t) {
        ++out.stats.finalize_visited;
        if (!subset && !mask.contained_in(t)) {
            return true;
        }
        for (ItemId item : t) {
            if (frozen[item]) {
                ++exact[item];
            }
        }
        return true;
    });
    out.result = finalize_topk(exact, q.k(), order);
    return out;
}

}  // namespace detail

QueryOutcome nt_query(const TransactionDatabase& db, const Query& q, const RankOrder& order)
{
    return detail::scan_count(db, q, order, std::nullopt);
}

QueryOutcome nt_ta_query(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                         const TaOptions& options)
{
    return detail::scan_count_ta(db, q, order, std::nullopt, options);
}

}  // namespace cooc
