#include "cooc/tidset.hpp"

#include <algorithm>

#include "cooc/naive.hpp"

namespace cooc {

std::size_t TidSetIndex::total_tids() const noexcept
{
    std::size_t total = 0;
    for (const auto& list : lists_) {
        total += list.size();
    }
    return total;
}

TidSetIndex build_tidsets(const TransactionDatabase& db)
{
    std::vector<std::vector<Tid>> lists(db.item_count());
    for (ItemId item = 0; item < db.item_count(); ++item) {
        lists[item].reserve(db.support(item));
    }
    for (std::size_t index = 0; index < db.size(); ++index) {
        const auto tid = static_cast<Tid>(index + 1);
        for (ItemId item : db.transaction(index)) {
            lists[item].push_back(tid);
        }
    }
    return TidSetIndex(std::move(lists));
}

std::vector<Tid> intersect(std::span<const Tid> x, std::span<const Tid> y)
{
    std::vector<Tid> out;
    out.reserve(std::min(x.size(), y.size()));
    auto a = x.begin();
    auto b = y.begin();
    while (a != x.end() && b != y.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            out.push_back(*a);
            ++a;
            ++b;
        }
    }
    return out;
}

std::vector<Tid> project([[maybe_unused]] const TransactionDatabase& db, const Query& q,
                         const TidSetIndex& idx)
{
    std::vector<ItemId> items = q.items();
    std::sort(items.begin(), items.end(), [&](ItemId a, ItemId b) {
        return idx.list(a).size() < idx.list(b).size() || (idx.list(a).size() == idx.list(b).size() && a < b);
    });
    auto first = idx.list(items.front());
    std::vector<Tid> tids(first.begin(), first.end());
    for (std::size_t i = 1; i < items.size() && !tids.empty(); ++i) {
        tids = intersect(tids, idx.list(items[i]));
    }
    return tids;
}

QueryOutcome nti_query(const TransactionDatabase& db, const TidSetIndex& idx, const Query& q,
                       const RankOrder& order)
{
    const auto tids = project(db, q, idx);
    return detail::scan_count(db, q, order, std::span<const Tid>(tids));
}

QueryOutcome nti_ta_query(const TransactionDatabase& db, const TidSetIndex& idx, const Query& q,
                          const RankOrder& order, const TaOptions& options)
{
    const auto tids = project(db, q, idx);
    return detail::scan_count_ta(db, q, order, std::span<const Tid>(tids), options);
}

}  // namespace cooc
