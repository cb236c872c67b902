#include "cooc/model.hpp"

#include <algorithm>
#include <numeric>

namespace cooc {

ItemId ItemDictionary::intern(std::string_view token)
{
    auto [it, inserted] = ids_.try_emplace(std::string(token), static_cast<ItemId>(tokens_.size()));
    if (inserted) {
        tokens_.emplace_back(token);
    }
    return it->second;
}

std::optional<ItemId> ItemDictionary::find(std::string_view token) const
{
    auto it = ids_.find(std::string(token));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

TransactionDatabase TransactionDatabase::from_rows(const std::vector<std::vector<std::string>>& rows)
{
    ItemDictionary dictionary;
    std::vector<std::vector<ItemId>> encoded;
    encoded.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<ItemId> ids;
        ids.reserve(row.size());
        for (const auto& token : row) {
            ids.push_back(dictionary.intern(token));
        }
        encoded.push_back(std::move(ids));
    }
    return from_encoded(std::move(dictionary), encoded);
}

TransactionDatabase TransactionDatabase::from_encoded(ItemDictionary dictionary,
                                                      const std::vector<std::vector<ItemId>>& rows)
{
    TransactionDatabase db;
    db.dictionary_ = std::move(dictionary);
    db.support_.assign(db.dictionary_.size(), 0);
    std::vector<ItemId> scratch;
    for (const auto& row : rows) {
        scratch.assign(row.begin(), row.end());
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        if (scratch.empty()) {
            continue;
        }
        for (ItemId item : scratch) {
            if (item >= db.support_.size()) {
                throw std::out_of_range("item id " + std::to_string(item) + " is not in the dictionary");
            }
            ++db.support_[item];
        }
        db.items_.insert(db.items_.end(), scratch.begin(), scratch.end());
        db.offsets_.push_back(db.items_.size());
    }
    return db;
}

double TransactionDatabase::average_length() const noexcept
{
    return empty() ? 0.0 : static_cast<double>(items_.size()) / static_cast<double>(size());
}

double TransactionDatabase::density() const noexcept
{
    return item_count() == 0 ? 0.0 : static_cast<double>(size()) / static_cast<double>(item_count());
}

RankOrder::RankOrder(const TransactionDatabase& db)
{
    const auto& support = db.supports();
    const auto& dict = db.dictionary();
    order_.resize(support.size());
    std::iota(order_.begin(), order_.end(), ItemId{0});
    std::sort(order_.begin(), order_.end(), [&](ItemId a, ItemId b) {
        if (support[a] != support[b]) {
            return support[a] > support[b];
        }
        return dict.token(a) < dict.token(b);
    });
    rank_.resize(order_.size());
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        rank_[order_[pos]] = static_cast<std::uint32_t>(pos);
    }
}

RankOrder build_rank_order(const TransactionDatabase& db) { return RankOrder(db); }

Query::Query(std::vector<ItemId> items, std::size_t k, const RankOrder& order)
    : items_(std::move(items)), k_(k)
{
    if (items_.empty()) {
        throw std::invalid_argument("query must be non-empty");
    }
    if (k_ < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    for (ItemId item : items_) {
        if (item >= order.size()) {
            throw std::invalid_argument("query item id out of range");
        }
    }
    for (std::size_t i = 1; i < items_.size(); ++i) {
        if (!order.ahead(items_[i - 1], items_[i])) {
            throw std::invalid_argument("query items must be distinct and sorted by rank");
        }
    }
}

std::optional<Query> canonicalize_query(std::span<const std::string> tokens,
                                        const TransactionDatabase& db, const RankOrder& order,
                                        std::size_t k)
{
    if (tokens.empty()) {
        throw std::invalid_argument("query must be non-empty");
    }
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    std::vector<ItemId> items;
    items.reserve(tokens.size());
    for (const auto& token : tokens) {
        auto id = db.dictionary().find(token);
        if (!id) {
            return std::nullopt;
        }
        items.push_back(*id);
    }
    std::sort(items.begin(), items.end(), [&](ItemId a, ItemId b) { return order.ahead(a, b); });
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return Query(std::move(items), k, order);
}

namespace {

TopKResult select_topk(std::vector<ItemCount> entries, std::size_t k, const RankOrder& order)
{
    std::sort(entries.begin(), entries.end(), [&](const ItemCount& a, const ItemCount& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        if (order.rank(a.item) != order.rank(b.item)) {
            return order.rank(a.item) < order.rank(b.item);
        }
        return a.item < b.item;
    });
    if (entries.size() > k) {
        const Count boundary = entries[k - 1].count;
        auto cut = std::find_if(entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end(),
                                [&](const ItemCount& e) { return e.count < boundary; });
        entries.erase(cut, entries.end());
    }
    return TopKResult{std::move(entries), true};
}

}  // namespace

TopKResult finalize_topk(const CoCountTable& counts, std::size_t k, const RankOrder& order)
{
    std::vector<ItemCount> entries;
    entries.reserve(counts.size());
    for (const auto& [item, count] : counts) {
        if (count > 0) {
            entries.push_back({item, count});
        }
    }
    return select_topk(std::move(entries), std::max<std::size_t>(k, 1), order);
}

TopKResult finalize_topk(std::span<const Count> dense, std::size_t k, const RankOrder& order)
{
    std::vector<ItemCount> entries;
    for (std::size_t item = 0; item < dense.size(); ++item) {
        if (dense[item] > 0) {
            entries.push_back({static_cast<ItemId>(item), dense[item]});
        }
    }
    return select_topk(std::move(entries), std::max<std::size_t>(k, 1), order);
}

}  // namespace cooc
