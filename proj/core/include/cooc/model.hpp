#pragma once

// Domain types shared by every query engine: the item dictionary, the
// encoded transaction database, the descending-support item order, canonical
// queries and tie-inclusive top-k results.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cooc {

using ItemId = std::uint32_t;
using Tid = std::uint32_t;  // 1-based position of a transaction in its database
using Count = std::uint64_t;

class ItemDictionary {
public:
    /// Returns the id of `token`, assigning the next dense id on first sight.
    ItemId intern(std::string_view token);

    [[nodiscard]] std::optional<ItemId> find(std::string_view token) const;
    [[nodiscard]] const std::string& token(ItemId id) const { return tokens_.at(id); }
    [[nodiscard]] std::size_t size() const noexcept { return tokens_.size(); }
    [[nodiscard]] const std::vector<std::string>& tokens() const noexcept { return tokens_; }

private:
    std::unordered_map<std::string, ItemId> ids_;
    std::vector<std::string> tokens_;
};

/// Immutable set of transactions. Each transaction is stored as a strictly
/// ascending item-id sequence in one flat buffer.
class TransactionDatabase {
public:
    TransactionDatabase() = default;

    /// Builds a database from rows of raw tokens. Duplicate tokens inside a
    /// row collapse; rows with no tokens are skipped.
    static TransactionDatabase from_rows(const std::vector<std::vector<std::string>>& rows);

    /// Builds from already-encoded rows over an existing dictionary. Rows may
    /// be unsorted and contain duplicates; empty rows are skipped.
    static TransactionDatabase from_encoded(ItemDictionary dictionary,
                                            const std::vector<std::vector<ItemId>>& rows);

    [[nodiscard]] std::size_t size() const noexcept { return offsets_.size() - 1; }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }
    [[nodiscard]] std::size_t item_count() const noexcept { return dictionary_.size(); }

    /// Transaction at 0-based position `index` (its TID is index + 1).
    [[nodiscard]] std::span<const ItemId> transaction(std::size_t index) const
    {
        return {items_.data() + offsets_[index], items_.data() + offsets_[index + 1]};
    }
    [[nodiscard]] std::span<const ItemId> by_tid(Tid tid) const { return transaction(tid - 1); }

    [[nodiscard]] Count support(ItemId item) const { return support_.at(item); }
    [[nodiscard]] const std::vector<Count>& supports() const noexcept { return support_; }
    [[nodiscard]] const ItemDictionary& dictionary() const noexcept { return dictionary_; }
    [[nodiscard]] std::size_t total_items() const noexcept { return items_.size(); }
    [[nodiscard]] double average_length() const noexcept;
    /// Transaction count divided by item count.
    [[nodiscard]] double density() const noexcept;

private:
    ItemDictionary dictionary_;
    std::vector<ItemId> items_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Count> support_;
};

/// Total item order by descending support; equal supports fall back to
/// ascending token text. Position 0 holds the most frequent item.
class RankOrder {
public:
    RankOrder() = default;
    explicit RankOrder(const TransactionDatabase& db);

    [[nodiscard]] std::uint32_t rank(ItemId item) const { return rank_.at(item); }
    [[nodiscard]] ItemId at(std::size_t position) const { return order_.at(position); }
    [[nodiscard]] const std::vector<ItemId>& order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<std::uint32_t>& ranks() const noexcept { return rank_; }
    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    /// True when `a` comes strictly before `b`.
    [[nodiscard]] bool ahead(ItemId a, ItemId b) const { return rank_[a] < rank_[b]; }

private:
    std::vector<std::uint32_t> rank_;
    std::vector<ItemId> order_;
};

RankOrder build_rank_order(const TransactionDatabase& db);

/// A duplicate-free, non-empty itemset sorted by rank, plus the result size k.
class Query {
public:
    /// Throws std::invalid_argument when `items` is empty, unsorted by rank,
    /// contains duplicates, or k is zero.
    Query(std::vector<ItemId> items, std::size_t k, const RankOrder& order);

    [[nodiscard]] const std::vector<ItemId>& items() const noexcept { return items_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] ItemId last() const noexcept { return items_.back(); }
    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }

private:
    std::vector<ItemId> items_;
    std::size_t k_;
};

/// Deduplicates and rank-sorts the tokens. Returns std::nullopt when some
/// token is not in the dictionary: no transaction can contain the itemset,
/// so the answer is the empty result.
std::optional<Query> canonicalize_query(std::span<const std::string> tokens,
                                        const TransactionDatabase& db, const RankOrder& order,
                                        std::size_t k);

/// Co-occurrence counts keyed by item; only positive counts are stored.
using CoCountTable = std::map<ItemId, Count>;

struct ItemCount {
    ItemId item;
    Count count;
    friend bool operator==(const ItemCount&, const ItemCount&) = default;
};

struct TopKResult {
    std::vector<ItemCount> entries;  // count desc, then rank asc
    bool exact_counts = true;
    friend bool operator==(const TopKResult&, const TopKResult&) = default;
};

/// Keeps every entry whose count reaches the k-th largest count, so ties at
/// the boundary make the result longer than k.
TopKResult finalize_topk(const CoCountTable& counts, std::size_t k, const RankOrder& order);

/// Same selection over a dense per-item count vector (zero = absent).
TopKResult finalize_topk(std::span<const Count> dense, std::size_t k, const RankOrder& order);

}  // namespace cooc
