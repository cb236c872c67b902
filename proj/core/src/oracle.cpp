#include "cooc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace cooc {
namespace {

class Bitset {
public:
    explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t bit) { words_[bit / 64] |= std::uint64_t{1} << (bit % 64); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    [[nodiscard]] bool covers(const Bitset& other) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if ((other.words_[w] & ~words_[w]) != 0) {
                return false;
            }
        }
        return true;
    }

    template <typename Fn>
    void for_each_outside(const Bitset& excluded, Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w] & ~excluded.words_[w];
            while (bits != 0) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace

CoCountTable oracle_co_counts(const TransactionDatabase& db, const Query& q)
{
    const std::size_t m = db.item_count();
    Bitset query(m);
    for (ItemId item : q.items()) {
        query.set(item);
    }
    CoCountTable table;
    Bitset row(m);
    for (std::size_t index = 0; index < db.size(); ++index) {
        row.clear();
        for (ItemId item : db.transaction(index)) {
            row.set(item);
        }
        if (!row.covers(query)) {
            continue;
        }
        row.for_each_outside(query, [&](std::size_t item) { ++table[static_cast<ItemId>(item)]; });
    }
    return table;
}

TopKResult oracle_topk(const TransactionDatabase& db, const Query& q, const RankOrder& order)
{
    return finalize_topk(oracle_co_counts(db, q), q.k(), order);
}

}  // namespace cooc
