#pragma once

// Bound bookkeeping for the early-terminating (threshold) engines.
//
// Items seen so far are split into the current top-k set L_k (partial count
// at least MINV, the k-th largest partial count) and the candidate set I_c
// (partial count below MINV). MAXV is the largest partial count in I_c. Once
// MINV exceeds MAXV plus the largest count any item can still gain, no item
// outside L_k can reach the final top-k.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cooc/model.hpp"

namespace cooc {

class TaState {
public:
    /// `max_count` bounds every partial count the state will ever hold.
    TaState(std::size_t item_count, std::size_t k, Count max_count);

    void add(ItemId item, Count delta);

    [[nodiscard]] Count count(ItemId item) const { return counts_[item]; }
    [[nodiscard]] std::span<const Count> counts() const noexcept { return counts_; }
    [[nodiscard]] std::size_t seen() const noexcept { return seen_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }

    /// k-th largest partial count; 0 while fewer than k items have been seen.
    [[nodiscard]] Count minv() const noexcept { return minv_; }
    /// Largest partial count strictly below minv(); 0 when I_c is empty.
    [[nodiscard]] Count maxv() const;

    [[nodiscard]] bool in_topk(ItemId item) const { return counts_[item] > 0 && counts_[item] >= minv_; }
    [[nodiscard]] std::vector<ItemId> topk_members() const;
    [[nodiscard]] std::vector<ItemId> candidates() const;

    /// True when nothing outside L_k can still enter the top-k,
    /// given that no item gains more than `remaining` from unvisited data.
    [[nodiscard]] bool separated(Count remaining) const;

private:
    // Highest occupied count value in [lo, hi), or 0.
    [[nodiscard]] Count highest_between(Count lo, Count hi) const;

    std::vector<Count> counts_;
    // hist_[v] is how many seen items have partial count v; occupied_ marks
    // the nonzero entries so maxv can skip empty runs a word at a time.
    std::vector<std::uint32_t> hist_;
    std::vector<std::uint64_t> occupied_;
    std::size_t k_;
    std::size_t seen_ = 0;
    // Partial counts only grow, so minv never decreases and is advanced in
    // place. above_ counts seen items with partial count >= minv_.
    Count minv_ = 0;
    std::size_t above_ = 0;
    Count max_count_;
};

/// Snapshot handed to an observer after every termination test.
struct TaCheckpoint {
    const TaState& state;
    Count remaining;  // largest count any single item can still gain
    bool separated;
};

using TaObserver = std::function<void(const TaCheckpoint&)>;

struct TaOptions {
    /// After the bound separates, keep counting L_k members so the result
    /// carries exact counts. When false, L_k is returned with partial counts.
    bool finalize = true;
    /// Tree engine only: visit desirable nodes by descending count instead of
    /// header-link order.
    bool desirable_by_count = false;
    TaObserver observer;
};

}  // namespace cooc
