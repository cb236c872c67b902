#include "cooc/threshold.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace cooc {

TaState::TaState(std::size_t item_count, std::size_t k, Count max_count)
    : counts_(item_count, 0),
      hist_(static_cast<std::size_t>(max_count) + 1, 0),
      occupied_(static_cast<std::size_t>(max_count) / 64 + 1, 0),
      k_(k),
      max_count_(max_count)
{
    if (k_ < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
}

void TaState::add(ItemId item, Count delta)
{
    if (delta == 0) {
        return;
    }
    Count& c = counts_[item];
    const Count old = c;
    assert(old + delta <= max_count_);
    if (old == 0) {
        ++seen_;
    } else if (--hist_[old] == 0) {
        occupied_[old / 64] &= ~(std::uint64_t{1} << (old % 64));
    }
    c = old + delta;
    if (hist_[c]++ == 0) {
        occupied_[c / 64] |= std::uint64_t{1} << (c % 64);
    }

    if (minv_ == 0) {
        if (seen_ < k_) {
            return;
        }
        minv_ = 1;
        above_ = seen_;
    } else if (old < minv_ && c >= minv_) {
        ++above_;
    }
    while (above_ - hist_[minv_] >= k_) {
        above_ -= hist_[minv_];
        ++minv_;
    }
}

Count TaState::highest_between(Count lo, Count hi) const
{
    if (hi <= lo) {
        return 0;
    }
    Count v = hi - 1;
    while (true) {
        std::uint64_t word = occupied_[v / 64];
        const unsigned bit = static_cast<unsigned>(v % 64);
        if (bit < 63) {
            word &= (std::uint64_t{1} << (bit + 1)) - 1;
        }
        if (word != 0) {
            const Count found = (v / 64) * 64 + static_cast<Count>(63 - std::countl_zero(word));
            return found >= lo ? found : 0;
        }
        if (v < 64 || (v / 64) * 64 <= lo) {
            return 0;
        }
        v = (v / 64) * 64 - 1;
    }
}

Count TaState::maxv() const { return minv_ <= 1 ? 0 : highest_between(1, minv_); }

bool TaState::separated(Count remaining) const
{
    if (minv_ <= remaining) {
        return false;
    }
    // Separated unless some candidate sits within `remaining` of minv.
    return highest_between(std::max<Count>(1, minv_ - remaining), minv_) == 0;
}

std::vector<ItemId> TaState::topk_members() const
{
    std::vector<ItemId> members;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > 0 && counts_[i] >= minv_) {
            members.push_back(static_cast<ItemId>(i));
        }
    }
    return members;
}

std::vector<ItemId> TaState::candidates() const
{
    std::vector<ItemId> rest;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > 0 && counts_[i] < minv_) {
            rest.push_back(static_cast<ItemId>(i));
        }
    }
    return rest;
}

}  // namespace cooc
