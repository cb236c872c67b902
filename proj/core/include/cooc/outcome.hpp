#pragma once

#include <vector>

#include "cooc/model.hpp"

namespace cooc {

/// Per-query work accounting.
struct QueryStats {
    /// Engine work counter: transactions scanned (naive), transactions in the
    /// projected database (tidset) or desirable plus subtree nodes (tree).
    /// Threshold engines count only the work done before the bound separated.
    Count visited = 0;
    /// Work spent after separation computing exact counts for L_k members.
    Count finalize_visited = 0;
    bool early_exit = false;
    /// Checkpoints passed before exit and checkpoints available in total.
    Count segments_scanned = 0;
    Count segments_total = 0;
    /// L_k at the moment the bound separated (empty without early exit).
    std::vector<ItemId> frozen;
};

struct QueryOutcome {
    TopKResult result;
    QueryStats stats;
};

}  // namespace cooc
