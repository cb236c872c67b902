#pragma once

// Prefix itemset tree.
//
// Every transaction is sorted by rank and inserted as a root path, so shared
// prefixes share nodes and each node's count is the number of transactions
// whose sorted prefix ends at or passes through it. Parent links allow
// walking from any node back to the root; the header table lists, for each
// item, every node labelled with it in creation order.
//
// After construction, nodes are renumbered in depth-first preorder (children
// in insertion order). A node's subtree is then the contiguous id range
// [id, end), which turns subtree traversal into a linear scan.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "cooc/model.hpp"
#include "cooc/outcome.hpp"
#include "cooc/threshold.hpp"

namespace cooc {

using NodeId = std::uint32_t;
inline constexpr NodeId kRootNode = 0;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct PiNode {
    ItemId label = 0;  // meaningless on the root
    std::uint32_t rank = std::numeric_limits<std::uint32_t>::max();
    Count count = 0;
    NodeId parent = kNoNode;
    NodeId first_child = kNoNode;
    NodeId next_sibling = kNoNode;
    NodeId end = 0;  // one past the last node of this subtree in preorder
    std::uint32_t depth = 0;
};

struct TreeStats {
    std::size_t nodes = 0;  // excluding the root
    std::size_t leaves = 0;
    std::size_t root_children = 0;
    std::vector<std::size_t> depth_histogram;  // [d] = nodes at depth d (root is depth 0)
};

class PiTree {
public:
    PiTree() = default;

    [[nodiscard]] const PiNode& node(NodeId id) const { return nodes_[id]; }
    [[nodiscard]] const PiNode& root() const { return nodes_[kRootNode]; }
    /// Number of non-root nodes.
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.empty() ? 0 : nodes_.size() - 1; }
    [[nodiscard]] std::span<const NodeId> node_links(ItemId item) const { return links_.at(item); }
    [[nodiscard]] const RankOrder& order() const noexcept { return order_; }
    [[nodiscard]] std::size_t item_count() const noexcept { return links_.size(); }
    [[nodiscard]] std::size_t transaction_count() const noexcept { return transactions_; }

    [[nodiscard]] std::vector<NodeId> children(NodeId id) const;
    [[nodiscard]] TreeStats stats() const;

private:
    friend PiTree build_pitree(const TransactionDatabase& db, const RankOrder& order);

    std::vector<PiNode> nodes_;
    std::vector<std::vector<NodeId>> links_;
    RankOrder order_;
    std::size_t transactions_ = 0;
};

PiTree build_pitree(const TransactionDatabase& db, const RankOrder& order);

/// Nodes registering the query's last item whose root path registers every
/// other query item.
struct DesirableNodeSet {
    std::vector<NodeId> nodes;
    /// Sum of the nodes' counts, i.e. the query's support.
    [[nodiscard]] Count total_count(const PiTree& tree) const;
};

DesirableNodeSet find_desirable_nodes(const PiTree& tree, const Query& q);

/// Full co-occurrence table: ancestor-side items gain the desirable node's
/// count, subtree items gain their own node counts.
CoCountTable pt_co_counts(const PiTree& tree, const Query& q);

QueryOutcome pt_query(const PiTree& tree, const Query& q);

/// Sum of counts of nodes labelled `item` in the subtree rooted at `node`
/// (the node itself included).
Count fre(const PiTree& tree, ItemId item, NodeId node);

QueryOutcome pt_ta_query(const PiTree& tree, const Query& q, const TaOptions& options = {});

}  // namespace cooc
