#include "cooc/pitree.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace cooc {

std::vector<NodeId> PiTree::children(NodeId id) const
{
    std::vector<NodeId> out;
    for (NodeId c = nodes_[id].first_child; c != kNoNode; c = nodes_[c].next_sibling) {
        out.push_back(c);
    }
    return out;
}

TreeStats PiTree::stats() const
{
    TreeStats s;
    s.nodes = node_count();
    for (std::size_t id = 1; id < nodes_.size(); ++id) {
        const auto& n = nodes_[id];
        if (n.first_child == kNoNode) {
            ++s.leaves;
        }
        if (n.parent == kRootNode) {
            ++s.root_children;
        }
        if (s.depth_histogram.size() <= n.depth) {
            s.depth_histogram.resize(n.depth + 1, 0);
        }
        ++s.depth_histogram[n.depth];
    }
    return s;
}

PiTree build_pitree(const TransactionDatabase& db, const RankOrder& order)
{
    // Pass one (supports and rank order) is already folded into `order`.
    std::vector<PiNode> built(1);
    built[kRootNode].end = 1;
    std::vector<NodeId> last_child(1, kNoNode);
    std::vector<std::vector<NodeId>> links(db.item_count());
    std::unordered_map<std::uint64_t, NodeId> edges;
    edges.reserve(db.total_items() / 2 + 16);

    std::vector<ItemId> sorted;
    for (std::size_t index = 0; index < db.size(); ++index) {
        auto t = db.transaction(index);
        sorted.assign(t.begin(), t.end());
        std::sort(sorted.begin(), sorted.end(), [&](ItemId a, ItemId b) { return order.ahead(a, b); });

        NodeId cursor = kRootNode;
        for (ItemId item : sorted) {
            const std::uint64_t key = (static_cast<std::uint64_t>(cursor) << 32) | item;
            auto [it, inserted] = edges.try_emplace(key, static_cast<NodeId>(built.size()));
            if (inserted) {
                PiNode fresh;
                fresh.label = item;
                fresh.rank = order.rank(item);
                fresh.parent = cursor;
                fresh.depth = built[cursor].depth + 1;
                const NodeId id = it->second;
                if (last_child[cursor] == kNoNode) {
                    built[cursor].first_child = id;
                } else {
                    built[last_child[cursor]].next_sibling = id;
                }
                last_child[cursor] = id;
                built.push_back(fresh);
                last_child.push_back(kNoNode);
                links[item].push_back(id);
            }
            cursor = it->second;
            ++built[cursor].count;
        }
        ++built[kRootNode].count;
    }

    // Renumber in preorder so every subtree occupies a contiguous id range.
    std::vector<NodeId> preorder;
    preorder.reserve(built.size());
    std::vector<NodeId> stack{kRootNode};
    std::vector<NodeId> reversed;
    while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        preorder.push_back(id);
        reversed.clear();
        for (NodeId c = built[id].first_child; c != kNoNode; c = built[c].next_sibling) {
            reversed.push_back(c);
        }
        stack.insert(stack.end(), reversed.rbegin(), reversed.rend());
    }
    std::vector<NodeId> renamed(built.size());
    for (std::size_t pos = 0; pos < preorder.size(); ++pos) {
        renamed[preorder[pos]] = static_cast<NodeId>(pos);
    }
    auto remap = [&](NodeId id) { return id == kNoNode ? kNoNode : renamed[id]; };

    PiTree tree;
    tree.nodes_.resize(built.size());
    for (std::size_t old = 0; old < built.size(); ++old) {
        PiNode n = built[old];
        n.parent = remap(n.parent);
        n.first_child = remap(n.first_child);
        n.next_sibling = remap(n.next_sibling);
        tree.nodes_[renamed[old]] = n;
    }
    std::vector<NodeId> size(tree.nodes_.size(), 1);
    for (std::size_t id = tree.nodes_.size(); id-- > 1;) {
        size[tree.nodes_[id].parent] += size[id];
    }
    for (std::size_t id = 0; id < tree.nodes_.size(); ++id) {
        tree.nodes_[id].end = static_cast<NodeId>(id + size[id]);
    }
    for (auto& list : links) {
        for (auto& id : list) {
            id = renamed[id];
        }
    }
    tree.links_ = std::move(links);
    tree.order_ = order;
    tree.transactions_ = db.size();
    return tree;
}

Count DesirableNodeSet::total_count(const PiTree& tree) const
{
    Count total = 0;
    for (NodeId id : nodes) {
        total += tree.node(id).count;
    }
    return total;
}

DesirableNodeSet find_desirable_nodes(const PiTree& tree, const Query& q)
{
    DesirableNodeSet ns;
    const auto& items = q.items();
    if (q.last() >= tree.item_count()) {
        return ns;
    }
    const auto& order = tree.order();
    for (NodeId candidate : tree.node_links(q.last())) {
        // Match i_{s-1} .. i_1 walking towards the root. A label ranked ahead
        // of the item being sought means that item cannot appear further up.
        std::size_t remaining = items.size() - 1;
        NodeId cursor = tree.node(candidate).parent;
        bool failed = false;
        while (remaining > 0) {
            if (cursor == kRootNode) {
                failed = true;
                break;
            }
            const PiNode& current = tree.node(cursor);
            const ItemId wanted = items[remaining - 1];
            if (current.label == wanted) {
                --remaining;
                cursor = current.parent;
            } else if (order.rank(wanted) < current.rank) {
                cursor = current.parent;
            } else {
                failed = true;
                break;
            }
        }
        if (!failed) {
            ns.nodes.push_back(candidate);
        }
    }
    return ns;
}

namespace {

std::vector<char> query_mask(const Query& q, std::size_t item_count)
{
    std::vector<char> mask(item_count, 0);
    for (ItemId item : q.items()) {
        mask[item] = 1;
    }
    return mask;
}

// Adds `weight` to every non-query label on the path from `id` up to (not
// including) the root.
template <typename Add>
void ancestor_pass(const PiTree& tree, NodeId id, Count weight, const std::vector<char>& in_query, Add&& add)
{
    for (NodeId up = tree.node(id).parent; up != kRootNode; up = tree.node(up).parent) {
        const ItemId label = tree.node(up).label;
        if (!in_query[label]) {
            add(label, weight);
        }
    }
}

struct DenseCounts {
    std::vector<Count> co;
    Count visited = 0;
};

DenseCounts count_all(const PiTree& tree, const Query& q)
{
    DenseCounts out;
    out.co.assign(tree.item_count(), 0);
    if (q.last() >= tree.item_count()) {
        return out;
    }
    const auto mask = query_mask(q, tree.item_count());
    const auto ns = find_desirable_nodes(tree, q);
    out.visited = ns.nodes.size();
    for (NodeId id : ns.nodes) {
        const PiNode& n = tree.node(id);
        ancestor_pass(tree, id, n.count, mask, [&](ItemId item, Count w) { out.co[item] += w; });
        for (NodeId d = id + 1; d < n.end; ++d) {
            const PiNode& below = tree.node(d);
            out.co[below.label] += below.count;
        }
        out.visited += n.end - id - 1;
    }
    return out;
}

}  // namespace

CoCountTable pt_co_counts(const PiTree& tree, const Query& q)
{
    const auto dense = count_all(tree, q);
    CoCountTable table;
    for (std::size_t item = 0; item < dense.co.size(); ++item) {
        if (dense.co[item] > 0) {
            table.emplace(static_cast<ItemId>(item), dense.co[item]);
        }
    }
    return table;
}

QueryOutcome pt_query(const PiTree& tree, const Query& q)
{
    auto dense = count_all(tree, q);
    QueryOutcome out;
    out.result = finalize_topk(std::span<const Count>(dense.co), q.k(), tree.order());
    out.stats.visited = dense.visited;
    return out;
}

Count fre(const PiTree& tree, ItemId item, NodeId node)
{
    Count total = 0;
    for (NodeId d = node; d < tree.node(node).end; ++d) {
        if (d != kRootNode && tree.node(d).label == item) {
            total += tree.node(d).count;
        }
    }
    return total;
}

QueryOutcome pt_ta_query(const PiTree& tree, const Query& q, const TaOptions& options)
{
    QueryOutcome out;
    if (q.last() >= tree.item_count()) {
        return out;
    }
    auto ns = find_desirable_nodes(tree, q);
    if (ns.nodes.empty()) {
        return out;
    }
    if (options.desirable_by_count) {
        std::stable_sort(ns.nodes.begin(), ns.nodes.end(),
                         [&](NodeId a, NodeId b) { return tree.node(a).count > tree.node(b).count; });
    }
    const auto mask = query_mask(q, tree.item_count());
    const Count support = ns.total_count(tree);
    TaState state(tree.item_count(), q.k(), support);
    out.stats.visited = ns.nodes.size();

    // Phase 1: items ranked ahead of the last query item get exact counts
    // from the root paths.
    for (NodeId id : ns.nodes) {
        ancestor_pass(tree, id, tree.node(id).count, mask, [&](ItemId item, Count w) { state.add(item, w); });
    }

    // Phase 2: subtree items, one child subtree of a desirable node at a
    // time. An item gains at most a subtree root's count from that subtree,
    // so the unvisited mass bounds what any outsider can still gain.
    for (NodeId id : ns.nodes) {
        out.stats.segments_total += std::max<std::size_t>(tree.children(id).size(), 1);
    }
    Count rest_of_ns = support;
    struct Cursor {
        std::size_t ns_index;
        NodeId child;
    };
    std::optional<Cursor> resume;
    for (std::size_t j = 0; j < ns.nodes.size() && !resume; ++j) {
        const PiNode& top = tree.node(ns.nodes[j]);
        rest_of_ns -= top.count;
        Count rest_of_children = 0;
        for (NodeId c = top.first_child; c != kNoNode; c = tree.node(c).next_sibling) {
            rest_of_children += tree.node(c).count;
        }
        auto checkpoint = [&](NodeId next_child) {
            ++out.stats.segments_scanned;
            const Count remaining = rest_of_ns + rest_of_children;
            const bool separated = state.separated(remaining);
            if (options.observer) {
                options.observer(TaCheckpoint{state, remaining, separated});
            }
            if (separated) {
                resume = Cursor{j, next_child};
            }
        };
        if (top.first_child == kNoNode) {
            checkpoint(kNoNode);
            continue;
        }
        for (NodeId c = top.first_child; c != kNoNode && !resume; c = tree.node(c).next_sibling) {
            const PiNode& child = tree.node(c);
            for (NodeId d = c; d < child.end; ++d) {
                state.add(tree.node(d).label, tree.node(d).count);
            }
            out.stats.visited += child.end - c;
            rest_of_children -= child.count;
            checkpoint(child.next_sibling);
        }
    }

    if (!resume) {
        out.result = finalize_topk(state.counts(), q.k(), tree.order());
        return out;
    }

    out.stats.early_exit = true;
    out.stats.frozen = state.topk_members();
    CoCountTable exact;
    for (ItemId item : out.stats.frozen) {
        exact[item] = state.count(item);
    }
    if (!options.finalize) {
        out.result = finalize_topk(exact, exact.size(), tree.order());
        out.result.exact_counts = false;
        return out;
    }
    std::vector<char> frozen(tree.item_count(), 0);
    for (ItemId item : out.stats.frozen) {
        frozen[item] = 1;
    }
    auto absorb = [&](NodeId first, NodeId last) {
        for (NodeId d = first; d < last; ++d) {
            const PiNode& n = tree.node(d);
            if (frozen[n.label]) {
                exact[n.label] += n.count;
            }
        }
        out.stats.finalize_visited += last - first;
    };
    if (resume->child != kNoNode) {
        const NodeId owner = ns.nodes[resume->ns_index];
        absorb(resume->child, tree.node(owner).end);
    }
    for (std::size_t j = resume->ns_index + 1; j < ns.nodes.size(); ++j) {
        const NodeId id = ns.nodes[j];
        absorb(id + 1, tree.node(id).end);
    }
    out.result = finalize_topk(exact, q.k(), tree.order());
    return out;
}

}  // namespace cooc
