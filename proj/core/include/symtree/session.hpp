#pragma once

// The oracle view of a tree. A session starts with only the root explored
// (at cost 0) and reveals nodes one at a time through next_child and
// random_child. Cost counts distinct non-root nodes ever explored; repeat
// visits and exhausted queries are free, so cost == explored nodes - 1 at
// all times. Traversal strategies receive sessions, never trees.

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "symtree/search_tree.hpp"

namespace symtree {

// Contract violation against the oracle surface (querying an unexplored
// node, reading a color off an internal node, ...). Distinct from the
// in-band "no child" result, which is a nullopt return.
struct session_error : std::logic_error {
    using std::logic_error::logic_error;
};

class exploration_session {
public:
    exploration_session(const tree_source& tree, std::uint64_t seed);

    node_id root() const { return root_; }
    std::uint64_t cost() const { return cost_; }
    std::size_t explored_count() const { return revealed_.size(); }
    bool explored(node_id v) const { return revealed_.count(v) != 0; }

    // Revealed information about an explored node.
    std::size_t degree(node_id v) const;
    std::optional<color_id> color(node_id v) const;
    bool is_leaf(node_id v) const { return degree(v) == 0; }
    std::size_t depth(node_id v) const;
    std::optional<node_id> parent(node_id v) const;

    // Children of v discovered so far. For sessions driven only by
    // next_child this is exactly the index-prefix of v's child list.
    const std::vector<node_id>& known_children(node_id v) const;
    bool children_fully_known(node_id v) const;
    std::size_t next_child_cursor(node_id v) const;

    // Reveals the next child of v in stored order, advancing a per-node
    // cursor; nullopt once every child has been handed out this way. The
    // returned child may already be explored (then the call is free).
    std::optional<node_id> next_child(node_id v);

    // Uniformly random child of v; nullopt iff v is a leaf. May return an
    // already-explored child, in which case no cost accrues.
    std::optional<node_id> random_child(node_id v);

    std::mt19937_64& rng() { return rng_; }

private:
    struct revealed_node {
        std::size_t degree = 0;
        std::optional<color_id> color;
        std::size_t depth = 0;
        std::optional<node_id> parent;
        std::vector<node_id> known_children;
        std::size_t cursor = 0;  // next_child position
    };

    revealed_node& require(node_id v);
    const revealed_node& require(node_id v) const;
    void reveal(node_id parent_of_c, node_id c);

    const tree_source* tree_;
    node_id root_;
    std::unordered_map<node_id, revealed_node> revealed_;
    std::uint64_t cost_ = 0;
    std::mt19937_64 rng_;
};

}  // namespace symtree
