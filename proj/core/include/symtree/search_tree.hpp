#pragma once

// Rooted trees with colored leaves, explored through an oracle that reveals
// a node's degree (and color, for leaves) on first visit. This header holds
// the concrete tree type, its validation rules, and the read-only backend
// interface the exploration oracle runs against.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtree {

using node_id = std::uint32_t;
using color_id = std::uint64_t;

inline constexpr std::size_t k_unbounded = static_cast<std::size_t>(-1);

// Structural or format violation in a tree (unary node, bad links, ...).
struct tree_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a size cap (generator height, exhaustive-check scale, ...).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct node_record {
    std::optional<node_id> parent;        // none for the root
    std::vector<node_id> children;        // order is part of the instance
    std::optional<color_id> color;        // present iff the node is a leaf
};

// Read-only backend a tree oracle serves from. Concrete trees implement it
// directly; lazily materialized trees (see ir_tree.hpp) implement it by
// expanding nodes on demand. Callers other than exploration_session should
// not touch this interface: it is the ground truth the oracle hides.
class tree_source {
public:
    virtual ~tree_source() = default;
    virtual node_id root() const = 0;
    virtual std::size_t degree(node_id v) const = 0;
    virtual node_id child(node_id v, std::size_t index) const = 0;
    virtual color_id leaf_color(node_id v) const = 0;
};

// Immutable rooted tree with ordered children and colored leaves.
// Construction validates:
//   - exactly one root, consistent and acyclic parent/child links,
//   - no node with exactly one child,
//   - a node carries a color iff it has no children.
class search_tree final : public tree_source {
public:
    search_tree(std::vector<node_record> nodes, node_id root);

    node_id root() const override { return root_; }
    std::size_t degree(node_id v) const override { return at(v).children.size(); }
    node_id child(node_id v, std::size_t index) const override;
    color_id leaf_color(node_id v) const override;

    std::size_t size() const { return nodes_.size(); }
    const node_record& at(node_id v) const;
    bool is_leaf(node_id v) const { return at(v).children.empty(); }
    const std::vector<node_id>& children(node_id v) const { return at(v).children; }
    std::optional<node_id> parent(node_id v) const { return at(v).parent; }

    std::size_t depth(node_id v) const;
    std::size_t subtree_size(node_id v) const;

private:
    std::vector<node_record> nodes_;
    node_id root_ = 0;
};

// Ground-truth summary figures. Test/harness use only; strategies never see
// these (they act through exploration sessions exclusively).
struct tree_metrics {
    std::size_t size = 0;
    std::size_t leaf_count = 0;
    std::size_t height = 0;
    std::size_t max_degree = 0;
};

tree_metrics metrics(const search_tree& t);

// Incremental construction used by generators and the loader.
class tree_builder {
public:
    node_id add_root(std::optional<color_id> color = std::nullopt);
    node_id add_child(node_id parent, std::optional<color_id> color = std::nullopt);
    void set_color(node_id v, color_id color);
    std::size_t size() const { return nodes_.size(); }
    search_tree build();

private:
    std::vector<node_record> nodes_;
    bool has_root_ = false;
};

}  // namespace symtree
