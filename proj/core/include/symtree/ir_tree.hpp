#pragma once

// Individualization-refinement search trees over small graphs, served
// through the same oracle interface as concrete trees. A node is a stable
// coloring; a non-discrete node has one child per vertex of its target cell
// (the non-singleton class of smallest color), ordered by vertex id, and
// each child refines the parent coloring with that vertex individualized.
// Leaves are discrete colorings; their color is an interned complete
// invariant (degree sequence plus adjacency matrix in discrete-color
// order), so two leaves collide exactly when their certificates agree.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "symtree/graph.hpp"
#include "symtree/search_tree.hpp"

namespace symtree {

// Maps invariant strings to dense color ids. Share one table across the two
// trees of a run so cross-tree color equality is meaningful.
class color_interner {
public:
    color_id intern(const std::string& key);
    std::size_t size() const { return table_.size(); }

private:
    std::unordered_map<std::string, color_id> table_;
};

class ir_search_tree final : public tree_source {
public:
    // Desk scale: throws resource_error above 10 vertices.
    ir_search_tree(graph g, std::shared_ptr<color_interner> table);

    node_id root() const override { return 0; }
    std::size_t degree(node_id v) const override;
    node_id child(node_id v, std::size_t index) const override;  // materializes on demand
    color_id leaf_color(node_id v) const override;

    const coloring& state(node_id v) const;
    // Vertices individualized on the way from the root, in order. The
    // node's coloring is the stable refinement of the uniform coloring
    // after individualizing exactly this sequence.
    const std::vector<int>& individualized(node_id v) const;
    std::size_t materialized_nodes() const { return nodes_.size(); }

    // Full expansion as a concrete tree; throws resource_error past node_cap.
    search_tree materialize(std::size_t node_cap = 200000) const;

private:
    struct ir_node {
        coloring state;
        std::vector<int> individualized;
        std::vector<int> target_cell;            // empty iff leaf
        std::vector<std::optional<node_id>> kids;
        std::optional<color_id> leaf_color;
    };

    node_id make_node(coloring c, std::vector<int> individualized) const;
    const ir_node& at(node_id v) const;

    graph g_;
    std::shared_ptr<color_interner> table_;
    mutable std::vector<ir_node> nodes_;  // lazy; single-owner use
};

}  // namespace symtree
