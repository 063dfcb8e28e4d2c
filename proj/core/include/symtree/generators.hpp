#pragma once

// Instance families. Every generator output satisfies the invariance
// property by construction: equal leaf colors always admit a
// color-preserving isomorphism carrying one leaf to the other.

#include <cstdint>
#include <utility>

#include "symtree/search_tree.hpp"

namespace symtree {

// Parameters for random trees whose symmetries come from duplicated
// sibling subtrees.
struct orbit_tree_spec {
    std::size_t target_size = 200;  // approximate node count
    std::size_t max_degree = 3;     // >= 2
    double duplication_prob = 0.25; // chance a child repeats an earlier sibling
    std::size_t height_cap = 64;
};

// Complete binary tree of the given height whose 2^h leaves carry pairwise
// distinct colors 0..2^h-1 in left-to-right order.
search_tree complete_binary(std::size_t height);

// Same abstract colored tree with every node's child list independently
// and uniformly permuted, node ids renumbered.
search_tree iso_shuffle(const search_tree& t, std::uint64_t seed);

// Random tree in which duplicated sibling subtrees are exact copies; leaves
// are colored by their orbit under the group generated by swapping those
// copies, so the invariance property is a consequence of the construction.
search_tree orbit_tree(const orbit_tree_spec& spec, std::uint64_t seed);

// Two complete-binary-shaped trees of the given height with disjoint color
// sets (0..2^h-1 and 2^h..2^(h+1)-1): no matching leaf pair exists.
std::pair<search_tree, search_tree> disjoint_color_pair(std::size_t height, std::uint64_t seed);

// Binary trees with leaves on multiple levels, obtained from a complete
// binary tree of height 2*height by replacing internal nodes with fresh
// distinctly colored leaves (probability prune_prob per node, root kept).
// Without a planted match the two trees are pruned independently and all
// leaf colors are globally distinct, so no matching pair exists. With
// plant_match the second tree is a child-order shuffle of the first with
// identical colors, making every color a matching pair.
std::pair<search_tree, search_tree> pruned_pair(std::size_t height, double prune_prob,
                                                std::uint64_t seed, bool plant_match = false);

}  // namespace symtree
