#pragma once

// Small undirected graphs, their canonical colorings by iterated neighbor
// signature refinement, and a brute-force automorphism group order used as
// the ground truth for the occurrence law.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symtree/search_tree.hpp"  // tree_error / resource_error

namespace symtree {

struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph, no self-loops, vertices 0..n-1.
struct graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    static graph from_edges(int n, std::vector<std::pair<int, int>> edges);
    bool has_edge(int u, int v) const;
};

// Text format: header "p edge <n> <m>", one "e <u> <v>" line per edge with
// 1-indexed vertices, "c ..." comment lines.
graph parse_graph(const std::string& text);
graph parse_graph_file(const std::string& path);

// Ordered partition of the vertices into color classes 0..classes-1. Colors
// are canonical: they are ranks of vertex signatures, never raw vertex ids,
// so corresponding vertices of isomorphic graphs receive matching colors.
struct coloring {
    std::vector<int> color_of;
    int classes = 0;

    bool discrete() const { return classes == static_cast<int>(color_of.size()); }
    friend bool operator==(const coloring&, const coloring&) = default;
};

coloring uniform_coloring(const graph& g);

// Coarsest stable refinement: iterate the signature (own color, sorted
// multiset of neighbor colors), renaming classes canonically by sorted
// signature rank, until a fixpoint.
coloring color_refine(const graph& g, const coloring& start);

// Splits v into its own class, ordered in front of the remainder of its old
// class; the result is canonically renamed.
coloring individualize(const coloring& c, int v);

// |Aut(g)| by exhaustive extension of partial vertex maps. Desk scale.
std::uint64_t graph_aut_order(const graph& g);

}  // namespace symtree
