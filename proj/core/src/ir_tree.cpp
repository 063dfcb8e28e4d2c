#include "symtree/ir_tree.hpp"

#include <algorithm>
#include <deque>

namespace symtree {

color_id color_interner::intern(const std::string& key) {
    auto [it, fresh] = table_.emplace(key, static_cast<color_id>(table_.size()));
    (void)fresh;
    return it->second;
}

namespace {

// Smallest-color class with more than one vertex, vertices in id order.
std::vector<int> pick_target_cell(const coloring& c) {
    int best = -1;
    std::vector<int> counts(c.classes, 0);
    for (int col : c.color_of) ++counts[col];
    for (int col = 0; col < c.classes; ++col) {
        if (counts[col] > 1) {
            best = col;
            break;
        }
    }
    std::vector<int> cell;
    if (best < 0) return cell;
    for (int v = 0; v < static_cast<int>(c.color_of.size()); ++v)
        if (c.color_of[v] == best) cell.push_back(v);
    return cell;
}

// Complete invariant at a discrete coloring: vertex count, degree sequence
// and adjacency matrix with vertices taken in color order.
std::string leaf_certificate(const graph& g, const coloring& c) {
    std::vector<int> vertex_at(g.n);
    for (int v = 0; v < g.n; ++v) vertex_at[c.color_of[v]] = v;
    std::string out;
    out.reserve(static_cast<std::size_t>(g.n) * (g.n + 2) + 8);
    out += std::to_string(g.n);
    out += '|';
    for (int i = 0; i < g.n; ++i) {
        out += std::to_string(g.adj[vertex_at[i]].size());
        out += ',';
    }
    out += '|';
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            out += g.has_edge(vertex_at[i], vertex_at[j]) ? '1' : '0';
    return out;
}

}  // namespace

ir_search_tree::ir_search_tree(graph g, std::shared_ptr<color_interner> table)
    : g_(std::move(g)), table_(std::move(table)) {
    if (g_.n > 10) throw resource_error("ir_search_tree: graph above 10 vertices");
    if (g_.n == 0) throw graph_error("ir_search_tree: empty graph");
    if (!table_) throw graph_error("ir_search_tree: missing interner");
    make_node(color_refine(g_, uniform_coloring(g_)), {});
}

node_id ir_search_tree::make_node(coloring c, std::vector<int> individualized) const {
    ir_node n;
    n.target_cell = pick_target_cell(c);
    n.kids.assign(n.target_cell.size(), std::nullopt);
    n.state = std::move(c);
    n.individualized = std::move(individualized);
    nodes_.push_back(std::move(n));
    return static_cast<node_id>(nodes_.size() - 1);
}

const ir_search_tree::ir_node& ir_search_tree::at(node_id v) const {
    if (v >= nodes_.size()) throw tree_error("ir node id out of range");
    return nodes_[v];
}

std::size_t ir_search_tree::degree(node_id v) const { return at(v).target_cell.size(); }

node_id ir_search_tree::child(node_id v, std::size_t index) const {
    const ir_node& n = at(v);
    if (index >= n.target_cell.size()) throw tree_error("ir child index out of range");
    if (!n.kids[index]) {
        int vertex = n.target_cell[index];
        coloring next = color_refine(g_, individualize(n.state, vertex));
        std::vector<int> sequence = n.individualized;
        sequence.push_back(vertex);
        node_id id = make_node(std::move(next), std::move(sequence));
        nodes_[v].kids[index] = id;  // nodes_ may have reallocated; reindex
    }
    return *nodes_[v].kids[index];
}

color_id ir_search_tree::leaf_color(node_id v) const {
    const ir_node& n = at(v);
    if (!n.target_cell.empty()) throw tree_error("leaf_color on internal ir node");
    if (!n.leaf_color) nodes_[v].leaf_color = table_->intern(leaf_certificate(g_, n.state));
    return *nodes_[v].leaf_color;
}

const coloring& ir_search_tree::state(node_id v) const { return at(v).state; }

const std::vector<int>& ir_search_tree::individualized(node_id v) const {
    return at(v).individualized;
}

search_tree ir_search_tree::materialize(std::size_t node_cap) const {
    tree_builder b;
    std::deque<std::pair<node_id, node_id>> queue;  // (ir node, built node)
    node_id built_root =
        degree(root()) == 0 ? b.add_root(leaf_color(root())) : b.add_root();
    queue.push_back({root(), built_root});
    while (!queue.empty()) {
        auto [v, built] = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < degree(v); ++i) {
            if (b.size() >= node_cap)
                throw resource_error("ir materialize: node cap exceeded");
            node_id c = child(v, i);
            node_id bc = degree(c) == 0 ? b.add_child(built, leaf_color(c)) : b.add_child(built);
            queue.push_back({c, bc});
        }
    }
    return b.build();
}

}  // namespace symtree
