#include "symtree/search_tree.hpp"

#include <algorithm>
#include <deque>

namespace symtree {

namespace {

void validate(const std::vector<node_record>& nodes, node_id root) {
    if (nodes.empty()) throw tree_error("tree has no nodes");
    if (root >= nodes.size()) throw tree_error("root id out of range");
    std::size_t roots = 0;
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        const node_record& n = nodes[v];
        if (!n.parent) ++roots;
        if (n.children.size() == 1)
            throw tree_error("unary node " + std::to_string(v));
        if (n.children.empty() && !n.color)
            throw tree_error("uncolored leaf " + std::to_string(v));
        if (!n.children.empty() && n.color)
            throw tree_error("colored internal node " + std::to_string(v));
        for (node_id c : n.children) {
            if (c >= nodes.size())
                throw tree_error("child id out of range at node " + std::to_string(v));
            if (!nodes[c].parent || *nodes[c].parent != v)
                throw tree_error("inconsistent parent link at node " + std::to_string(c));
        }
    }
    if (roots != 1 || nodes[root].parent)
        throw tree_error(roots > 1 ? "multiple roots" : "no root");
    // Reachability from the root; a cycle or stray component leaves nodes
    // unvisited.
    std::vector<char> seen(nodes.size(), 0);
    std::deque<node_id> queue{root};
    seen[root] = 1;
    std::size_t visited = 0;
    while (!queue.empty()) {
        node_id v = queue.front();
        queue.pop_front();
        ++visited;
        for (node_id c : nodes[v].children) {
            if (seen[c]) throw tree_error("cycle at node " + std::to_string(c));
            seen[c] = 1;
            queue.push_back(c);
        }
    }
    if (visited != nodes.size())
        throw tree_error("cycle or disconnected nodes");
}

}  // namespace

search_tree::search_tree(std::vector<node_record> nodes, node_id root)
    : nodes_(std::move(nodes)), root_(root) {
    validate(nodes_, root_);
}

const node_record& search_tree::at(node_id v) const {
    if (v >= nodes_.size()) throw tree_error("node id out of range");
    return nodes_[v];
}

node_id search_tree::child(node_id v, std::size_t index) const {
    const node_record& n = at(v);
    if (index >= n.children.size()) throw tree_error("child index out of range");
    return n.children[index];
}

color_id search_tree::leaf_color(node_id v) const {
    const node_record& n = at(v);
    if (!n.color) throw tree_error("leaf_color on internal node");
    return *n.color;
}

std::size_t search_tree::depth(node_id v) const {
    std::size_t d = 0;
    for (std::optional<node_id> p = at(v).parent; p; p = at(*p).parent) ++d;
    return d;
}

std::size_t search_tree::subtree_size(node_id v) const {
    std::size_t count = 0;
    std::deque<node_id> queue{v};
    while (!queue.empty()) {
        node_id u = queue.front();
        queue.pop_front();
        ++count;
        for (node_id c : at(u).children) queue.push_back(c);
    }
    return count;
}

tree_metrics metrics(const search_tree& t) {
    tree_metrics m;
    m.size = t.size();
    std::deque<std::pair<node_id, std::size_t>> queue{{t.root(), 0}};
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        m.height = std::max(m.height, d);
        m.max_degree = std::max(m.max_degree, t.degree(v));
        if (t.is_leaf(v)) ++m.leaf_count;
        for (node_id c : t.children(v)) queue.push_back({c, d + 1});
    }
    return m;
}

node_id tree_builder::add_root(std::optional<color_id> color) {
    if (has_root_) throw tree_error("builder already has a root");
    has_root_ = true;
    nodes_.push_back(node_record{std::nullopt, {}, color});
    return 0;
}

node_id tree_builder::add_child(node_id parent, std::optional<color_id> color) {
    if (parent >= nodes_.size()) throw tree_error("builder: unknown parent");
    node_id id = static_cast<node_id>(nodes_.size());
    nodes_.push_back(node_record{parent, {}, color});
    nodes_[parent].children.push_back(id);
    return id;
}

void tree_builder::set_color(node_id v, color_id color) {
    if (v >= nodes_.size()) throw tree_error("builder: unknown node");
    nodes_[v].color = color;
}

search_tree tree_builder::build() {
    if (!has_root_) throw tree_error("builder has no root");
    has_root_ = false;
    return search_tree(std::move(nodes_), 0);
}

}  // namespace symtree
