#include "symtree/session.hpp"

#include <algorithm>

namespace symtree {

exploration_session::exploration_session(const tree_source& tree, std::uint64_t seed)
    : tree_(&tree), root_(tree.root()), rng_(seed) {
    revealed_node r;
    r.degree = tree_->degree(root_);
    if (r.degree == 0) r.color = tree_->leaf_color(root_);
    revealed_.emplace(root_, std::move(r));
}

exploration_session::revealed_node& exploration_session::require(node_id v) {
    auto it = revealed_.find(v);
    if (it == revealed_.end()) throw session_error("node not explored");
    return it->second;
}

const exploration_session::revealed_node& exploration_session::require(node_id v) const {
    auto it = revealed_.find(v);
    if (it == revealed_.end()) throw session_error("node not explored");
    return it->second;
}

std::size_t exploration_session::degree(node_id v) const { return require(v).degree; }

std::optional<color_id> exploration_session::color(node_id v) const { return require(v).color; }

std::size_t exploration_session::depth(node_id v) const { return require(v).depth; }

std::optional<node_id> exploration_session::parent(node_id v) const { return require(v).parent; }

const std::vector<node_id>& exploration_session::known_children(node_id v) const {
    return require(v).known_children;
}

bool exploration_session::children_fully_known(node_id v) const {
    const revealed_node& r = require(v);
    return r.known_children.size() == r.degree;
}

std::size_t exploration_session::next_child_cursor(node_id v) const { return require(v).cursor; }

void exploration_session::reveal(node_id parent_of_c, node_id c) {
    if (revealed_.count(c)) return;  // previously explored parts are free
    revealed_node r;
    r.degree = tree_->degree(c);
    if (r.degree == 0) r.color = tree_->leaf_color(c);
    r.parent = parent_of_c;
    r.depth = revealed_.at(parent_of_c).depth + 1;
    revealed_.emplace(c, std::move(r));
    revealed_.at(parent_of_c).known_children.push_back(c);
    ++cost_;
}

std::optional<node_id> exploration_session::next_child(node_id v) {
    revealed_node& r = require(v);
    if (r.cursor >= r.degree) return std::nullopt;
    node_id c = tree_->child(v, r.cursor++);
    reveal(v, c);
    return c;
}

std::optional<node_id> exploration_session::random_child(node_id v) {
    revealed_node& r = require(v);
    if (r.degree == 0) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, r.degree - 1);
    node_id c = tree_->child(v, pick(rng_));
    reveal(v, c);
    return c;
}

}  // namespace symtree
