#include "symtree/generators.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

#include "symtree/seeding.hpp"

namespace symtree {

namespace {

constexpr std::size_t k_max_complete_height = 22;

void build_complete(tree_builder& b, node_id v, std::size_t levels_left, color_id& next_color) {
    if (levels_left == 0) {
        b.set_color(v, next_color++);
        return;
    }
    node_id left = b.add_child(v);
    node_id right = b.add_child(v);
    build_complete(b, left, levels_left - 1, next_color);
    build_complete(b, right, levels_left - 1, next_color);
}

}  // namespace

search_tree complete_binary(std::size_t height) {
    if (height > k_max_complete_height)
        throw resource_error("complete_binary: height " + std::to_string(height) +
                             " exceeds cap " + std::to_string(k_max_complete_height));
    tree_builder b;
    node_id root = b.add_root();
    color_id next_color = 0;
    build_complete(b, root, height, next_color);
    return b.build();
}

search_tree iso_shuffle(const search_tree& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    tree_builder b;
    // BFS rebuild, permuting each child list as it is copied.
    std::deque<std::pair<node_id, node_id>> queue;  // (old node, new node)
    node_id new_root = t.is_leaf(t.root()) ? b.add_root(t.leaf_color(t.root())) : b.add_root();
    queue.push_back({t.root(), new_root});
    while (!queue.empty()) {
        auto [old_v, new_v] = queue.front();
        queue.pop_front();
        std::vector<node_id> kids = t.children(old_v);
        std::shuffle(kids.begin(), kids.end(), rng);
        for (node_id c : kids) {
            node_id nc = t.is_leaf(c) ? b.add_child(new_v, t.leaf_color(c)) : b.add_child(new_v);
            queue.push_back({c, nc});
        }
    }
    return b.build();
}

namespace {

// Plain recursive structure used while assembling an orbit tree; colors on
// leaves are provisional and copied verbatim when a subtree is duplicated.
struct proto_node {
    std::vector<proto_node> children;
    color_id color = 0;  // meaningful for leaves only

    bool leaf() const { return children.empty(); }
};

proto_node gen_proto(std::size_t budget, std::size_t depth, const orbit_tree_spec& spec,
                     std::mt19937_64& rng, color_id& next_color) {
    proto_node n;
    if (budget < 3 || depth >= spec.height_cap) {
        n.color = next_color++;
        return n;
    }
    std::size_t max_k = std::min(spec.max_degree, budget - 1);
    std::uniform_int_distribution<std::size_t> pick_k(2, std::max<std::size_t>(2, max_k));
    std::size_t k = pick_k(rng);
    std::size_t share = (budget - 1) / k;
    std::bernoulli_distribution dup(spec.duplication_prob);
    for (std::size_t i = 0; i < k; ++i) {
        if (i > 0 && dup(rng)) {
            std::uniform_int_distribution<std::size_t> pick_sibling(0, i - 1);
            n.children.push_back(n.children[pick_sibling(rng)]);  // exact copy, colors included
        } else {
            n.children.push_back(gen_proto(share, depth + 1, spec, rng, next_color));
        }
    }
    return n;
}

void emit_proto(tree_builder& b, node_id at, const proto_node& n,
                std::unordered_map<color_id, color_id>& rename, color_id& next_dense) {
    if (n.leaf()) {
        auto [it, fresh] = rename.emplace(n.color, next_dense);
        if (fresh) ++next_dense;
        b.set_color(at, it->second);
        return;
    }
    for (const proto_node& c : n.children) emit_proto(b, b.add_child(at), c, rename, next_dense);
}

}  // namespace

search_tree orbit_tree(const orbit_tree_spec& spec, std::uint64_t seed) {
    if (spec.max_degree < 2) throw tree_error("orbit_tree_spec: max_degree must be >= 2");
    if (spec.duplication_prob < 0.0 || spec.duplication_prob > 1.0)
        throw tree_error("orbit_tree_spec: duplication_prob outside [0,1]");
    std::mt19937_64 rng(seed);
    color_id next_color = 0;
    proto_node root = gen_proto(std::max<std::size_t>(spec.target_size, 1), 0, spec, rng, next_color);
    tree_builder b;
    node_id r = b.add_root();
    std::unordered_map<color_id, color_id> rename;
    color_id next_dense = 0;
    emit_proto(b, r, root, rename, next_dense);
    return b.build();
}

std::pair<search_tree, search_tree> disjoint_color_pair(std::size_t height, std::uint64_t seed) {
    if (height < 1) throw tree_error("disjoint_color_pair: height must be >= 1");
    search_tree base = complete_binary(height);
    search_tree first = iso_shuffle(base, mix_seed(seed, 1));

    // Second tree: same shape, colors offset past the first tree's range.
    color_id offset = color_id{1} << height;
    tree_builder b;
    std::deque<std::pair<node_id, node_id>> queue;
    queue.push_back({base.root(), b.add_root()});
    while (!queue.empty()) {
        auto [old_v, new_v] = queue.front();
        queue.pop_front();
        for (node_id c : base.children(old_v)) {
            node_id nc = base.is_leaf(c) ? b.add_child(new_v, base.leaf_color(c) + offset)
                                         : b.add_child(new_v);
            queue.push_back({c, nc});
        }
    }
    search_tree second = iso_shuffle(b.build(), mix_seed(seed, 2));
    return {std::move(first), std::move(second)};
}

namespace {

// Rebuilds the complete binary tree, independently replacing internal
// non-root nodes by fresh leaves. Colors are drawn from a shared counter so
// they stay globally distinct across both trees of a pair.
void prune_rec(tree_builder& b, node_id at, std::size_t levels_left, bool is_root,
               double prune_prob, std::mt19937_64& rng, color_id& next_color) {
    std::bernoulli_distribution cut(prune_prob);
    if (levels_left == 0 || (!is_root && cut(rng))) {
        b.set_color(at, next_color++);
        return;
    }
    node_id left = b.add_child(at);
    node_id right = b.add_child(at);
    prune_rec(b, left, levels_left - 1, false, prune_prob, rng, next_color);
    prune_rec(b, right, levels_left - 1, false, prune_prob, rng, next_color);
}

search_tree gen_pruned(std::size_t height, double prune_prob, std::uint64_t seed,
                       color_id& next_color) {
    std::mt19937_64 rng(seed);
    tree_builder b;
    node_id root = b.add_root();
    prune_rec(b, root, 2 * height, true, prune_prob, rng, next_color);
    return b.build();
}

}  // namespace

std::pair<search_tree, search_tree> pruned_pair(std::size_t height, double prune_prob,
                                                std::uint64_t seed, bool plant_match) {
    if (height < 1) throw tree_error("pruned_pair: height must be >= 1");
    if (prune_prob < 0.0 || prune_prob >= 1.0)
        throw tree_error("pruned_pair: prune_prob outside [0,1)");
    if (2 * height > k_max_complete_height)
        throw resource_error("pruned_pair: height exceeds cap");
    color_id next_color = 0;
    search_tree first = gen_pruned(height, prune_prob, mix_seed(seed, 1), next_color);
    if (plant_match) {
        // A matching pair forces a full color-preserving isomorphism, so the
        // planted variant shares the whole pruning and color assignment.
        search_tree second = iso_shuffle(first, mix_seed(seed, 2));
        return {std::move(first), std::move(second)};
    }
    search_tree second = gen_pruned(height, prune_prob, mix_seed(seed, 2), next_color);
    return {std::move(first), std::move(second)};
}

}  // namespace symtree
