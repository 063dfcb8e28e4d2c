#pragma once

// Traversal strategies for the matching-leaf-pair problem on two black box
// search trees. Every strategy acts strictly through exploration sessions;
// none of them reads ground truth. Split costs and the balanced-split
// predicate at the bottom are ground-truth operations for tests and
// experiment harnesses.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "symtree/search_tree.hpp"
#include "symtree/session.hpp"

namespace symtree {

// Strategy contract violation (invalid split, reused sessions where fresh
// ones are required, bad parameters).
struct strategy_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class verdict_kind {
    match_found,              // leaves with equal oracle-revealed colors
    not_isomorphic,           // zero-error strategies only
    probably_not_isomorphic,  // Monte Carlo give-up within the error budget
};

const char* to_string(verdict_kind k);

struct wall_stats {
    std::uint64_t iterations = 0;  // strategy main-loop steps
    std::uint64_t restarts = 0;    // budget doublings / phase restarts
    std::vector<std::uint64_t> budget_schedule;
};

struct verdict {
    verdict_kind kind = verdict_kind::not_isomorphic;
    node_id leaf1 = 0;  // valid when kind == match_found; leaf1 in tree 1
    node_id leaf2 = 0;
    std::uint64_t cost1 = 0;
    std::uint64_t cost2 = 0;
    wall_stats stats;

    // Re-checks color equality against the sessions; throws session_error on
    // a mismatched pair so no strategy can emit an unsound match.
    static verdict match(const exploration_session& t1, const exploration_session& t2,
                         node_id l1, node_id l2, wall_stats stats = {});
    static verdict no_match(verdict_kind k, const exploration_session& t1,
                            const exploration_session& t2, wall_stats stats = {});
};

// Monte Carlo parameters. epsilon in (0,1) is the error bound; the derived
// counter bound e = ceil(-log2(epsilon)) many repeat-color events are
// tolerated before giving up. walk_cap_c scales the walk-length cap
// c*log2(s) used by the budgeted variant.
struct mc_params {
    double epsilon = 0.125;
    unsigned e = 3;
    unsigned walk_cap_c = 4;
    std::uint64_t seed = 0;
    bool dedupe_leaf_sets = true;  // keep at most one stored leaf per color

    mc_params() = default;
    mc_params(double epsilon, std::uint64_t seed, unsigned walk_cap_c = 4);
};

// A chosen node v at the given level of one of the two trees.
struct split {
    int tree_index = 1;  // 1 or 2
    node_id v = 0;
    std::size_t level = 0;
};

// Cost pair of a split: s1 is the size of the other tree's ball of radius
// level; s2 is the size of the subtree under v when the two trees truncated
// at that level are isomorphic, and s1 otherwise.
struct split_cost {
    std::size_t s1 = 1;
    std::size_t s2 = 1;
};

// -- walks ------------------------------------------------------------------

// Uniform random descent from v to a leaf; each root-to-leaf path is reached
// with probability equal to the product of 1/degree along the path.
node_id random_walk(exploration_session& s, node_id v);

// As random_walk but gives up after cap steps (nullopt); nodes explored by
// an abandoned walk stay explored and stay paid for.
std::optional<node_id> capped_walk(exploration_session& s, node_id v, std::size_t cap);

// -- breadth-first machinery --------------------------------------------------

struct bfs_result {
    std::vector<node_id> frontier;  // leaves up to the level cap plus nodes at it
    std::size_t explored = 0;       // children enumerated
};

// Level- and cost-limited breadth-first search under v. Returns nullopt the
// moment the enumeration count would exceed cost_limit. A height limit of 0
// returns {v} itself at zero cost.
std::optional<bfs_result> bfs_subtree(exploration_session& s, node_id v,
                                      std::size_t height_limit = k_unbounded,
                                      std::size_t cost_limit = k_unbounded);

// Resumable breadth-first enumeration of the subtree under a start node.
// step() advances until the next paid (fresh) exploration, completion of
// the whole subtree, or the enumeration limit; at most one fresh node is
// paid per step, so interleaving two probes makes their oracle queries
// strictly alternate. Completing requires strictly fewer than `limit`
// enumerations, so a completed subtree holds at most `limit` nodes.
class bfs_probe {
public:
    enum class status { running, done, failed };

    bfs_probe(exploration_session& s, node_id start, std::uint64_t limit,
              std::function<void(node_id)> on_leaf = {});

    bool running() const { return state_ == status::running; }
    std::uint64_t enumerated() const { return enumerated_; }
    status step();

private:
    bool process(node_id c);

    exploration_session* s_;
    std::uint64_t limit_;
    std::function<void(node_id)> on_leaf_;
    std::deque<node_id> queue_;
    std::unordered_map<node_id, std::size_t> pos_;
    std::uint64_t enumerated_ = 0;
    status state_ = status::running;
};

// -- strategies ----------------------------------------------------------------

// Monte Carlo bidirectional search: paired random walks in both trees,
// stored leaves per tree, match on any cross-tree color collision, give up
// once e+1 repeat-color events accumulate. One-sided error epsilon on
// isomorphic inputs; never reports a match on non-isomorphic inputs.
verdict mc_bidirectional(exploration_session& t1, exploration_session& t2, const mc_params& p);

// Budgeted variant: rounds of at most s walks per tree with walk length
// capped at walk_cap_c*log2(s); s starts at 2 and doubles per round.
// Exploration persists across rounds, so restarts pay no re-exploration.
verdict mc_budgeted(exploration_session& t1, exploration_session& t2, const mc_params& p);

struct bidi_options {
    std::uint64_t seed = 0;
    bool deterministic_walks = false;
};

// Zero-error bidirectional search around a split: explores both balls up to
// the split level (the non-split tree first, its cost capping the other),
// compares the truncated prefixes, then collects every leaf under v and
// walks once from each frontier node of the other tree until a collision.
// The walk phase runs under a doubling total path budget with restarts.
verdict bidirectional_with_split(exploration_session& t1, exploration_session& t2,
                                 const split& sp, const bidi_options& opt = {});

struct split_search_result {
    std::optional<split> found;  // nullopt: trees proven non-isomorphic
    std::uint64_t terminating_budget = 0;
    wall_stats stats;
};

// Las Vegas split search: level-synchronized breadth-first exploration with
// prefix comparison after each completed level, early termination on a
// discovered leaf, and two strictly alternating subtree probes from random
// frontier nodes; the per-tree budget doubles until a probe completes.
split_search_result lv_balanced_splits(exploration_session& t1, exploration_session& t2,
                                       std::uint64_t seed);

// Zero-error test: split search, then bidirectional search with the found
// split on the same sessions.
verdict lv_iso(exploration_session& t1, exploration_session& t2, std::uint64_t seed,
               const bidi_options& opt = {});

// Alternating breadth-first enumeration of both trees with a shared color
// index; matches on the first cross-tree collision, reports non-isomorphism
// once one tree is exhausted and the other yields a non-matching leaf.
verdict deterministic_baseline(exploration_session& t1, exploration_session& t2);

// -- ground truth (tests and harness only) -----------------------------------

split_cost compute_split_cost(const search_tree& t1, const search_tree& t2, const split& sp);

// max{s1, s2} <= 4d * min{sqrt(|T1|), sqrt(|T2|)}, d the larger max degree.
bool is_balanced(const search_tree& t1, const search_tree& t2, const split& sp);

}  // namespace symtree
