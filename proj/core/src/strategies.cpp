#include "symtree/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <random>
#include <unordered_map>

#include "symtree/canonical.hpp"
#include "symtree/seeding.hpp"

namespace symtree {

const char* to_string(verdict_kind k) {
    switch (k) {
        case verdict_kind::match_found: return "match";
        case verdict_kind::not_isomorphic: return "not-iso";
        case verdict_kind::probably_not_isomorphic: return "prob-not-iso";
    }
    return "?";
}

verdict verdict::match(const exploration_session& t1, const exploration_session& t2, node_id l1,
                       node_id l2, wall_stats stats) {
    auto c1 = t1.color(l1);
    auto c2 = t2.color(l2);
    if (!c1 || !c2 || *c1 != *c2) throw session_error("match verdict with unequal leaf colors");
    verdict v;
    v.kind = verdict_kind::match_found;
    v.leaf1 = l1;
    v.leaf2 = l2;
    v.cost1 = t1.cost();
    v.cost2 = t2.cost();
    v.stats = std::move(stats);
    return v;
}

verdict verdict::no_match(verdict_kind k, const exploration_session& t1,
                          const exploration_session& t2, wall_stats stats) {
    verdict v;
    v.kind = k;
    v.cost1 = t1.cost();
    v.cost2 = t2.cost();
    v.stats = std::move(stats);
    return v;
}

mc_params::mc_params(double eps, std::uint64_t seed_, unsigned cap_c) {
    if (eps <= 0.0 || eps >= 1.0) throw strategy_error("epsilon must lie in (0,1)");
    if (cap_c < 1) throw strategy_error("walk_cap_c must be >= 1");
    epsilon = eps;
    e = static_cast<unsigned>(std::ceil(-std::log2(eps)));
    walk_cap_c = cap_c;
    seed = seed_;
}

// -- walks ------------------------------------------------------------------

node_id random_walk(exploration_session& s, node_id v) {
    while (s.degree(v) != 0) v = *s.random_child(v);
    return v;
}

std::optional<node_id> capped_walk(exploration_session& s, node_id v, std::size_t cap) {
    std::size_t steps = 0;
    while (s.degree(v) != 0) {
        if (steps == cap) return std::nullopt;
        v = *s.random_child(v);
        ++steps;
    }
    return v;
}

namespace {

// Deterministic descent: always the first discovered child.
node_id first_walk(exploration_session& s, node_id v) {
    while (s.degree(v) != 0) {
        const auto& known = s.known_children(v);
        v = known.empty() ? *s.next_child(v) : known.front();
    }
    return v;
}

// Enumerates every child of u exactly once: previously discovered children
// first, then fresh ones through next_child. fn returns false to abort.
template <typename Fn>
bool for_each_child(exploration_session& s, node_id u, Fn&& fn) {
    std::vector<node_id> snapshot = s.known_children(u);
    for (node_id c : snapshot)
        if (!fn(c)) return false;
    while (s.next_child_cursor(u) < s.degree(u)) {
        auto c = s.next_child(u);
        if (!c) break;
        if (std::find(snapshot.begin(), snapshot.end(), *c) != snapshot.end()) continue;
        if (!fn(*c)) return false;
    }
    return true;
}

std::uint64_t ceil_log2(std::uint64_t x) {
    return x <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(x - 1));
}

}  // namespace

// -- breadth-first search (cost- and level-limited) ---------------------------

std::optional<bfs_result> bfs_subtree(exploration_session& s, node_id v, std::size_t height_limit,
                                      std::size_t cost_limit) {
    bfs_result out;
    if (height_limit == 0 || s.degree(v) == 0) {
        // The subtree cut at level 0, or rooted at a leaf, is v itself.
        out.frontier = {v};
        return out;
    }
    std::deque<std::pair<node_id, std::size_t>> queue{{v, 0}};
    while (!queue.empty()) {
        auto [u, d] = queue.front();
        queue.pop_front();
        std::size_t child_depth = d + 1;
        bool ok = for_each_child(s, u, [&](node_id c) {
            if (++out.explored > cost_limit) return false;
            if (child_depth == height_limit || s.degree(c) == 0)
                out.frontier.push_back(c);
            else
                queue.push_back({c, child_depth});
            return true;
        });
        if (!ok) return std::nullopt;
    }
    return out;
}

// -- Monte Carlo bidirectional search ------------------------------------------

namespace {

using leaf_index = std::unordered_map<color_id, node_id>;

// Paired-walk iterations with stored-leaf bookkeeping. Walks longer than
// walk_cap are abandoned and take no part in the comparisons. Returns a
// verdict when one is reached within max_iters iterations, nullopt when the
// iteration budget runs out first. Note a stored set never holds two leaves
// of one color: a repeat color raises the corresponding flag instead of
// being inserted.
std::optional<verdict> mc_rounds(exploration_session& t1, exploration_session& t2,
                                 const mc_params& p, std::uint64_t max_iters,
                                 std::size_t walk_cap, wall_stats& stats) {
    leaf_index L1, L2;
    unsigned c = 0;
    for (std::uint64_t it = 0; c <= p.e; ++it) {
        if (it >= max_iters) return std::nullopt;
        ++stats.iterations;
        auto l1 = capped_walk(t1, t1.root(), walk_cap);
        auto l2 = capped_walk(t2, t2.root(), walk_cap);
        std::optional<color_id> c1 = l1 ? t1.color(*l1) : std::nullopt;
        std::optional<color_id> c2 = l2 ? t2.color(*l2) : std::nullopt;

        if (l1 && l2 && *c1 == *c2) return verdict::match(t1, t2, *l1, *l2, stats);
        if (l1) {
            auto hit = L2.find(*c1);
            if (hit != L2.end()) return verdict::match(t1, t2, *l1, hit->second, stats);
        }
        bool f_aut2 = l2 && L2.count(*c2) > 0;
        if (l2) {
            auto hit = L1.find(*c2);
            if (hit != L1.end()) return verdict::match(t1, t2, hit->second, *l2, stats);
        }
        bool f_aut1 = l1 && L1.count(*c1) > 0;

        if (l1 && !f_aut1) L1.emplace(*c1, *l1);
        if (l2 && !f_aut2) L2.emplace(*c2, *l2);
        if (f_aut1 || f_aut2) ++c;
    }
    return verdict::no_match(verdict_kind::probably_not_isomorphic, t1, t2, stats);
}

}  // namespace

verdict mc_bidirectional(exploration_session& t1, exploration_session& t2, const mc_params& p) {
    wall_stats stats;
    auto v = mc_rounds(t1, t2, p, k_unbounded, k_unbounded, stats);
    return *v;  // unbounded iterations always reach a verdict
}

verdict mc_budgeted(exploration_session& t1, exploration_session& t2, const mc_params& p) {
    wall_stats stats;
    for (std::uint64_t s = 2;; s *= 2) {
        stats.budget_schedule.push_back(s);
        std::size_t cap = p.walk_cap_c * static_cast<std::size_t>(std::bit_width(s) - 1);
        if (auto v = mc_rounds(t1, t2, p, s, cap, stats)) return *v;
        ++stats.restarts;
    }
}

// -- stepwise breadth-first probe ---------------------------------------------

bfs_probe::bfs_probe(exploration_session& s, node_id start, std::uint64_t limit,
                     std::function<void(node_id)> on_leaf)
    : s_(&s), limit_(limit), on_leaf_(std::move(on_leaf)) {
    if (s.degree(start) > 0) queue_.push_back(start);
}

bfs_probe::status bfs_probe::step() {
    if (state_ != status::running) return state_;
    while (true) {
        if (queue_.empty()) return state_ = status::done;
        node_id u = queue_.front();
        std::size_t& pos = pos_[u];
        const auto& known = s_->known_children(u);
        if (pos < known.size()) {
            if (!process(known[pos++])) return state_ = status::failed;
            continue;  // replays of known territory are free
        }
        if (s_->next_child_cursor(u) < s_->degree(u)) {
            std::uint64_t before = s_->cost();
            s_->next_child(u);
            bool paid = s_->cost() != before;
            const auto& now_known = s_->known_children(u);
            if (pos < now_known.size()) {
                if (!process(now_known[pos++])) return state_ = status::failed;
            }
            if (paid) return status::running;  // pause on the cost event
            continue;
        }
        queue_.pop_front();
    }
}

bool bfs_probe::process(node_id c) {
    ++enumerated_;
    if (enumerated_ >= limit_) return false;
    if (s_->degree(c) > 0) {
        queue_.push_back(c);
    } else if (on_leaf_) {
        on_leaf_(c);
    }
    return true;
}

// -- Las Vegas split search ----------------------------------------------------

namespace {

struct synced_bfs_result {
    bool mismatch = false;
    std::optional<split> leaf_split;
    std::size_t level = 0;  // deepest level completed in both trees
    std::vector<node_id> frontier1, frontier2;
};

// Expands one level, recounting previously enumerated children against the
// ball-size limit and paying only for fresh ones. nullopt when the limit
// cuts the level short.
std::optional<std::vector<node_id>> expand_level(exploration_session& s,
                                                 const std::vector<node_id>& level,
                                                 std::size_t& ball_size, std::uint64_t limit) {
    std::vector<node_id> next;
    for (node_id v : level) {
        std::vector<node_id> known = s.known_children(v);
        for (node_id c : known) {
            if (++ball_size > limit) return std::nullopt;
            next.push_back(c);
        }
        while (s.next_child_cursor(v) < s.degree(v)) {
            if (ball_size + 1 > limit) return std::nullopt;
            node_id c = *s.next_child(v);
            ++ball_size;
            next.push_back(c);
        }
    }
    return next;
}

bool prefixes_agree(const exploration_session& s1, const exploration_session& s2, std::size_t h) {
    return truncated_iso(explored_prefix::from_session(s1), explored_prefix::from_session(s2), h);
}

// Level-synchronized BFS in both trees under a shared ball-size limit.
// After each completed level the explored prefixes are compared (mismatch
// proves non-isomorphism) and discovered leaves end the search with a split.
synced_bfs_result synced_bfs(exploration_session& s1, exploration_session& s2,
                             std::uint64_t limit) {
    synced_bfs_result r;
    std::vector<node_id> lvl1{s1.root()}, lvl2{s2.root()};
    std::size_t size1 = 1, size2 = 1;
    if (!prefixes_agree(s1, s2, 0)) {
        r.mismatch = true;
        return r;
    }
    if (s1.degree(s1.root()) == 0) {
        r.leaf_split = split{1, s1.root(), 0};
        return r;
    }
    for (std::size_t level = 0;; ++level) {
        auto next1 = expand_level(s1, lvl1, size1, limit);
        auto next2 = expand_level(s2, lvl2, size2, limit);
        if (!next1 || !next2) break;  // budget cut a level short
        lvl1 = std::move(*next1);
        lvl2 = std::move(*next2);
        r.level = level + 1;
        if (!prefixes_agree(s1, s2, r.level)) {
            r.mismatch = true;
            return r;
        }
        // Matching prefixes mean leaves show up in both trees at once;
        // tree 1 wins the tie.
        auto is_leaf1 = [&](node_id v) { return s1.degree(v) == 0; };
        auto is_leaf2 = [&](node_id v) { return s2.degree(v) == 0; };
        if (auto it = std::find_if(lvl1.begin(), lvl1.end(), is_leaf1); it != lvl1.end()) {
            r.leaf_split = split{1, *it, r.level};
            return r;
        }
        if (auto it = std::find_if(lvl2.begin(), lvl2.end(), is_leaf2); it != lvl2.end()) {
            r.leaf_split = split{2, *it, r.level};
            return r;
        }
    }
    r.frontier1 = std::move(lvl1);
    r.frontier2 = std::move(lvl2);
    return r;
}

}  // namespace

split_search_result lv_balanced_splits(exploration_session& t1, exploration_session& t2,
                                       std::uint64_t seed) {
    if (t1.explored_count() != 1 || t2.explored_count() != 1)
        throw strategy_error("lv_balanced_splits requires fresh sessions");
    std::mt19937_64 rng(seed);
    wall_stats stats;
    for (std::uint64_t s = 1;; s *= 2) {
        stats.budget_schedule.push_back(s);
        ++stats.iterations;
        synced_bfs_result r = synced_bfs(t1, t2, s);
        if (r.mismatch) return {std::nullopt, s, std::move(stats)};
        if (r.leaf_split) return {r.leaf_split, s, std::move(stats)};
        if (!r.frontier1.empty() && !r.frontier2.empty()) {
            std::uniform_int_distribution<std::size_t> d1(0, r.frontier1.size() - 1);
            std::uniform_int_distribution<std::size_t> d2(0, r.frontier2.size() - 1);
            node_id v1 = r.frontier1[d1(rng)];
            node_id v2 = r.frontier2[d2(rng)];
            bfs_probe p1(t1, v1, s), p2(t2, v2, s);
            while (p1.running() || p2.running()) {
                if (p1.running() && p1.step() == bfs_probe::status::done)
                    return {split{1, v1, r.level}, s, std::move(stats)};
                if (p2.running() && p2.step() == bfs_probe::status::done)
                    return {split{2, v2, r.level}, s, std::move(stats)};
            }
        }
        ++stats.restarts;
    }
}

// -- bidirectional search around a split ---------------------------------------

verdict bidirectional_with_split(exploration_session& t1, exploration_session& t2,
                                 const split& sp, const bidi_options& opt) {
    if (sp.tree_index != 1 && sp.tree_index != 2) throw strategy_error("invalid split tree index");
    exploration_session& a = sp.tree_index == 1 ? t1 : t2;  // tree holding the split
    exploration_session& b = sp.tree_index == 1 ? t2 : t1;
    wall_stats stats;

    auto ball_b = bfs_subtree(b, b.root(), sp.level, k_unbounded);
    auto ball_a = bfs_subtree(a, a.root(), sp.level, ball_b->explored);
    if (!ball_a) {
        // The split tree's ball alone outgrew the other tree's whole ball.
        return verdict::no_match(verdict_kind::not_isomorphic, t1, t2, std::move(stats));
    }
    if (!a.explored(sp.v) || a.depth(sp.v) != sp.level)
        throw strategy_error("invalid split: node not at stated level");
    if (!prefixes_agree(a, b, sp.level))
        return verdict::no_match(verdict_kind::not_isomorphic, t1, t2, std::move(stats));

    auto under_v = bfs_subtree(a, sp.v, k_unbounded, k_unbounded);
    std::unordered_map<color_id, node_id> catalog;
    catalog.reserve(under_v->frontier.size());
    for (node_id l : under_v->frontier) catalog.emplace(*a.color(l), l);

    std::vector<node_id> targets = ball_b->frontier;
    std::mt19937_64 rng(opt.seed);
    std::shuffle(targets.begin(), targets.end(), rng);

    std::uint64_t ball_size = ball_b->explored + 1;
    std::uint64_t budget = ball_size * std::max<std::uint64_t>(ceil_log2(ball_size + 2), 1);
    for (;;) {
        std::uint64_t start_cost = b.cost();
        bool overran = false;
        for (node_id n : targets) {
            node_id l = opt.deterministic_walks ? first_walk(b, n) : random_walk(b, n);
            ++stats.iterations;
            auto hit = catalog.find(*b.color(l));
            if (hit != catalog.end()) {
                return sp.tree_index == 1 ? verdict::match(t1, t2, hit->second, l, std::move(stats))
                                          : verdict::match(t1, t2, l, hit->second, std::move(stats));
            }
            if (b.cost() - start_cost > budget) {
                overran = true;
                break;
            }
        }
        if (!overran) {
            // A full pass saw one leaf under every frontier node and none
            // collided with the complete catalog under v.
            return verdict::no_match(verdict_kind::not_isomorphic, t1, t2, std::move(stats));
        }
        budget *= 2;
        ++stats.restarts;
    }
}

verdict lv_iso(exploration_session& t1, exploration_session& t2, std::uint64_t seed,
               const bidi_options& opt) {
    split_search_result sr = lv_balanced_splits(t1, t2, mix_seed(seed, 1));
    if (!sr.found) return verdict::no_match(verdict_kind::not_isomorphic, t1, t2, sr.stats);
    bidi_options o = opt;
    o.seed = mix_seed(seed, 2);
    verdict v = bidirectional_with_split(t1, t2, *sr.found, o);
    v.stats.iterations += sr.stats.iterations;
    v.stats.restarts += sr.stats.restarts;
    v.stats.budget_schedule.insert(v.stats.budget_schedule.begin(),
                                   sr.stats.budget_schedule.begin(),
                                   sr.stats.budget_schedule.end());
    return v;
}

// -- deterministic baseline -----------------------------------------------------

verdict deterministic_baseline(exploration_session& t1, exploration_session& t2) {
    wall_stats stats;
    std::unordered_map<color_id, std::pair<int, node_id>> index;
    std::uint64_t leaves_seen[3] = {0, 0, 0};
    std::vector<std::pair<int, node_id>> pending;

    auto note_leaf = [&](int tree, node_id l) -> std::optional<verdict> {
        ++leaves_seen[tree];
        color_id c = tree == 1 ? *t1.color(l) : *t2.color(l);
        auto it = index.find(c);
        if (it != index.end() && it->second.first != tree) {
            node_id other = it->second.second;
            return tree == 1 ? verdict::match(t1, t2, l, other, stats)
                             : verdict::match(t1, t2, other, l, stats);
        }
        index.emplace(c, std::make_pair(tree, l));
        return std::nullopt;
    };
    auto drain = [&]() -> std::optional<verdict> {
        for (auto [tree, l] : pending)
            if (auto v = note_leaf(tree, l)) return v;
        pending.clear();
        return std::nullopt;
    };

    if (t1.is_leaf(t1.root()))
        if (auto v = note_leaf(1, t1.root())) return *v;
    if (t2.is_leaf(t2.root()))
        if (auto v = note_leaf(2, t2.root())) return *v;

    bfs_probe p1(t1, t1.root(), k_unbounded, [&](node_id l) { pending.push_back({1, l}); });
    bfs_probe p2(t2, t2.root(), k_unbounded, [&](node_id l) { pending.push_back({2, l}); });

    while (p1.running() && p2.running()) {
        p1.step();
        ++stats.iterations;
        if (auto v = drain()) return *v;
        p2.step();
        ++stats.iterations;
        if (auto v = drain()) return *v;
    }

    // One tree is fully enumerated, so its color set is complete. Equal
    // colors force equal leaf-color multisets, so any known or next leaf of
    // the other tree that missed the catalog settles non-isomorphism.
    int exhausted = p1.running() ? 2 : 1;
    bfs_probe& rest = exhausted == 1 ? p2 : p1;
    int other = exhausted == 1 ? 2 : 1;
    while (leaves_seen[other] == 0 && rest.running()) {
        rest.step();
        ++stats.iterations;
        if (auto v = drain()) return *v;
    }
    return verdict::no_match(verdict_kind::not_isomorphic, t1, t2, std::move(stats));
}

// -- ground-truth split accounting ----------------------------------------------

namespace {

std::size_t ball_size(const search_tree& t, std::size_t h) {
    std::size_t count = 0;
    std::deque<std::pair<node_id, std::size_t>> queue{{t.root(), 0}};
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        ++count;
        if (d < h)
            for (node_id c : t.children(v)) queue.push_back({c, d + 1});
    }
    return count;
}

}  // namespace

split_cost compute_split_cost(const search_tree& t1, const search_tree& t2, const split& sp) {
    if (sp.tree_index != 1 && sp.tree_index != 2) throw strategy_error("invalid split tree index");
    const search_tree& holder = sp.tree_index == 1 ? t1 : t2;
    const search_tree& other = sp.tree_index == 1 ? t2 : t1;
    if (holder.depth(sp.v) != sp.level)
        throw strategy_error("invalid split: node not at stated level");
    split_cost out;
    out.s1 = ball_size(other, sp.level);
    bool iso = truncated_code(holder, sp.level) == truncated_code(other, sp.level);
    out.s2 = iso ? holder.subtree_size(sp.v) : out.s1;
    return out;
}

bool is_balanced(const search_tree& t1, const search_tree& t2, const split& sp) {
    split_cost c = compute_split_cost(t1, t2, sp);
    tree_metrics m1 = metrics(t1), m2 = metrics(t2);
    // d = 0 only for single-leaf trees; clamp so the trivial root split of a
    // leaf pair counts as balanced.
    double d = static_cast<double>(std::max<std::size_t>({m1.max_degree, m2.max_degree, 1}));
    double bound = 4.0 * d * std::sqrt(static_cast<double>(std::min(m1.size, m2.size)));
    return static_cast<double>(std::max(c.s1, c.s2)) <= bound;
}

}  // namespace symtree
