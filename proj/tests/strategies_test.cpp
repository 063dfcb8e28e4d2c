#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>

#include "symtree/canonical.hpp"
#include "symtree/generators.hpp"
#include "symtree/seeding.hpp"
#include "symtree/session.hpp"
#include "symtree/strategies.hpp"
#include "symtree/tree_io.hpp"
#include "test_support.hpp"

using namespace symtree;

namespace {

std::pair<exploration_session, exploration_session> sessions(const search_tree& a,
                                                             const search_tree& b,
                                                             std::uint64_t seed) {
    return {exploration_session(a, mix_seed(seed, 1)), exploration_session(b, mix_seed(seed, 2))};
}

}  // namespace

TEST_CASE("random walks on complete binary trees have exact length") {
    search_tree t = complete_binary(5);
    exploration_session s(t, 3);
    for (int i = 0; i < 50; ++i) {
        node_id leaf = random_walk(s, s.root());
        CHECK(s.degree(leaf) == 0);
        CHECK(s.depth(leaf) == 5);
    }
    // walk starting at a leaf returns it for free
    std::uint64_t before = s.cost();
    node_id l = random_walk(s, s.root());
    CHECK(random_walk(s, l) == l);
    CHECK(s.cost() >= before);
}

TEST_CASE("random walks reach complete-binary leaves uniformly") {
    search_tree t = complete_binary(3);
    exploration_session s(t, 99);
    std::map<color_id, int> hits;
    const int walks = 4000;
    for (int i = 0; i < walks; ++i) ++hits[*s.color(random_walk(s, s.root()))];
    CHECK(hits.size() == 8);
    for (const auto& [color, count] : hits) {
        double freq = static_cast<double>(count) / walks;
        CHECK(freq > 0.125 - 0.035);  // 1/8 each, generous sampling window
        CHECK(freq < 0.125 + 0.035);
    }
}

TEST_CASE("walk length on random instances stays logarithmic") {
    orbit_tree_spec spec;
    spec.target_size = 1000;
    spec.max_degree = 4;
    spec.duplication_prob = 0.3;
    double total = 0;
    const int trees = 60;
    for (int i = 0; i < trees; ++i) {
        search_tree t = orbit_tree(spec, 1000 + i);
        exploration_session s(t, i);
        node_id leaf = random_walk(s, s.root());
        total += static_cast<double>(s.depth(leaf));
    }
    double mean = total / trees;
    CHECK(mean <= 4.0 * std::log2(1000.0));
}

TEST_CASE("capped walks abort without forgetting exploration") {
    search_tree t = complete_binary(4);
    exploration_session s(t, 9);
    CHECK_FALSE(capped_walk(s, s.root(), 0).has_value());  // immediate abort
    std::uint64_t paid = s.cost();
    CHECK(paid == 0);

    auto aborted = capped_walk(s, s.root(), 2);
    CHECK_FALSE(aborted.has_value());
    CHECK(s.cost() >= 2);  // two steps were taken and stay paid

    auto full = capped_walk(s, s.root(), 4);
    REQUIRE(full.has_value());
    CHECK(s.depth(*full) == 4);
}

TEST_CASE("capped walks return shallow leaves while deep branches abort") {
    // Root with a leaf at depth 1 and a binary branch running to depth 8.
    tree_builder builder;
    node_id root = builder.add_root();
    builder.add_child(root, color_id{999});
    node_id spine = builder.add_child(root);
    color_id next = 0;
    for (int d = 2; d <= 8; ++d) {
        builder.add_child(spine, next++);
        node_id deeper = builder.add_child(spine);
        if (d == 8) {
            builder.set_color(deeper, next++);
            break;
        }
        spine = deeper;
    }
    search_tree t = builder.build();

    exploration_session s(t, 5);
    std::size_t cap = 3;
    std::size_t shallow = 0, aborted = 0, deep_returned = 0;
    for (int i = 0; i < 200; ++i) {
        auto l = capped_walk(s, s.root(), cap);
        if (!l) {
            ++aborted;
        } else if (s.depth(*l) <= cap) {
            ++shallow;
        } else {
            ++deep_returned;
        }
    }
    CHECK(deep_returned == 0);  // nothing beyond the cap can be returned
    CHECK(shallow > 0);         // the depth-1 leaf and spine leaves still surface
    CHECK(aborted > 0);         // walks that stay on the spine give up
}

TEST_CASE("mc parameter derivation") {
    CHECK(mc_params(0.25, 0).e == 2);
    CHECK(mc_params(0.5, 0).e == 1);
    CHECK(mc_params(0.125, 0).e == 3);
    CHECK_THROWS_AS(mc_params(0.0, 0), strategy_error);
    CHECK_THROWS_AS(mc_params(1.0, 0), strategy_error);
}

TEST_CASE("mc on disjoint colors never matches") {
    auto pair = disjoint_color_pair(1, 4);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto [s1, s2] = sessions(pair.first, pair.second, seed);
        verdict v = mc_bidirectional(s1, s2, mc_params(0.25, seed));
        CHECK(v.kind == verdict_kind::probably_not_isomorphic);
    }
}

TEST_CASE("mc matches equal single leaves at zero cost") {
    search_tree a = load_tree("tree 1\n0 - 3\n");
    search_tree b = load_tree("tree 1\n0 - 3\n");
    auto [s1, s2] = sessions(a, b, 1);
    verdict v = mc_bidirectional(s1, s2, mc_params(0.5, 1));
    CHECK(v.kind == verdict_kind::match_found);
    CHECK(v.cost1 == 0);
    CHECK(v.cost2 == 0);
}

namespace {

// Abstract enumeration of the first two iterations on a two-leaf instance
// with identical color sets {0,1} in both trees: walks are fair coins, the
// stored sets keep one leaf per color, matches fire on any cross collision.
// Returns the probability that a match is found within two iterations.
double enumerate_two_iteration_match_probability() {
    int match = 0, total = 0;
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int b1 = 0; b1 < 2; ++b1) {
            for (int a2 = 0; a2 < 2; ++a2) {
                for (int b2 = 0; b2 < 2; ++b2) {
                    ++total;
                    if (a1 == b1) {
                        ++match;  // iteration 1 cross match
                        continue;
                    }
                    // L1 = {a1}, L2 = {b1}
                    if (a2 == b2 || a2 == b1 || b2 == a1) ++match;
                    // otherwise both walks repeat stored colors: a counter
                    // event, no verdict yet
                }
            }
        }
    }
    return static_cast<double>(match) / total;
}

}  // namespace

TEST_CASE("mc iteration semantics match the coin enumeration") {
    double expected = enumerate_two_iteration_match_probability();
    CHECK(expected == doctest::Approx(7.0 / 8.0));

    search_tree a = complete_binary(1);
    search_tree b = iso_shuffle(a, 123);
    const int trials = 4000;
    int matched_fast = 0;
    for (int i = 0; i < trials; ++i) {
        auto [s1, s2] = sessions(a, b, 7000 + i);
        verdict v = mc_bidirectional(s1, s2, mc_params(0.125, i));
        if (v.stats.iterations <= 2) {
            // within two iterations the only reachable verdict is a match
            CHECK(v.kind == verdict_kind::match_found);
            ++matched_fast;
        }
    }
    double freq = static_cast<double>(matched_fast) / trials;
    double sd = std::sqrt(expected * (1 - expected) / trials);
    CHECK(freq > expected - 4 * sd);
    CHECK(freq < expected + 4 * sd);
}

TEST_CASE("mc soundness: every match carries equal revealed colors") {
    orbit_tree_spec spec;
    spec.target_size = 60;
    spec.duplication_prob = 0.4;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        search_tree a = orbit_tree(spec, seed);
        search_tree b = iso_shuffle(a, seed + 1);
        auto [s1, s2] = sessions(a, b, seed);
        verdict v = mc_bidirectional(s1, s2, mc_params(0.25, seed));
        if (v.kind == verdict_kind::match_found) {
            CHECK(*s1.color(v.leaf1) == *s2.color(v.leaf2));
            CHECK(a.leaf_color(v.leaf1) == b.leaf_color(v.leaf2));
        }
    }
}

TEST_CASE("budgeted mc doubles its budget schedule strictly") {
    auto pair = disjoint_color_pair(4, 77);
    auto [s1, s2] = sessions(pair.first, pair.second, 5);
    verdict v = mc_budgeted(s1, s2, mc_params(0.125, 5));
    CHECK(v.kind == verdict_kind::probably_not_isomorphic);
    REQUIRE(!v.stats.budget_schedule.empty());
    CHECK(v.stats.budget_schedule[0] == 2);
    for (std::size_t i = 1; i < v.stats.budget_schedule.size(); ++i)
        CHECK(v.stats.budget_schedule[i] == 2 * v.stats.budget_schedule[i - 1]);
    CHECK(v.stats.restarts == v.stats.budget_schedule.size() - 1);
}

TEST_CASE("budgeted mc matches single-leaf pairs in round one") {
    search_tree a = load_tree("tree 1\n0 - 6\n");
    search_tree b = load_tree("tree 1\n0 - 6\n");
    auto [s1, s2] = sessions(a, b, 3);
    verdict v = mc_budgeted(s1, s2, mc_params(0.125, 3));
    CHECK(v.kind == verdict_kind::match_found);
    CHECK(v.cost1 + v.cost2 == 0);
    CHECK(v.stats.budget_schedule.size() == 1);
}

TEST_CASE("budgeted mc finds matches on shuffled pairs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        search_tree a = complete_binary(6);
        search_tree b = iso_shuffle(a, seed);
        auto [s1, s2] = sessions(a, b, seed);
        verdict v = mc_budgeted(s1, s2, mc_params(0.125, seed));
        if (v.kind == verdict_kind::match_found)
            CHECK(a.leaf_color(v.leaf1) == b.leaf_color(v.leaf2));
    }
}

TEST_CASE("bfs_subtree on standard cases") {
    search_tree t = complete_binary(3);

    exploration_session full(t, 1);
    auto r = bfs_subtree(full, full.root());
    REQUIRE(r.has_value());
    CHECK(r->frontier.size() == 8);
    CHECK(r->explored == 14);

    exploration_session zero(t, 1);
    auto r0 = bfs_subtree(zero, zero.root(), 0, 100);
    REQUIRE(r0.has_value());
    CHECK(r0->frontier == std::vector<node_id>{zero.root()});
    CHECK(r0->explored == 0);
    CHECK(zero.cost() == 0);

    exploration_session capped(t, 1);
    CHECK_FALSE(bfs_subtree(capped, capped.root(), k_unbounded, 5).has_value());
    CHECK(capped.cost() <= 6);

    // a leaf's subtree is the leaf itself
    exploration_session leafy(t, 1);
    node_id leaf = random_walk(leafy, leafy.root());
    auto rl = bfs_subtree(leafy, leaf);
    REQUIRE(rl.has_value());
    CHECK(rl->frontier == std::vector<node_id>{leaf});
}

TEST_CASE("bfs_subtree respects its cost limit exactly") {
    search_tree t = complete_binary(4);
    for (std::size_t limit = 0; limit <= 30; ++limit) {
        exploration_session s(t, limit);
        auto r = bfs_subtree(s, s.root(), k_unbounded, limit);
        if (r) {
            CHECK(r->explored <= limit);
        } else {
            CHECK(s.cost() <= limit + 1);
        }
    }
}

TEST_CASE("split costs on complete binary pairs") {
    search_tree a = complete_binary(4);
    search_tree b = iso_shuffle(a, 8);
    node_id v = a.children(a.children(a.root())[0])[0];  // level 2
    split sp{1, v, 2};
    split_cost c = compute_split_cost(a, b, sp);
    CHECK(c.s1 == 7);
    CHECK(c.s2 == 7);
    CHECK(is_balanced(a, b, sp));  // max 7 <= 8*sqrt(31)

    split root_split{1, a.root(), 0};
    split_cost rc = compute_split_cost(a, b, root_split);
    CHECK(rc.s1 == 1);
    CHECK(rc.s2 == 31);

    CHECK_THROWS_AS(compute_split_cost(a, b, split{1, v, 3}), strategy_error);
}

TEST_CASE("root splits of large complete trees are unbalanced") {
    // at height 2h the root subtree outgrows the balanced bound once h >= 3
    for (std::size_t h : {2u, 3u, 4u}) {
        search_tree a = complete_binary(2 * h);
        search_tree b = iso_shuffle(a, h);
        split sp{1, a.root(), 0};
        bool balanced = is_balanced(a, b, sp);
        if (h >= 3)
            CHECK_FALSE(balanced);
        else
            CHECK(balanced);
    }
}

TEST_CASE("asymmetric level-1 degrees force the mismatch cost case") {
    search_tree a = load_tree(
        "tree 4\n0 - -\n1 0 1\n2 0 2\n3 0 3\n");  // root degree 3
    search_tree b = complete_binary(2);
    node_id v = b.children(b.root())[0];
    split sp{2, v, 1};
    split_cost c = compute_split_cost(a, b, sp);
    CHECK(c.s1 == 4);   // ball of radius 1 in the degree-3 tree
    CHECK(c.s2 == c.s1);  // truncations differ, so the mismatch case applies

    split leaf_split{1, a.children(a.root())[0], 1};
    split_cost cl = compute_split_cost(a, b, leaf_split);
    CHECK(cl.s1 == 3);  // ball of radius 1 in the binary tree
    CHECK(cl.s2 == cl.s1);
}

TEST_CASE("single-leaf pairs: the root split is balanced") {
    search_tree a = load_tree("tree 1\n0 - 1\n");
    search_tree b = load_tree("tree 1\n0 - 1\n");
    CHECK(is_balanced(a, b, split{1, a.root(), 0}));
}

TEST_CASE("bidirectional search with a split finds forced collisions") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        search_tree a = complete_binary(4);
        search_tree b = iso_shuffle(a, seed);
        auto [s1, s2] = sessions(a, b, seed);
        node_id v = a.children(a.children(a.root())[0])[0];
        verdict v4 = bidirectional_with_split(s1, s2, split{1, v, 2}, {seed});
        REQUIRE(v4.kind == verdict_kind::match_found);
        CHECK(a.leaf_color(v4.leaf1) == b.leaf_color(v4.leaf2));
    }
}

TEST_CASE("bidirectional search accepts splits in either tree") {
    search_tree a = complete_binary(3);
    search_tree b = iso_shuffle(a, 2);
    auto [s1, s2] = sessions(a, b, 9);
    // explore b far enough to name a level-1 node
    auto ball = bfs_subtree(s2, s2.root(), 1, k_unbounded);
    node_id v = ball->frontier[0];
    verdict v4 = bidirectional_with_split(s1, s2, split{2, v, 1}, {11});
    REQUIRE(v4.kind == verdict_kind::match_found);
    CHECK(a.leaf_color(v4.leaf1) == b.leaf_color(v4.leaf2));
}

TEST_CASE("bidirectional search reports disjoint colors as non-isomorphic") {
    auto pair = disjoint_color_pair(3, 5);
    auto [s1, s2] = sessions(pair.first, pair.second, 5);
    node_id v = pair.first.children(pair.first.root())[0];
    verdict v4 = bidirectional_with_split(s1, s2, split{1, v, 1}, {5});
    CHECK(v4.kind == verdict_kind::not_isomorphic);
}

TEST_CASE("bidirectional search stops before walking when balls differ") {
    search_tree a = complete_binary(3);
    search_tree b = load_tree(
        "tree 4\n0 - -\n1 0 1\n2 0 2\n3 0 3\n");  // degree-3 root
    auto [s1, s2] = sessions(a, b, 1);
    node_id v = a.children(a.root())[0];
    verdict v4 = bidirectional_with_split(s1, s2, split{1, v, 1}, {1});
    CHECK(v4.kind == verdict_kind::not_isomorphic);
    CHECK(v4.stats.iterations == 0);  // no walk phase
}

TEST_CASE("bidirectional search validates the split") {
    search_tree a = complete_binary(3);
    search_tree b = iso_shuffle(a, 1);
    auto [s1, s2] = sessions(a, b, 1);
    node_id v = a.children(a.root())[0];  // level 1
    CHECK_THROWS_AS(bidirectional_with_split(s1, s2, split{1, v, 2}, {1}), strategy_error);
    CHECK_THROWS_AS(bidirectional_with_split(s1, s2, split{3, v, 1}, {1}), strategy_error);
}

TEST_CASE("deterministic walk mode still finds collisions") {
    search_tree a = complete_binary(4);
    search_tree b = iso_shuffle(a, 4);
    auto [s1, s2] = sessions(a, b, 4);
    node_id v = a.children(a.children(a.root())[0])[0];
    bidi_options opt;
    opt.seed = 4;
    opt.deterministic_walks = true;
    verdict v4 = bidirectional_with_split(s1, s2, split{1, v, 2}, opt);
    CHECK(v4.kind == verdict_kind::match_found);
}

TEST_CASE("split search rejects non-fresh sessions") {
    search_tree a = complete_binary(2);
    search_tree b = iso_shuffle(a, 1);
    auto [s1, s2] = sessions(a, b, 1);
    (void)s1.next_child(s1.root());
    CHECK_THROWS_AS(lv_balanced_splits(s1, s2, 1), strategy_error);
}

TEST_CASE("split search settles shape mismatches at the synced sweep") {
    search_tree a = complete_binary(3);
    search_tree b = load_tree(
        "tree 5\n"
        "0 - -\n"
        "1 0 50\n"
        "2 0 -\n"
        "3 2 51\n"
        "4 2 52\n");  // leaf at level 1
    auto [s1, s2] = sessions(a, b, 2);
    split_search_result r = lv_balanced_splits(s1, s2, 2);
    CHECK_FALSE(r.found.has_value());
}

TEST_CASE("split search returns a root split for single-leaf pairs") {
    search_tree a = load_tree("tree 1\n0 - 4\n");
    search_tree b = load_tree("tree 1\n0 - 4\n");
    auto [s1, s2] = sessions(a, b, 6);
    split_search_result r = lv_balanced_splits(s1, s2, 6);
    REQUIRE(r.found.has_value());
    CHECK(r.found->level == 0);
    CHECK(r.found->v == a.root());
    CHECK(r.terminating_budget == 1);
}

TEST_CASE("split search mostly returns balanced splits within budget") {
    std::size_t balanced = 0, runs = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        search_tree a = complete_binary(8);
        search_tree b = iso_shuffle(a, seed);
        auto [s1, s2] = sessions(a, b, seed);
        split_search_result r = lv_balanced_splits(s1, s2, mix_seed(seed, 3));
        REQUIRE(r.found.has_value());  // isomorphic inputs never report mismatch
        ++runs;
        if (is_balanced(a, b, *r.found)) ++balanced;
        split_cost c = compute_split_cost(a, b, *r.found);
        CHECK(c.s2 <= r.terminating_budget);
    }
    CHECK(static_cast<double>(balanced) / runs >= 0.70);
}

TEST_CASE("probe pairs take strictly alternating paid queries") {
    search_tree t = complete_binary(6);
    exploration_session s1(t, 1), s2(t, 2);
    auto b1 = bfs_subtree(s1, s1.root(), 2, k_unbounded);
    auto b2 = bfs_subtree(s2, s2.root(), 2, k_unbounded);
    bfs_probe p1(s1, b1->frontier[0], 1000);
    bfs_probe p2(s2, b2->frontier[1], 1000);
    std::uint64_t base1 = s1.cost(), base2 = s2.cost();
    while (p1.running() && p2.running()) {
        std::uint64_t before1 = s1.cost();
        p1.step();
        CHECK(s1.cost() - before1 <= 1);
        std::uint64_t mid_gap = (s1.cost() - base1) - (s2.cost() - base2);
        CHECK(mid_gap <= 1);
        std::uint64_t before2 = s2.cost();
        p2.step();
        CHECK(s2.cost() - before2 <= 1);
    }
}

TEST_CASE("lv test is exact on isomorphic and disjoint instances") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        search_tree a = complete_binary(6);
        search_tree b = iso_shuffle(a, seed);
        auto [s1, s2] = sessions(a, b, seed);
        verdict v = lv_iso(s1, s2, seed);
        REQUIRE(v.kind == verdict_kind::match_found);
        CHECK(a.leaf_color(v.leaf1) == b.leaf_color(v.leaf2));
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto pair = disjoint_color_pair(6, seed);
        auto [s1, s2] = sessions(pair.first, pair.second, seed);
        verdict v = lv_iso(s1, s2, seed);
        CHECK(v.kind == verdict_kind::not_isomorphic);
    }
}

TEST_CASE("lv and det settle uneven pruned instances exactly") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto [a, b] = pruned_pair(3, 0.35, mix_seed(seed, 61), true);
        auto [s1, s2] = sessions(a, b, seed);
        verdict v = lv_iso(s1, s2, seed);
        REQUIRE(v.kind == verdict_kind::match_found);
        CHECK(a.leaf_color(v.leaf1) == b.leaf_color(v.leaf2));

        auto [d1, d2] = sessions(a, b, seed + 500);
        verdict vd = deterministic_baseline(d1, d2);
        REQUIRE(vd.kind == verdict_kind::match_found);

        auto [x, y] = pruned_pair(3, 0.35, mix_seed(seed, 62), false);
        auto [n1, n2] = sessions(x, y, seed);
        CHECK(lv_iso(n1, n2, seed).kind == verdict_kind::not_isomorphic);
    }
}

TEST_CASE("lv separates a lone leaf from anything taller") {
    search_tree a = load_tree("tree 1\n0 - 5\n");
    search_tree b = complete_binary(2);
    auto [s1, s2] = sessions(a, b, 3);
    verdict v = lv_iso(s1, s2, 3);
    CHECK(v.kind == verdict_kind::not_isomorphic);
}

TEST_CASE("lv test handles symmetric random instances") {
    orbit_tree_spec spec;
    spec.target_size = 400;
    spec.max_degree = 4;
    spec.duplication_prob = 0.35;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        search_tree a = orbit_tree(spec, seed);
        search_tree b = iso_shuffle(a, mix_seed(seed, 9));
        auto [s1, s2] = sessions(a, b, seed);
        verdict v = lv_iso(s1, s2, seed);
        REQUIRE(v.kind == verdict_kind::match_found);
        CHECK(a.leaf_color(v.leaf1) == b.leaf_color(v.leaf2));
    }
}

TEST_CASE("strategies reach ground truth only through the oracle") {
    search_tree a = complete_binary(5);
    search_tree b = iso_shuffle(a, 13);
    for (int strat = 0; strat < 4; ++strat) {
        testing::counting_source wrapped_a(a);
        testing::counting_source wrapped_b(b);
        exploration_session s1(wrapped_a, mix_seed(strat, 1));
        exploration_session s2(wrapped_b, mix_seed(strat, 2));
        verdict v = [&] {
            switch (strat) {
                case 0: return mc_bidirectional(s1, s2, mc_params(0.125, 5));
                case 1: return mc_budgeted(s1, s2, mc_params(0.125, 5));
                case 2: return lv_iso(s1, s2, 5);
                default: return deterministic_baseline(s1, s2);
            }
        }();
        (void)v;
        CHECK(wrapped_a.protocol_ok());
        CHECK(wrapped_b.protocol_ok());
        CHECK(wrapped_a.distinct_children() == s1.cost());
        CHECK(wrapped_b.distinct_children() == s2.cost());
    }
}

TEST_CASE("deterministic baseline: exhaustion costs and verdicts") {
    auto pair = disjoint_color_pair(6, 17);
    auto [s1, s2] = sessions(pair.first, pair.second, 17);
    verdict v = deterministic_baseline(s1, s2);
    CHECK(v.kind == verdict_kind::not_isomorphic);
    std::uint64_t full = (1u << 7) - 2;  // whole tree minus root
    CHECK((v.cost1 >= full || v.cost2 >= full));

    search_tree a = load_tree("tree 1\n0 - 2\n");
    search_tree b = load_tree("tree 1\n0 - 2\n");
    auto [l1, l2] = sessions(a, b, 1);
    verdict vb = deterministic_baseline(l1, l2);
    CHECK(vb.kind == verdict_kind::match_found);
    CHECK(vb.cost1 + vb.cost2 == 0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        search_tree x = complete_binary(5);
        search_tree y = iso_shuffle(x, seed);
        auto [d1, d2] = sessions(x, y, seed);
        verdict vm = deterministic_baseline(d1, d2);
        REQUIRE(vm.kind == verdict_kind::match_found);
        CHECK(x.leaf_color(vm.leaf1) == y.leaf_color(vm.leaf2));
    }
}
