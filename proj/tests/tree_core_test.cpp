#include <doctest.h>

#include <set>

#include "symtree/generators.hpp"
#include "symtree/search_tree.hpp"
#include "symtree/seeding.hpp"
#include "symtree/session.hpp"
#include "symtree/tree_io.hpp"
#include "test_support.hpp"

using namespace symtree;

TEST_CASE("tree format: single-node document") {
    search_tree t = load_tree("tree 1\n0 - 7\n");
    CHECK(t.size() == 1);
    CHECK(t.is_leaf(t.root()));
    CHECK(t.leaf_color(t.root()) == 7);
}

TEST_CASE("tree format: root with two leaf children") {
    search_tree t = load_tree(
        "# two-leaf tree\n"
        "tree 3\n"
        "0 - -\n"
        "1 0 1\n"
        "2 0 2\n");
    CHECK(t.size() == 3);
    CHECK(t.degree(t.root()) == 2);
    CHECK(t.leaf_color(t.children(t.root())[0]) == 1);
    CHECK(t.leaf_color(t.children(t.root())[1]) == 2);
    CHECK(testing::same_ordered_tree(t, complete_binary(1)) == false);  // colors 1,2 vs 0,1
}

TEST_CASE("tree format: rejects unary nodes") {
    const char* doc =
        "tree 3\n"
        "0 - -\n"
        "5 0 -\n"
        "6 5 3\n";
    CHECK_THROWS_WITH_AS(load_tree(doc), doctest::Contains("unary"), tree_error);
}

TEST_CASE("tree format: malformed inputs") {
    CHECK_THROWS_AS(load_tree(""), format_error);                           // no header
    CHECK_THROWS_AS(load_tree("tree 2\n0 - 1\n"), format_error);            // count mismatch
    CHECK_THROWS_AS(load_tree("tree 1\n0 -\n"), format_error);              // short line
    CHECK_THROWS_AS(load_tree("tree 1\n0 - x\n"), format_error);            // bad integer
    CHECK_THROWS_AS(load_tree("tree 2\n0 - 1\n1 - 2\n"), format_error);     // two roots
    CHECK_THROWS_AS(load_tree("tree 1\n0 9 1\n"), format_error);            // unknown parent
    CHECK_THROWS_AS(load_tree("tree 2\n0 - 1\n0 0 2\n"), format_error);     // duplicate id
    // colored internal node / uncolored leaf
    CHECK_THROWS_AS(load_tree("tree 3\n0 - 5\n1 0 1\n2 0 2\n"), tree_error);
    CHECK_THROWS_AS(load_tree("tree 3\n0 - -\n1 0 -\n2 0 2\n"), tree_error);
    // cycle among non-root nodes
    CHECK_THROWS_AS(load_tree("tree 4\n0 - -\n1 0 1\n2 3 -\n3 2 -\n"), tree_error);
}

TEST_CASE("save then load reproduces the tree up to renaming") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        orbit_tree_spec spec;
        spec.target_size = 60;
        spec.duplication_prob = 0.4;
        search_tree t = orbit_tree(spec, seed);
        search_tree back = load_tree(save_tree(t));
        CHECK(testing::same_ordered_tree(t, back));
    }
    search_tree leaf = load_tree("tree 1\n0 - 9\n");
    CHECK(testing::same_ordered_tree(leaf, load_tree(save_tree(leaf))));
}

TEST_CASE("metrics on standard instances") {
    tree_metrics m3 = metrics(complete_binary(3));
    CHECK(m3.size == 15);
    CHECK(m3.leaf_count == 8);
    CHECK(m3.height == 3);
    CHECK(m3.max_degree == 2);

    tree_metrics leaf = metrics(complete_binary(0));
    CHECK(leaf.size == 1);
    CHECK(leaf.leaf_count == 1);
    CHECK(leaf.height == 0);
    CHECK(leaf.max_degree == 0);

    tree_metrics m10 = metrics(complete_binary(10));
    CHECK(m10.size == 2047);
    CHECK(m10.leaf_count == 1024);
}

TEST_CASE("next_child reveals children in order, then stays exhausted") {
    search_tree t = complete_binary(1);
    exploration_session s(t, 42);
    CHECK(s.cost() == 0);

    auto first = s.next_child(s.root());
    REQUIRE(first.has_value());
    CHECK(*first == t.children(t.root())[0]);
    CHECK(s.cost() == 1);

    auto second = s.next_child(s.root());
    REQUIRE(second.has_value());
    CHECK(*second == t.children(t.root())[1]);
    CHECK(s.cost() == 2);

    for (int i = 0; i < 3; ++i) CHECK_FALSE(s.next_child(s.root()).has_value());
    CHECK(s.cost() == 2);

    // leaf: no children at all
    CHECK_FALSE(s.next_child(*first).has_value());
    CHECK(s.cost() == 2);
}

TEST_CASE("oracle calls on unexplored nodes are contract violations") {
    search_tree t = complete_binary(2);
    exploration_session s(t, 1);
    node_id hidden = t.children(t.children(t.root())[0])[0];
    CHECK_THROWS_AS(s.next_child(hidden), session_error);
    CHECK_THROWS_AS(s.random_child(hidden), session_error);
    CHECK_THROWS_AS((void)s.degree(hidden), session_error);
}

TEST_CASE("random_child is uniform and free on repeats") {
    search_tree t = complete_binary(1);
    exploration_session s(t, 12345);
    std::size_t left = 0;
    const std::size_t draws = 10000;
    node_id first_child = t.children(t.root())[0];
    for (std::size_t i = 0; i < draws; ++i) {
        auto c = s.random_child(s.root());
        REQUIRE(c.has_value());
        if (*c == first_child) ++left;
    }
    double freq = static_cast<double>(left) / draws;
    CHECK(freq > 0.47);
    CHECK(freq < 0.53);
    CHECK(s.cost() == 2);  // only two distinct children ever explored

    // leaf input yields nothing
    CHECK_FALSE(s.random_child(first_child).has_value());
    CHECK(s.cost() == 2);
}

namespace {

// Random oracle call sequence; the explored set is tracked independently
// from the returned ids and compared against the session's cost counter.
void run_random_sequence(const search_tree& t, std::uint64_t seed, std::size_t ops,
                         std::vector<std::pair<int, node_id>>* transcript = nullptr) {
    testing::counting_source counted(t);
    exploration_session s(counted, seed);
    std::mt19937_64 driver(mix_seed(seed, 99));
    std::vector<node_id> known{s.root()};
    std::set<node_id> seen{s.root()};
    for (std::size_t i = 0; i < ops; ++i) {
        node_id v = known[driver() % known.size()];
        bool use_next = driver() % 2 == 0;
        auto c = use_next ? s.next_child(v) : s.random_child(v);
        if (transcript) transcript->push_back({c ? (use_next ? 1 : 2) : 0, c.value_or(0)});
        if (c && seen.insert(*c).second) known.push_back(*c);
        REQUIRE(s.cost() == seen.size() - 1);
        REQUIRE(s.explored_count() == seen.size());
    }
    REQUIRE(counted.protocol_ok());
    REQUIRE(counted.distinct_children() == s.cost());
}

}  // namespace

TEST_CASE("cost equals distinct non-root explorations under random call sequences") {
    search_tree m3 = complete_binary(3);
    orbit_tree_spec spec;
    spec.target_size = 80;
    spec.duplication_prob = 0.3;
    search_tree orb = orbit_tree(spec, 7);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        run_random_sequence(m3, seed, 40);
        run_random_sequence(orb, seed, 60);
    }
}

TEST_CASE("seeded replay is identical") {
    search_tree t = complete_binary(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<std::pair<int, node_id>> a, b;
        run_random_sequence(t, seed, 80, &a);
        run_random_sequence(t, seed, 80, &b);
        REQUIRE(a == b);
    }
}
