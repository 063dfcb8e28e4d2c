#pragma once

// Ground-truth machinery for colored rooted trees: canonical codes whose
// equality coincides with color-preserving isomorphism, leaf-constrained
// isomorphism search, exhaustive verification of the invariance property
// (equal leaf colors imply a color-preserving isomorphism carrying one leaf
// to the other), and isomorphism of explored prefixes truncated at a level.
//
// Everything here is desk-scale validation gear for generators and
// strategies; none of it is consulted by the strategies themselves except
// through explored prefixes of their own sessions.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "symtree/search_tree.hpp"
#include "symtree/session.hpp"

namespace symtree {

// Canonical byte string for a rooted colored (sub)tree. Two subtrees have
// equal codes iff they are color-preserving isomorphic as rooted trees.
// Encoding is bit-exact across runs: leaves are 'L' plus the color in
// big-endian, internal nodes are 'I' plus a big-endian child count plus the
// length-prefixed child codes sorted bytewise, and frontier placeholders in
// truncated prefixes are a bare 'F'.
struct ahu_code {
    std::string bytes;

    friend bool operator==(const ahu_code&, const ahu_code&) = default;
    friend auto operator<=>(const ahu_code& a, const ahu_code& b) { return a.bytes <=> b.bytes; }
};

ahu_code ahu_code_of(const search_tree& t, node_id v);
ahu_code ahu_code_of(const search_tree& t);

// Snapshot of the explored part of a session: a connected rooted subtree
// whose nodes carry their revealed degree and, for leaves, their color.
class explored_prefix {
public:
    static explored_prefix from_session(const exploration_session& s);

    struct node {
        std::size_t degree = 0;
        std::optional<color_id> color;
        std::vector<std::size_t> children;  // indices into nodes()
        bool expanded = false;              // all children discovered
    };

    const std::vector<node>& nodes() const { return nodes_; }
    std::size_t root() const { return 0; }

private:
    std::vector<node> nodes_;
};

// Code of the tree truncated at level h: nodes at depth h with positive
// degree become unlabeled frontier placeholders, explored degree-0 nodes
// are leaves wherever they sit. Throws tree_error if the prefix is missing
// children strictly above the frontier.
ahu_code truncated_code(const explored_prefix& p, std::size_t h);
ahu_code truncated_code(const search_tree& t, std::size_t h);

bool truncated_iso(const explored_prefix& a, const explored_prefix& b, std::size_t h);

using node_mapping = std::unordered_map<node_id, node_id>;

// Color-preserving isomorphism t1 -> t2 mapping leaf l1 to leaf l2, if one
// exists. The image of the root-to-l1 path is forced onto the root-to-l2
// path; off-path siblings are matched by multisets of canonical codes.
std::optional<node_mapping> constrained_iso(const search_tree& t1, node_id l1,
                                            const search_tree& t2, node_id l2);

// Independent check of a returned mapping: bijection on nodes, preserves
// the child relation and leaf colors, and sends l1 to l2.
bool verify_mapping(const search_tree& t1, const search_tree& t2, const node_mapping& map,
                    node_id l1, node_id l2);

struct axiom_violation {
    int tree_a = 1;  // 1 or 2
    node_id leaf_a = 0;
    int tree_b = 1;
    node_id leaf_b = 0;
    color_id color = 0;
};

struct axiom_report {
    bool pass = true;
    std::vector<axiom_violation> violations;
    std::uint64_t pairs_checked = 0;
};

// Exhaustively checks the invariance property over every same-colored leaf
// pair within t1, within t2, and across the two trees when t2 is given.
// Desk scale only; throws resource_error above node_cap nodes per tree.
axiom_report verify_axiom(const search_tree& t1, const search_tree* t2 = nullptr,
                          std::size_t node_cap = 300);

std::string describe(const axiom_violation& v);

}  // namespace symtree
