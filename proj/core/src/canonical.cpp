#include "symtree/canonical.hpp"

#include <algorithm>
#include <sstream>

namespace symtree {

namespace {

void append_be64(std::string& out, std::uint64_t x) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((x >> shift) & 0xff));
}

std::string leaf_bytes(color_id c) {
    std::string out(1, 'L');
    append_be64(out, c);
    return out;
}

std::string internal_bytes(std::vector<std::string> child_codes) {
    std::sort(child_codes.begin(), child_codes.end());
    std::string out(1, 'I');
    append_be64(out, child_codes.size());
    for (const std::string& code : child_codes) {
        append_be64(out, code.size());
        out += code;
    }
    return out;
}

std::string code_rec(const search_tree& t, node_id v) {
    if (t.is_leaf(v)) return leaf_bytes(t.leaf_color(v));
    std::vector<std::string> kids;
    kids.reserve(t.degree(v));
    for (node_id c : t.children(v)) kids.push_back(code_rec(t, c));
    return internal_bytes(std::move(kids));
}

// Truncated code over any node structure exposing degree/color/children.
template <typename DegreeFn, typename ColorFn, typename ChildrenFn, typename ExpandedFn, typename Node>
std::string truncated_rec(Node v, std::size_t depth, std::size_t h, DegreeFn&& deg, ColorFn&& col,
                          ChildrenFn&& kids_of, ExpandedFn&& expanded) {
    if (deg(v) == 0) return leaf_bytes(col(v));
    if (depth == h) return std::string(1, 'F');
    if (!expanded(v)) throw tree_error("prefix incomplete above the frontier");
    std::vector<std::string> kids;
    for (auto c : kids_of(v))
        kids.push_back(truncated_rec(c, depth + 1, h, deg, col, kids_of, expanded));
    return internal_bytes(std::move(kids));
}

}  // namespace

ahu_code ahu_code_of(const search_tree& t, node_id v) { return ahu_code{code_rec(t, v)}; }

ahu_code ahu_code_of(const search_tree& t) { return ahu_code_of(t, t.root()); }

explored_prefix explored_prefix::from_session(const exploration_session& s) {
    explored_prefix p;
    std::vector<node_id> order{s.root()};
    p.nodes_.push_back({});
    for (std::size_t i = 0; i < order.size(); ++i) {
        node_id v = order[i];
        p.nodes_[i].degree = s.degree(v);
        p.nodes_[i].color = s.color(v);
        p.nodes_[i].expanded = s.children_fully_known(v);
        for (node_id c : s.known_children(v)) {
            std::size_t ci = p.nodes_.size();
            p.nodes_.push_back({});
            p.nodes_[i].children.push_back(ci);
            order.push_back(c);
        }
    }
    return p;
}

ahu_code truncated_code(const explored_prefix& p, std::size_t h) {
    const auto& nodes = p.nodes();
    return ahu_code{truncated_rec(
        p.root(), std::size_t{0}, h, [&](std::size_t v) { return nodes[v].degree; },
        [&](std::size_t v) { return *nodes[v].color; },
        [&](std::size_t v) -> const std::vector<std::size_t>& { return nodes[v].children; },
        [&](std::size_t v) { return nodes[v].expanded; })};
}

ahu_code truncated_code(const search_tree& t, std::size_t h) {
    return ahu_code{truncated_rec(
        t.root(), std::size_t{0}, h, [&](node_id v) { return t.degree(v); },
        [&](node_id v) { return t.leaf_color(v); },
        [&](node_id v) -> const std::vector<node_id>& { return t.children(v); },
        [&](node_id) { return true; })};
}

bool truncated_iso(const explored_prefix& a, const explored_prefix& b, std::size_t h) {
    return truncated_code(a, h) == truncated_code(b, h);
}

namespace {

// Per-tree memo of subtree codes, filled on demand.
class code_table {
public:
    explicit code_table(const search_tree& t) : t_(&t), codes_(t.size()) {}

    const std::string& of(node_id v) {
        std::string& slot = codes_[v];
        if (slot.empty()) {
            if (t_->is_leaf(v)) {
                slot = leaf_bytes(t_->leaf_color(v));
            } else {
                std::vector<std::string> kids;
                kids.reserve(t_->degree(v));
                for (node_id c : t_->children(v)) kids.push_back(of(c));
                slot = internal_bytes(std::move(kids));
            }
        }
        return slot;
    }

private:
    const search_tree* t_;
    std::vector<std::string> codes_;
};

std::vector<node_id> root_path(const search_tree& t, node_id v) {
    std::vector<node_id> path{v};
    while (auto p = t.parent(path.back())) path.push_back(*p);
    std::reverse(path.begin(), path.end());
    return path;
}

// Zips two code-identical subtrees into the mapping, pairing children by
// sorted code order.
void map_subtree(const search_tree& t1, node_id a, const search_tree& t2, node_id b,
                 code_table& c1, code_table& c2, node_mapping& out) {
    out[a] = b;
    auto by_code = [](const search_tree& t, code_table& ct, node_id v) {
        std::vector<std::pair<std::string, node_id>> kids;
        for (node_id c : t.children(v)) kids.emplace_back(ct.of(c), c);
        std::sort(kids.begin(), kids.end());
        return kids;
    };
    auto k1 = by_code(t1, c1, a);
    auto k2 = by_code(t2, c2, b);
    for (std::size_t i = 0; i < k1.size(); ++i)
        map_subtree(t1, k1[i].second, t2, k2[i].second, c1, c2, out);
}

}  // namespace

std::optional<node_mapping> constrained_iso(const search_tree& t1, node_id l1,
                                            const search_tree& t2, node_id l2) {
    if (!t1.is_leaf(l1) || !t2.is_leaf(l2)) throw tree_error("constrained_iso: not a leaf");
    if (t1.leaf_color(l1) != t2.leaf_color(l2)) return std::nullopt;

    auto path1 = root_path(t1, l1);
    auto path2 = root_path(t2, l2);
    if (path1.size() != path2.size()) return std::nullopt;  // depths must agree

    code_table c1(t1), c2(t2);
    node_mapping out;
    out.reserve(t1.size());

    // The image of each path node is forced; off-path siblings must agree
    // as code multisets level by level.
    for (std::size_t i = 0; i + 1 < path1.size(); ++i) {
        node_id u1 = path1[i], u2 = path2[i];
        node_id next1 = path1[i + 1], next2 = path2[i + 1];
        out[u1] = u2;
        std::vector<std::pair<std::string, node_id>> off1, off2;
        for (node_id c : t1.children(u1))
            if (c != next1) off1.emplace_back(c1.of(c), c);
        for (node_id c : t2.children(u2))
            if (c != next2) off2.emplace_back(c2.of(c), c);
        if (off1.size() != off2.size()) return std::nullopt;
        std::sort(off1.begin(), off1.end());
        std::sort(off2.begin(), off2.end());
        for (std::size_t k = 0; k < off1.size(); ++k)
            if (off1[k].first != off2[k].first) return std::nullopt;
        for (std::size_t k = 0; k < off1.size(); ++k)
            map_subtree(t1, off1[k].second, t2, off2[k].second, c1, c2, out);
    }
    out[l1] = l2;
    return out;
}

bool verify_mapping(const search_tree& t1, const search_tree& t2, const node_mapping& map,
                    node_id l1, node_id l2) {
    if (t1.size() != t2.size() || map.size() != t1.size()) return false;
    auto it = map.find(l1);
    if (it == map.end() || it->second != l2) return false;
    std::vector<char> hit(t2.size(), 0);
    for (const auto& [a, b] : map) {
        if (b >= t2.size() || hit[b]) return false;
        hit[b] = 1;
        if (t1.degree(a) != t2.degree(b)) return false;
        if (t1.is_leaf(a) && t1.leaf_color(a) != t2.leaf_color(b)) return false;
        for (node_id c : t1.children(a)) {
            auto cit = map.find(c);
            if (cit == map.end()) return false;
            if (!t2.parent(cit->second) || *t2.parent(cit->second) != b) return false;
        }
    }
    return true;
}

namespace {

std::vector<node_id> leaves_of(const search_tree& t) {
    std::vector<node_id> out;
    for (node_id v = 0; v < t.size(); ++v)
        if (t.is_leaf(v)) out.push_back(v);
    return out;
}

void check_pairs(const search_tree& ta, int ia, const search_tree& tb, int ib,
                 axiom_report& report) {
    auto la = leaves_of(ta);
    auto lb = leaves_of(tb);
    for (node_id a : la) {
        for (node_id b : lb) {
            if (ia == ib && a > b) continue;  // unordered within one tree
            if (ta.leaf_color(a) != tb.leaf_color(b)) continue;
            ++report.pairs_checked;
            auto map = constrained_iso(ta, a, tb, b);
            bool ok = map && verify_mapping(ta, tb, *map, a, b);
            if (!ok) {
                report.pass = false;
                report.violations.push_back({ia, a, ib, b, ta.leaf_color(a)});
            }
        }
    }
}

}  // namespace

axiom_report verify_axiom(const search_tree& t1, const search_tree* t2, std::size_t node_cap) {
    if (t1.size() > node_cap || (t2 && t2->size() > node_cap))
        throw resource_error("verify_axiom: tree above " + std::to_string(node_cap) + " nodes");
    axiom_report report;
    check_pairs(t1, 1, t1, 1, report);
    if (t2) {
        check_pairs(*t2, 2, *t2, 2, report);
        check_pairs(t1, 1, *t2, 2, report);
    }
    return report;
}

std::string describe(const axiom_violation& v) {
    std::ostringstream out;
    out << "color " << v.color << ": leaf " << v.leaf_a << " (tree " << v.tree_a << ") vs leaf "
        << v.leaf_b << " (tree " << v.tree_b << ") admits no color-preserving isomorphism";
    return out.str();
}

}  // namespace symtree
