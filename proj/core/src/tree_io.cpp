#include "symtree/tree_io.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace symtree {

namespace {

std::uint64_t parse_u64(const std::string& token, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw format_error("line " + std::to_string(line_no) + ": bad integer '" + token + "'");
    return value;
}

struct raw_line {
    std::uint64_t id;
    std::optional<std::uint64_t> parent;
    std::optional<color_id> color;
};

}  // namespace

search_tree load_tree(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::uint64_t declared_count = 0;
    std::vector<raw_line> rows;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens.size() != 2 || tokens[0] != "tree")
                throw format_error("line " + std::to_string(line_no) + ": expected 'tree <count>' header");
            declared_count = parse_u64(tokens[1], line_no);
            header_seen = true;
            continue;
        }
        if (tokens.size() != 3)
            throw format_error("line " + std::to_string(line_no) + ": expected '<id> <parent|-> <color|->'");
        raw_line row;
        row.id = parse_u64(tokens[0], line_no);
        if (tokens[1] != "-") row.parent = parse_u64(tokens[1], line_no);
        if (tokens[2] != "-") row.color = parse_u64(tokens[2], line_no);
        rows.push_back(row);
    }

    if (!header_seen) throw format_error("missing 'tree <count>' header");
    if (rows.size() != declared_count)
        throw format_error("header declares " + std::to_string(declared_count) + " nodes, found " +
                           std::to_string(rows.size()));

    // Dense renumbering in line order; line order of children defines ranks.
    std::unordered_map<std::uint64_t, node_id> index;
    index.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!index.emplace(rows[i].id, static_cast<node_id>(i)).second)
            throw format_error("duplicate node id " + std::to_string(rows[i].id));
    }

    std::vector<node_record> nodes(rows.size());
    std::optional<node_id> root;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        nodes[i].color = rows[i].color;
        if (!rows[i].parent) {
            if (root) throw format_error("multiple roots");
            root = static_cast<node_id>(i);
            continue;
        }
        auto it = index.find(*rows[i].parent);
        if (it == index.end())
            throw format_error("unknown parent id " + std::to_string(*rows[i].parent));
        nodes[i].parent = it->second;
        nodes[it->second].children.push_back(static_cast<node_id>(i));
    }
    if (!root) throw format_error("no root");
    return search_tree(std::move(nodes), *root);
}

search_tree load_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_tree(buf.str());
}

std::string save_tree(const search_tree& t) {
    // BFS renumbering: parents always precede children and sibling lines
    // appear in child-rank order.
    std::vector<node_id> order;
    order.reserve(t.size());
    std::vector<node_id> new_id(t.size(), 0);
    std::deque<node_id> queue{t.root()};
    while (!queue.empty()) {
        node_id v = queue.front();
        queue.pop_front();
        new_id[v] = static_cast<node_id>(order.size());
        order.push_back(v);
        for (node_id c : t.children(v)) queue.push_back(c);
    }

    std::ostringstream out;
    out << "tree " << t.size() << "\n";
    for (node_id v : order) {
        out << new_id[v] << ' ';
        if (auto p = t.parent(v)) {
            out << new_id[*p];
        } else {
            out << '-';
        }
        out << ' ';
        if (t.is_leaf(v)) {
            out << t.leaf_color(v);
        } else {
            out << '-';
        }
        out << "\n";
    }
    return out.str();
}

void save_tree_file(const search_tree& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw format_error("cannot write " + path);
    out << save_tree(t);
}

}  // namespace symtree
