#include "symtree/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace symtree {

graph graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw graph_error("negative vertex count");
    graph g;
    g.n = n;
    g.adj.resize(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw graph_error("vertex out of range: " + std::to_string(std::max(u, v)));
        if (u == v) throw graph_error("self-loop at vertex " + std::to_string(u));
        if (g.has_edge(u, v))
            throw graph_error("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
        g.edges.emplace_back(u, v);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

bool graph::has_edge(int u, int v) const {
    for (int w : adj[u])
        if (w == v) return true;
    return false;
}

namespace {

int parse_int(const std::string& token, std::size_t line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw graph_error("line " + std::to_string(line_no) + ": bad integer '" + token + "'");
    return value;
}

}  // namespace

graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    int n = 0, m = 0;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty() || tokens[0] == "c") continue;
        if (tokens[0] == "p") {
            if (header_seen) throw graph_error("duplicate header");
            if (tokens.size() != 4 || tokens[1] != "edge")
                throw graph_error("line " + std::to_string(line_no) + ": expected 'p edge <n> <m>'");
            n = parse_int(tokens[2], line_no);
            m = parse_int(tokens[3], line_no);
            header_seen = true;
            continue;
        }
        if (tokens[0] == "e") {
            if (!header_seen) throw graph_error("edge before header");
            if (tokens.size() != 3)
                throw graph_error("line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
            int u = parse_int(tokens[1], line_no);
            int v = parse_int(tokens[2], line_no);
            if (u < 1 || u > n || v < 1 || v > n)
                throw graph_error("line " + std::to_string(line_no) + ": vertex out of range");
            if (u == v) throw graph_error("line " + std::to_string(line_no) + ": self-loop");
            edges.emplace_back(u - 1, v - 1);
            continue;
        }
        throw graph_error("line " + std::to_string(line_no) + ": unknown record '" + tokens[0] + "'");
    }
    if (!header_seen) throw graph_error("missing 'p edge' header");
    if (static_cast<int>(edges.size()) != m)
        throw graph_error("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(edges.size()));
    return graph::from_edges(n, std::move(edges));
}

graph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw graph_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

coloring uniform_coloring(const graph& g) {
    coloring c;
    c.color_of.assign(g.n, 0);
    c.classes = g.n > 0 ? 1 : 0;
    return c;
}

namespace {

// Canonical renaming: colors become ranks of sorted signatures. Signatures
// contain only colors, never vertex ids, which keeps the renaming invariant
// under graph isomorphism.
coloring rank_by_signature(const std::vector<std::vector<int>>& sig) {
    std::map<std::vector<int>, int> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    int next = 0;
    for (auto& [key, value] : rank) value = next++;
    coloring out;
    out.color_of.reserve(sig.size());
    for (const auto& s : sig) out.color_of.push_back(rank.at(s));
    out.classes = next;
    return out;
}

}  // namespace

coloring color_refine(const graph& g, const coloring& start) {
    if (static_cast<int>(start.color_of.size()) != g.n)
        throw graph_error("coloring size mismatch");
    coloring cur = start;
    for (;;) {
        std::vector<std::vector<int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<int>& s = sig[v];
            s.push_back(cur.color_of[v]);
            std::vector<int> nbrs;
            nbrs.reserve(g.adj[v].size());
            for (int u : g.adj[v]) nbrs.push_back(cur.color_of[u]);
            std::sort(nbrs.begin(), nbrs.end());
            s.insert(s.end(), nbrs.begin(), nbrs.end());
        }
        coloring next = rank_by_signature(sig);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

coloring individualize(const coloring& c, int v) {
    if (v < 0 || v >= static_cast<int>(c.color_of.size())) throw graph_error("vertex out of range");
    std::vector<std::vector<int>> sig(c.color_of.size());
    for (int u = 0; u < static_cast<int>(c.color_of.size()); ++u)
        sig[u] = {c.color_of[u], u == v ? 0 : 1};
    return rank_by_signature(sig);
}

namespace {

bool extend(const graph& g, std::vector<int>& map, std::vector<char>& used, int v,
            std::uint64_t& count) {
    if (v == g.n) {
        ++count;
        return true;
    }
    for (int w = 0; w < g.n; ++w) {
        if (used[w]) continue;
        if (g.adj[v].size() != g.adj[w].size()) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (g.has_edge(v, u) != g.has_edge(w, map[u])) ok = false;
        if (!ok) continue;
        map[v] = w;
        used[w] = 1;
        extend(g, map, used, v + 1, count);
        used[w] = 0;
    }
    return false;
}

}  // namespace

std::uint64_t graph_aut_order(const graph& g) {
    if (g.n > 10) throw resource_error("graph_aut_order: graph above 10 vertices");
    if (g.n == 0) return 1;
    std::vector<int> map(g.n, -1);
    std::vector<char> used(g.n, 0);
    std::uint64_t count = 0;
    extend(g, map, used, 0, count);
    return count;
}

}  // namespace symtree
