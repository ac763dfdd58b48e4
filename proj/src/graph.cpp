#include "packbound/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "packbound/sdp_json.hpp"

namespace packbound {

WeightedGraph::WeightedGraph(int n, std::vector<std::pair<int, int>> edge_list,
                             std::vector<double> w)
    : n_vertices(n) {
    if (n < 1) throw GraphError("graph must have at least one vertex");
    for (auto& [u, v] : edge_list) {
        if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    edges = std::move(edge_list);

    if (w.empty())
        weights.assign(n, 1.0);
    else {
        if (static_cast<int>(w.size()) != n) throw GraphError("weight vector length mismatch");
        weights = std::move(w);
    }
    for (double wi : weights)
        if (!(wi >= 0.0) || !std::isfinite(wi))
            throw GraphError("weights must be finite and nonnegative");
}

bool WeightedGraph::adjacent(int u, int v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::vector<std::uint64_t> WeightedGraph::adjacency_masks() const {
    if (n_vertices > 64) throw GraphError("adjacency masks limited to 64 vertices");
    std::vector<std::uint64_t> adj(n_vertices, 0);
    for (auto [u, v] : edges) {
        adj[u] |= (std::uint64_t{1} << v);
        adj[v] |= (std::uint64_t{1} << u);
    }
    return adj;
}

WeightedGraph parse_graph(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw GraphError("expected header line \"n m\"");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int k = 0; k < m; ++k) {
        int u, v;
        if (!(in >> u >> v)) throw GraphError("expected edge line " + std::to_string(k));
        edges.emplace_back(u, v);
    }
    std::vector<double> w(std::max(n, 1), 1.0);
    std::string tag;
    bool any_weight = false;
    while (in >> tag) {
        if (tag != "w") throw GraphError("unexpected token \"" + tag + "\"");
        int u;
        double value;
        if (!(in >> u >> value)) throw GraphError("malformed weight line");
        if (u < 0 || u >= n) throw GraphError("weight vertex out of range");
        w[u] = value;
        any_weight = true;
    }
    return WeightedGraph(n, std::move(edges), any_weight ? std::move(w) : std::vector<double>{});
}

WeightedGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file: " + path);
    return parse_graph(in);
}

std::string format_graph(const WeightedGraph& g) {
    std::ostringstream out;
    out << g.n_vertices << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    for (int u = 0; u < g.n_vertices; ++u)
        if (g.weights[u] != 1.0) out << "w " << u << ' ' << format_double(g.weights[u]) << '\n';
    return out.str();
}

}  // namespace packbound
