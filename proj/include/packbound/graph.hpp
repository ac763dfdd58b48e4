#pragma once

#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

namespace packbound {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Simple graph with nonnegative vertex weights. Duplicate edges are
/// deduplicated at construction; loops are rejected.
struct WeightedGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
    std::vector<double> weights;

    WeightedGraph() = default;
    WeightedGraph(int n, std::vector<std::pair<int, int>> edge_list,
                  std::vector<double> w = {});

    bool adjacent(int u, int v) const;
    int num_edges() const { return static_cast<int>(edges.size()); }

    /// Adjacency bitmasks (valid for n <= 64).
    std::vector<std::uint64_t> adjacency_masks() const;
};

/// Text format: first line "n m", then m lines "u v" (0-based), then optional
/// weight lines "w u value". Default weight 1.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph parse_graph_file(const std::string& path);
std::string format_graph(const WeightedGraph& g);

}  // namespace packbound
