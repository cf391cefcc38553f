#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cologic/element.hpp"

namespace cologic {

using Edge = std::pair<int, int>;

/// Finite reflexive graph. Loops are implicit at every vertex and never
/// stored as edges; the edge set is kept as symmetric adjacency rows.
class FiniteGraph {
public:
    FiniteGraph() = default;
    explicit FiniteGraph(int vertex_count);

    /// Validating constructor: rejects out-of-range endpoints, loops and
    /// duplicate edges (in either orientation).
    static FiniteGraph from_edges(int vertex_count, std::span<const Edge> edges);
    /// L_n: edges exactly between i and i+1.
    static FiniteGraph linear(int vertex_count);
    static FiniteGraph discrete(int vertex_count);
    static FiniteGraph complete(int vertex_count);

    int vertex_count() const { return vertex_count_; }

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const { return (rows_[static_cast<std::size_t>(u)] >> v) & 1u; }
    /// Neighbourhood of v including v itself.
    Element neighbors(int v) const { return Element(rows_[static_cast<std::size_t>(v)]); }
    std::span<const std::uint64_t> rows() const { return rows_; }

    /// Non-loop edges as (i, j) with i < j, sorted lexicographically.
    std::vector<Edge> edges() const;
    int edge_count() const;

    bool is_connected() const;
    bool is_linear() const;
    /// True when adjacency (with loops) is transitive, i.e. an equivalence relation.
    bool is_equivalence() const;

    friend bool operator==(const FiniteGraph&, const FiniteGraph&) = default;

private:
    int vertex_count_ = 0;
    std::vector<std::uint64_t> rows_;
};

std::string to_string(const FiniteGraph& g);

/// Relabel vertices: vertex v of g becomes perm[v].
FiniteGraph permuted(const FiniteGraph& g, std::span<const int> perm);

/// All vertex bijections a -> b preserving and reflecting adjacency, in
/// lexicographic order of the permutation. Brute force over n! candidates,
/// pruned vertex by vertex; intended for small graphs.
std::vector<std::vector<int>> isomorphisms(const FiniteGraph& a, const FiniteGraph& b,
                                           std::size_t limit = SIZE_MAX);
bool isomorphic(const FiniteGraph& a, const FiniteGraph& b);

/// Every labelled graph on n vertices, ordered by lexicographic comparison
/// of sorted edge lists (empty edge set first).
std::vector<FiniteGraph> all_graphs(int vertex_count);

/// One representative per isomorphism class on n vertices (the member whose
/// edge list is lexicographically least), in the order of all_graphs.
std::vector<FiniteGraph> graphs_up_to_isomorphism(int vertex_count);

} // namespace cologic
